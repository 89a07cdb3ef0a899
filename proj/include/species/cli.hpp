#ifndef SPECIES_CLI_HPP
#define SPECIES_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace species::cli {

// args excludes the program name.  Returns 0 on success, 1 on domain errors
// and 2 on parse or usage errors.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace species::cli

#endif // SPECIES_CLI_HPP
