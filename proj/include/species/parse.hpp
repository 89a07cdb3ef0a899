#ifndef SPECIES_PARSE_HPP
#define SPECIES_PARSE_HPP

#include <string>
#include <vector>

#include "species/diffeq.hpp"
#include "species/error.hpp"
#include "species/expr.hpp"

namespace species {

class ParseFailure : public Error {
public:
  ParseFailure(std::size_t offset, std::vector<std::string> expected, const std::string &found);

  std::size_t offset() const noexcept { return offset_; }
  const std::vector<std::string> &expected() const noexcept { return expected_; }

private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

// expr := term {"+" term}; term := factor {("*" | "&") factor};
// factor := atom ["o" factor]; atoms as printed by render().
Expr parse_expr(const std::string &text);

// "A1:n1 + A2:n2 + B": a term with ":n" is A ⊗ ∂^n(G), a bare one is a
// constant summand.
DiffOperator parse_operator(const std::string &text);

} // namespace species

#endif // SPECIES_PARSE_HPP
