#ifndef SPECIES_NUMERIC_HPP
#define SPECIES_NUMERIC_HPP

#include <string>

#include <gmpxx.h>

namespace species {

using Natural = mpz_class;
using Rational = mpq_class;

Natural factorial(unsigned n);
Natural binomial(unsigned n, unsigned k);
Natural power(const Natural &base, unsigned exponent);

std::string to_string(const Natural &x);
// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational &x);

} // namespace species

#endif // SPECIES_NUMERIC_HPP
