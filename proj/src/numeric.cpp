#include "species/numeric.hpp"
#include "species/error.hpp"

namespace species {

Natural factorial(unsigned n) {
  Natural r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Natural binomial(unsigned n, unsigned k) {
  if (k > n)
    return 0;
  Natural r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

Natural power(const Natural &base, unsigned exponent) {
  Natural r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

std::string to_string(const Natural &x) { return x.get_str(); }

std::string to_string(const Rational &x) {
  if (x.get_den() == 1)
    return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

const char *error_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
  case ErrorCode::PointNotInAction: return "PointNotInAction";
  case ErrorCode::DegreeMismatch: return "DegreeMismatch";
  case ErrorCode::TooManyMaps: return "TooManyMaps";
  case ErrorCode::BudgetExceeded: return "BudgetExceeded";
  case ErrorCode::InvalidExpr: return "InvalidExpr";
  case ErrorCode::InnerNotPositive: return "InnerNotPositive";
  case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
  case ErrorCode::StructureNotOfExpr: return "StructureNotOfExpr";
  case ErrorCode::HorizonExhausted: return "HorizonExhausted";
  case ErrorCode::InvalidAlgebra: return "InvalidAlgebra";
  case ErrorCode::ShapeMismatch: return "ShapeMismatch";
  case ErrorCode::DivergentProduct: return "DivergentProduct";
  case ErrorCode::NotSupported: return "NotSupported";
  case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

} // namespace species
