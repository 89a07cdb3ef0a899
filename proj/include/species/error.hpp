#ifndef SPECIES_ERROR_HPP
#define SPECIES_ERROR_HPP

#include <stdexcept>
#include <string>

namespace species {

enum class ErrorCode {
  DegreeTooLarge,
  PointNotInAction,
  DegreeMismatch,
  TooManyMaps,
  BudgetExceeded,
  InvalidExpr,
  InnerNotPositive,
  EnumerationTooLarge,
  StructureNotOfExpr,
  HorizonExhausted,
  InvalidAlgebra,
  ShapeMismatch,
  DivergentProduct,
  NotSupported,
  ParseError,
};

const char *error_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace species

#endif // SPECIES_ERROR_HPP
