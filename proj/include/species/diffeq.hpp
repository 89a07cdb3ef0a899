#ifndef SPECIES_DIFFEQ_HPP
#define SPECIES_DIFFEQ_HPP

#include <optional>
#include <string>
#include <vector>

#include "species/counting.hpp"

namespace species {

struct DiffTerm {
  Expr coeff;
  unsigned order = 0;
};

// D(G) = constant + Σ coeff_i * ∂^{order_i} G
struct DiffOperator {
  std::vector<DiffTerm> terms;
  std::optional<Expr> constant;

  unsigned max_order() const;
  std::string str() const;
};

std::vector<Diagnostic> validate(const DiffOperator &D);

// The result has horizon x.horizon() - max_order.
CountSeq apply_operator(const DiffOperator &D, const CountSeq &x);

// D applied to an expression, as an expression.
Expr apply_operator(const DiffOperator &D, const Expr &g);

struct ChainReport {
  std::vector<CountSeq> iterates; // truncated to the horizon
  ConvergenceReport convergence;
  std::optional<Contact> certificate; // fixpoint contact of the limit
  unsigned horizon = 0;
};

// max_iter = 0 picks 2(N + 2).
ChainReport adamek_chain(const DiffOperator &D, unsigned N, unsigned max_iter = 0);

// contact_order(x, D(x)) up to N; x needs horizon N + max_order.
Contact fixpoint_check(const DiffOperator &D, const CountSeq &x, unsigned N);

} // namespace species

#endif // SPECIES_DIFFEQ_HPP
