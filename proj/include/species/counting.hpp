#ifndef SPECIES_COUNTING_HPP
#define SPECIES_COUNTING_HPP

#include <optional>
#include <string>
#include <vector>

#include "species/expr.hpp"
#include "species/numeric.hpp"

namespace species {

// f_0 ... f_N; nothing is known beyond the horizon N.
struct CountSeq {
  std::vector<Natural> coeffs;

  CountSeq() = default;
  explicit CountSeq(std::vector<Natural> c) : coeffs(std::move(c)) {}
  static CountSeq constant(unsigned horizon, const Natural &value);
  static CountSeq of(std::initializer_list<unsigned long> values);

  unsigned horizon() const { return static_cast<unsigned>(coeffs.size()) - 1; }
  const Natural &operator[](unsigned n) const { return coeffs.at(n); }
  CountSeq truncated(unsigned horizon) const;
  friend bool operator==(const CountSeq &, const CountSeq &) = default;
};

// g_n = f_n / n!
struct EgfSeq {
  std::vector<Rational> coeffs;

  unsigned horizon() const { return static_cast<unsigned>(coeffs.size()) - 1; }
  const Rational &operator[](unsigned n) const { return coeffs.at(n); }
  friend bool operator==(const EgfSeq &, const EgfSeq &) = default;
};

CountSeq count_seq(const Expr &e, unsigned N);
Natural cardinality(const Expr &e, unsigned n);
EgfSeq egf(const Expr &e, unsigned N);

EgfSeq to_egf(const CountSeq &c);
// Throws InvalidExpr when some n! g_n is not a nonnegative integer.
CountSeq from_egf(const EgfSeq &g);

CountSeq seq_sum(const CountSeq &a, const CountSeq &b);
CountSeq seq_hadamard(const CountSeq &a, const CountSeq &b);
CountSeq seq_cauchy(const CountSeq &a, const CountSeq &b);
// Partition sum over set partitions via partial Bell polynomials.
CountSeq seq_substitute(const CountSeq &f, const CountSeq &g);
// Formal composition f(g(X)) truncated at N; requires g_0 = 0.
EgfSeq seq_substitute_egf(const EgfSeq &f, const EgfSeq &g, unsigned N);
// Formal derivative; the horizon drops by one.
EgfSeq egf_derivative(const EgfSeq &g);

struct Contact {
  enum class Kind { None, Order, Full };
  Kind kind = Kind::None;
  unsigned order = 0;

  friend bool operator==(const Contact &, const Contact &) = default;
  // "contact at least n" in the sense of agreement through degree n
  bool at_least(unsigned n) const {
    return kind == Kind::Full || (kind == Kind::Order && order >= n);
  }
};

// Largest n up to the shared horizon with a_k = b_k for every k <= n.
Contact contact_order(const CountSeq &a, const CountSeq &b);
std::string to_string(const Contact &c);

struct ConvergenceReport {
  // Per degree: the first iterate index from which the coefficient stays
  // constant, or nothing when it still moves between the last two iterates.
  std::vector<std::optional<unsigned>> stable_from;
  bool converged = false;
  std::optional<CountSeq> limit;
  std::optional<unsigned> witness; // least unstable degree
};

ConvergenceReport detect_convergence(const std::vector<CountSeq> &seqs, unsigned N);

std::string to_string(const CountSeq &c);
std::string to_string(const EgfSeq &g);

} // namespace species

#endif // SPECIES_COUNTING_HPP
