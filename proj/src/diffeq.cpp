#include "species/diffeq.hpp"

#include <algorithm>

#include "species/error.hpp"

namespace species {

unsigned DiffOperator::max_order() const {
  unsigned m = 0;
  for (const auto &t : terms)
    m = std::max(m, t.order);
  return m;
}

std::string DiffOperator::str() const {
  std::string out;
  if (constant)
    out = render(*constant);
  for (const auto &t : terms) {
    if (!out.empty())
      out += " + ";
    out += render(t.coeff) + ":" + std::to_string(t.order);
  }
  return out.empty() ? "0" : out;
}

std::vector<Diagnostic> validate(const DiffOperator &D) {
  std::vector<Diagnostic> out;
  if (D.terms.empty() && !D.constant)
    out.push_back({"InvalidExpr", "operator has no terms"});
  for (const auto &t : D.terms)
    for (auto &d : validate(t.coeff))
      out.push_back(std::move(d));
  if (D.constant)
    for (auto &d : validate(*D.constant))
      out.push_back(std::move(d));
  return out;
}

CountSeq apply_operator(const DiffOperator &D, const CountSeq &x) {
  unsigned m = D.max_order();
  if (x.horizon() < m)
    throw Error(ErrorCode::HorizonExhausted, "input horizon " + std::to_string(x.horizon()) +
                                                 " below the operator order " + std::to_string(m));
  unsigned H = x.horizon() - m;
  CountSeq out = D.constant ? count_seq(*D.constant, H) : CountSeq::constant(H, 0);
  for (const auto &t : D.terms) {
    CountSeq a = count_seq(t.coeff, H);
    for (unsigned n = 0; n <= H; ++n) {
      Natural s = 0;
      for (unsigned k = 0; k <= n; ++k)
        if (a[k] != 0)
          s += binomial(n, k) * a[k] * x[t.order + n - k];
      out.coeffs[n] += s;
    }
  }
  return out;
}

Expr apply_operator(const DiffOperator &D, const Expr &g) {
  std::vector<Expr> parts;
  if (D.constant)
    parts.push_back(*D.constant);
  for (const auto &t : D.terms) {
    Expr d = g;
    for (unsigned i = 0; i < t.order; ++i)
      d = ex::derive(d);
    parts.push_back(ex::cauchy(t.coeff, d));
  }
  if (parts.empty())
    return ex::zero();
  Expr out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i)
    out = ex::sum(out, parts[i]);
  return out;
}

ChainReport adamek_chain(const DiffOperator &D, unsigned N, unsigned max_iter) {
  auto diags = validate(D);
  if (!diags.empty())
    throw Error(ErrorCode::InvalidExpr, diags.front().message);
  unsigned J = max_iter ? max_iter : 2 * (N + 2);
  unsigned m = D.max_order();
  ChainReport rep;
  rep.horizon = N;
  CountSeq t = CountSeq::constant(N + J * m, 1);
  std::vector<CountSeq> full{t};
  rep.iterates.push_back(t.truncated(N));
  for (unsigned j = 0; j < J; ++j) {
    t = apply_operator(D, t);
    full.push_back(t);
    rep.iterates.push_back(t.truncated(N));
  }
  rep.convergence = detect_convergence(rep.iterates, N);
  if (rep.convergence.converged) {
    // the iterate before the last still has the extra m degrees
    const CountSeq &prev = full[full.size() - 2];
    rep.certificate = contact_order(*rep.convergence.limit, apply_operator(D, prev).truncated(N));
  }
  return rep;
}

Contact fixpoint_check(const DiffOperator &D, const CountSeq &x, unsigned N) {
  if (x.horizon() < N + D.max_order())
    throw Error(ErrorCode::HorizonExhausted,
                "fixpoint check at degree " + std::to_string(N) + " needs horizon " +
                    std::to_string(N + D.max_order()));
  return contact_order(x.truncated(N), apply_operator(D, x).truncated(N));
}

} // namespace species
