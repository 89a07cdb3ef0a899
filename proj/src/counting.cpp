#include "species/counting.hpp"

#include <algorithm>

#include "species/error.hpp"

namespace species {

CountSeq CountSeq::constant(unsigned horizon, const Natural &value) {
  return CountSeq(std::vector<Natural>(horizon + 1, value));
}

CountSeq CountSeq::of(std::initializer_list<unsigned long> values) {
  CountSeq c;
  for (unsigned long v : values)
    c.coeffs.emplace_back(v);
  return c;
}

CountSeq CountSeq::truncated(unsigned h) const {
  if (h > horizon())
    throw Error(ErrorCode::HorizonExhausted, "cannot extend a sequence past its horizon");
  return CountSeq({coeffs.begin(), coeffs.begin() + h + 1});
}

namespace {

std::vector<Natural> counts(const Expr &e, unsigned N);

std::vector<Natural> cauchy_counts(const std::vector<Natural> &a,
                                   const std::vector<Natural> &b) {
  std::vector<Natural> r(a.size(), 0);
  for (unsigned n = 0; n < a.size(); ++n)
    for (unsigned k = 0; k <= n; ++k)
      r[n] += binomial(n, k) * a[k] * b[n - k];
  return r;
}

std::vector<Natural> substitute_counts(const std::vector<Natural> &f,
                                       const std::vector<Natural> &g) {
  if (g[0] != 0)
    throw Error(ErrorCode::InnerNotPositive, "inner species of a substitution is nonempty at 0");
  unsigned N = static_cast<unsigned>(f.size()) - 1;
  // bell[k][n] = B_{n,k}(g_1, g_2, ...)
  std::vector<std::vector<Natural>> bell(N + 1, std::vector<Natural>(N + 1, 0));
  bell[0][0] = 1;
  for (unsigned k = 1; k <= N; ++k)
    for (unsigned n = k; n <= N; ++n)
      for (unsigned i = 1; i + k - 1 <= n; ++i)
        bell[k][n] += binomial(n - 1, i - 1) * g[i] * bell[k - 1][n - i];
  std::vector<Natural> r(N + 1, 0);
  for (unsigned n = 0; n <= N; ++n)
    for (unsigned k = 0; k <= n; ++k)
      r[n] += f[k] * bell[k][n];
  return r;
}

std::vector<Natural> counts(const Expr &e, unsigned N) {
  std::vector<Natural> r(N + 1, 0);
  switch (e.kind()) {
  case Kind::Zero: break;
  case Kind::One: r[0] = 1; break;
  case Kind::X:
    if (N >= 1)
      r[1] = 1;
    break;
  case Kind::Rep:
    if (N >= e.param())
      r[e.param()] = factorial(e.param());
    break;
  case Kind::Exp: std::fill(r.begin(), r.end(), 1); break;
  case Kind::ExpPlus: std::fill(r.begin() + 1, r.end(), 1); break;
  case Kind::Lin:
  case Kind::Perm:
    for (unsigned n = 0; n <= N; ++n)
      r[n] = factorial(n);
    break;
  case Kind::LinPlus:
    for (unsigned n = 1; n <= N; ++n)
      r[n] = factorial(n);
    break;
  case Kind::Cyc:
    for (unsigned n = 1; n <= N; ++n)
      r[n] = factorial(n - 1);
    break;
  case Kind::Subsets:
    for (unsigned n = 0; n <= N; ++n)
      r[n] = power(2, n);
    break;
  case Kind::Table: {
    const auto &t = *e.table();
    if (N > t.max_degree())
      throw Error(ErrorCode::BudgetExceeded, "table " + t.name() + " is only given up to degree " +
                                                 std::to_string(t.max_degree()));
    for (unsigned n = 0; n <= N; ++n)
      r[n] = static_cast<unsigned long>(t.size(n));
    break;
  }
  case Kind::Sum: {
    auto a = counts(e.arg(0), N), b = counts(e.arg(1), N);
    for (unsigned n = 0; n <= N; ++n)
      r[n] = a[n] + b[n];
    break;
  }
  case Kind::Hadamard: {
    auto a = counts(e.arg(0), N), b = counts(e.arg(1), N);
    for (unsigned n = 0; n <= N; ++n)
      r[n] = a[n] * b[n];
    break;
  }
  case Kind::Cauchy: return cauchy_counts(counts(e.arg(0), N), counts(e.arg(1), N));
  case Kind::Substitute: return substitute_counts(counts(e.arg(0), N), counts(e.arg(1), N));
  case Kind::Derive: {
    auto a = counts(e.arg(0), N + 1);
    for (unsigned n = 0; n <= N; ++n)
      r[n] = a[n + 1];
    break;
  }
  case Kind::AdjL: {
    if (N == 0)
      break;
    auto a = counts(e.arg(0), N - 1);
    for (unsigned n = 1; n <= N; ++n)
      r[n] = n * a[n - 1];
    break;
  }
  case Kind::AdjR: {
    r[0] = 1;
    if (N == 0)
      break;
    auto a = counts(e.arg(0), N - 1);
    for (unsigned n = 1; n <= N; ++n)
      r[n] = power(a[n - 1], n);
    break;
  }
  case Kind::Pointing: {
    auto a = counts(e.arg(0), N);
    for (unsigned n = 0; n <= N; ++n)
      r[n] = n * a[n];
    break;
  }
  case Kind::DeriveL: {
    auto a = counts(e.arg(0), N);
    for (unsigned n = 0; n <= N; ++n)
      r[n] = (n + 1) * a[n];
    break;
  }
  case Kind::TruncLeft:
  case Kind::TruncRight: {
    unsigned m = std::min(N, e.param());
    auto a = counts(e.arg(0), m);
    std::copy(a.begin(), a.end(), r.begin());
    if (e.kind() == Kind::TruncRight)
      std::fill(r.begin() + m + 1, r.end(), 1);
    break;
  }
  }
  return r;
}

} // namespace

CountSeq count_seq(const Expr &e, unsigned N) { return CountSeq(counts(e, N)); }

Natural cardinality(const Expr &e, unsigned n) { return counts(e, n)[n]; }

EgfSeq to_egf(const CountSeq &c) {
  EgfSeq g;
  for (unsigned n = 0; n < c.coeffs.size(); ++n) {
    Rational q(c.coeffs[n], factorial(n));
    q.canonicalize();
    g.coeffs.push_back(q);
  }
  return g;
}

CountSeq from_egf(const EgfSeq &g) {
  CountSeq c;
  for (unsigned n = 0; n < g.coeffs.size(); ++n) {
    Rational q = g.coeffs[n] * Rational(factorial(n));
    if (q.get_den() != 1 || q < 0)
      throw Error(ErrorCode::InvalidExpr, "series coefficient " + std::to_string(n) +
                                              " is not a cardinality");
    c.coeffs.push_back(q.get_num());
  }
  return c;
}

EgfSeq egf(const Expr &e, unsigned N) { return to_egf(count_seq(e, N)); }

namespace {
void check_same_horizon(const CountSeq &a, const CountSeq &b) {
  if (a.coeffs.size() != b.coeffs.size())
    throw Error(ErrorCode::ShapeMismatch, "sequences have different horizons");
}
} // namespace

CountSeq seq_sum(const CountSeq &a, const CountSeq &b) {
  check_same_horizon(a, b);
  CountSeq r = a;
  for (std::size_t n = 0; n < r.coeffs.size(); ++n)
    r.coeffs[n] += b.coeffs[n];
  return r;
}

CountSeq seq_hadamard(const CountSeq &a, const CountSeq &b) {
  check_same_horizon(a, b);
  CountSeq r = a;
  for (std::size_t n = 0; n < r.coeffs.size(); ++n)
    r.coeffs[n] *= b.coeffs[n];
  return r;
}

CountSeq seq_cauchy(const CountSeq &a, const CountSeq &b) {
  check_same_horizon(a, b);
  return CountSeq(cauchy_counts(a.coeffs, b.coeffs));
}

CountSeq seq_substitute(const CountSeq &f, const CountSeq &g) {
  check_same_horizon(f, g);
  return CountSeq(substitute_counts(f.coeffs, g.coeffs));
}

EgfSeq seq_substitute_egf(const EgfSeq &f, const EgfSeq &g, unsigned N) {
  if (g.coeffs.empty() || g.coeffs[0] != 0)
    throw Error(ErrorCode::InnerNotPositive, "inner series has a nonzero constant term");
  if (f.horizon() < N || g.horizon() < N)
    throw Error(ErrorCode::HorizonExhausted, "series too short for the requested horizon");
  EgfSeq r{std::vector<Rational>(N + 1, 0)};
  std::vector<Rational> pw(N + 1, 0); // g^k
  pw[0] = 1;
  for (unsigned k = 0; k <= N; ++k) {
    for (unsigned n = 0; n <= N; ++n)
      r.coeffs[n] += f.coeffs[k] * pw[n];
    std::vector<Rational> next(N + 1, 0);
    for (unsigned i = 0; i <= N; ++i) {
      if (pw[i] == 0)
        continue;
      for (unsigned j = 1; i + j <= N; ++j)
        next[i + j] += pw[i] * g.coeffs[j];
    }
    pw = std::move(next);
  }
  return r;
}

EgfSeq egf_derivative(const EgfSeq &g) {
  if (g.coeffs.size() < 2)
    throw Error(ErrorCode::HorizonExhausted, "derivative of a series known only at degree 0");
  EgfSeq d;
  for (unsigned n = 0; n + 1 < g.coeffs.size(); ++n)
    d.coeffs.push_back(g.coeffs[n + 1] * (n + 1));
  return d;
}

Contact contact_order(const CountSeq &a, const CountSeq &b) {
  unsigned h = std::min(a.horizon(), b.horizon());
  for (unsigned n = 0; n <= h; ++n)
    if (a.coeffs[n] != b.coeffs[n])
      return n == 0 ? Contact{} : Contact{Contact::Kind::Order, n - 1};
  return Contact{Contact::Kind::Full, h};
}

std::string to_string(const Contact &c) {
  switch (c.kind) {
  case Contact::Kind::None: return "none";
  case Contact::Kind::Order: return std::to_string(c.order);
  case Contact::Kind::Full: return "at-least-horizon";
  }
  return "?";
}

ConvergenceReport detect_convergence(const std::vector<CountSeq> &seqs, unsigned N) {
  ConvergenceReport rep;
  if (seqs.empty())
    return rep;
  for (const auto &s : seqs)
    if (s.horizon() < N)
      throw Error(ErrorCode::HorizonExhausted, "iterate shorter than the requested horizon");
  std::size_t last = seqs.size() - 1;
  rep.converged = true;
  for (unsigned k = 0; k <= N; ++k) {
    std::size_t from = last;
    while (from > 0 && seqs[from - 1].coeffs[k] == seqs[last].coeffs[k])
      --from;
    bool stable = from < last || last == 0;
    if (stable) {
      rep.stable_from.emplace_back(static_cast<unsigned>(from));
    } else {
      rep.stable_from.emplace_back(std::nullopt);
      if (rep.converged)
        rep.witness = k;
      rep.converged = false;
    }
  }
  if (rep.converged)
    rep.limit = seqs[last].truncated(N);
  return rep;
}

std::string to_string(const CountSeq &c) {
  std::string out;
  for (std::size_t n = 0; n < c.coeffs.size(); ++n) {
    if (n)
      out += ", ";
    out += c.coeffs[n].get_str();
  }
  return out;
}

std::string to_string(const EgfSeq &g) {
  std::string out;
  for (std::size_t n = 0; n < g.coeffs.size(); ++n) {
    if (n)
      out += ", ";
    out += to_string(g.coeffs[n]);
  }
  return out;
}

} // namespace species
