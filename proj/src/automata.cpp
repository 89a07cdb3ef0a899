#include "species/automata.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "species/error.hpp"

namespace species {

std::string Dynamics::name() const {
  switch (kind) {
  case Kind::TensorBy: return "tensor(" + render(a) + ")";
  case Kind::Derive: return "derive";
  case Kind::AdjL: return "adjL";
  case Kind::Pointing: return "pointing";
  case Kind::DeriveL: return "deriveL";
  }
  return "?";
}

bool operator==(const Dynamics &x, const Dynamics &y) {
  if (x.kind != y.kind)
    return false;
  return x.kind != Dynamics::Kind::TensorBy || same_tree(x.a, y.a);
}

Expr apply_dynamics(const Dynamics &t, const Expr &e) {
  switch (t.kind) {
  case Dynamics::Kind::TensorBy: return ex::cauchy(t.a, e);
  case Dynamics::Kind::Derive: return ex::derive(e);
  case Dynamics::Kind::AdjL: return ex::adj_l(e);
  case Dynamics::Kind::Pointing: return ex::pointing(e);
  case Dynamics::Kind::DeriveL: return ex::derive_l(e);
  }
  return e;
}

unsigned dynamics_reach(const Dynamics &t, unsigned k) {
  switch (t.kind) {
  case Dynamics::Kind::Derive: return k + 1;
  case Dynamics::Kind::AdjL: return k == 0 ? 0 : k - 1;
  default: return k;
  }
}

namespace {

void shape(AutomatonReport &r, bool ok, const std::string &what) {
  if (!ok) {
    r.ok = false;
    r.diagnostics.push_back({"ShapeMismatch", what});
  }
}

void horizon(AutomatonReport &r, const NatTrans &t, unsigned N, const std::string &which) {
  if (t.horizon() < N) {
    r.ok = false;
    r.diagnostics.push_back({"HorizonExhausted", which + " is known only up to degree " +
                                                     std::to_string(t.horizon())});
  }
}

void natural(AutomatonReport &r, const NatTrans &t, const std::string &which) {
  auto n = naturality(t);
  if (!n.ok) {
    r.ok = false;
    if (!r.degree || *n.degree < *r.degree)
      r.degree = n.degree;
    r.diagnostics.push_back(
        {"NotEquivariant", which + " is not equivariant at degree " + std::to_string(*n.degree)});
  }
}

std::vector<int> without(unsigned k, int a, bool with_star) {
  std::vector<int> v;
  if (with_star)
    v.push_back(0);
  for (int x = 1; x <= static_cast<int>(k); ++x)
    if (x != a)
      v.push_back(x);
  return v;
}

} // namespace

AutomatonReport check_mealy(const MealyAutomaton &m) {
  AutomatonReport r;
  Expr fe = apply_dynamics(m.dynamics, m.E);
  shape(r, same_tree(m.d.source, fe) && same_tree(m.d.target, m.E),
        "d must go from " + render(fe) + " to " + render(m.E));
  shape(r, same_tree(m.s.source, fe) && same_tree(m.s.target, m.B),
        "s must go from " + render(fe) + " to " + render(m.B));
  horizon(r, m.d, m.horizon, "d");
  horizon(r, m.s, m.horizon, "s");
  natural(r, m.d, "d");
  natural(r, m.s, "s");
  return r;
}

AutomatonReport check_moore(const MooreAutomaton &m) {
  AutomatonReport r;
  Expr fe = apply_dynamics(m.dynamics, m.E);
  shape(r, same_tree(m.d.source, fe) && same_tree(m.d.target, m.E),
        "d must go from " + render(fe) + " to " + render(m.E));
  shape(r, same_tree(m.s.source, m.E) && same_tree(m.s.target, m.B),
        "s must go from " + render(m.E) + " to " + render(m.B));
  horizon(r, m.d, m.horizon, "d");
  horizon(r, m.s, m.horizon, "s");
  natural(r, m.d, "d");
  natural(r, m.s, "s");
  return r;
}

Structure functorial_image(const Dynamics &t, const NatTrans &f, unsigned k, const Structure &s) {
  switch (t.kind) {
  case Dynamics::Kind::TensorBy: {
    std::vector<int> rest;
    for (int x = 1; x <= static_cast<int>(k); ++x)
      if (!std::binary_search(s.labels.begin(), s.labels.end(), x))
        rest.push_back(x);
    return Structure{Tag::Pair, s.labels, {s.children.at(0), f.apply_on(s.children.at(1), rest, 1)}};
  }
  case Dynamics::Kind::Derive: return derive_image(f, k, s);
  case Dynamics::Kind::AdjL: {
    int a = s.labels.at(0);
    return Structure{Tag::Point, {a}, {f.apply_on(s.children.at(0), without(k, a, false), 1)}};
  }
  case Dynamics::Kind::Pointing: {
    int a = s.labels.at(0);
    return Structure{Tag::Point, {a}, {f.apply_on(s.children.at(0), without(k, a, true), 0)}};
  }
  case Dynamics::Kind::DeriveL: {
    const Structure &p = s.children.at(0);
    int a = p.labels.at(0);
    std::vector<int> V = without(k, a, a != 0);
    return Structure{Tag::Deriv, {0},
                     {Structure{Tag::Point, {a}, {f.apply_on(p.children.at(0), V, 0)}}}};
  }
  }
  return s;
}

namespace {

void same_shape(const NatTrans &f, const Dynamics &d1, const Dynamics &d2, const Expr &E1,
                const Expr &E2, const Expr &B1, const Expr &B2) {
  if (!(d1 == d2))
    throw Error(ErrorCode::ShapeMismatch, "dynamics differ: " + d1.name() + " vs " + d2.name());
  if (!same_tree(B1, B2))
    throw Error(ErrorCode::ShapeMismatch, "outputs differ: " + render(B1) + " vs " + render(B2));
  if (!same_tree(f.source, E1) || !same_tree(f.target, E2))
    throw Error(ErrorCode::ShapeMismatch, "map must go from " + render(E1) + " to " + render(E2));
}

unsigned checked_top(const Dynamics &t, const NatTrans &f, unsigned h1, unsigned h2) {
  unsigned top = std::min(h1, h2);
  while (top > 0 && (dynamics_reach(t, top) > f.horizon() || top > f.horizon()))
    --top;
  if (dynamics_reach(t, top) > f.horizon() || top > f.horizon())
    throw Error(ErrorCode::HorizonExhausted, "map too short for the dynamics");
  return top;
}

} // namespace

bool check_morphism(const NatTrans &f, const MealyAutomaton &m1, const MealyAutomaton &m2) {
  same_shape(f, m1.dynamics, m2.dynamics, m1.E, m2.E, m1.B, m2.B);
  unsigned top = checked_top(m1.dynamics, f, m1.horizon, m2.horizon);
  Expr fe = apply_dynamics(m1.dynamics, m1.E);
  for (unsigned k = 0; k <= top; ++k)
    for (const auto &s : *enumerate(fe, k)->structures) {
      Structure t = functorial_image(m1.dynamics, f, k, s);
      if (!(f(k, m1.d(k, s)) == m2.d(k, t)) || !(m1.s(k, s) == m2.s(k, t)))
        return false;
    }
  return true;
}

bool check_morphism(const NatTrans &f, const MooreAutomaton &m1, const MooreAutomaton &m2) {
  same_shape(f, m1.dynamics, m2.dynamics, m1.E, m2.E, m1.B, m2.B);
  unsigned top = checked_top(m1.dynamics, f, m1.horizon, m2.horizon);
  Expr fe = apply_dynamics(m1.dynamics, m1.E);
  for (unsigned k = 0; k <= top; ++k) {
    for (const auto &s : *enumerate(fe, k)->structures)
      if (!(f(k, m1.d(k, s)) == m2.d(k, functorial_image(m1.dynamics, f, k, s))))
        return false;
    for (const auto &x : *enumerate(m1.E, k)->structures)
      if (!(m1.s(k, x) == m2.s(k, f(k, x))))
        return false;
  }
  return true;
}

std::vector<NatTrans> find_morphisms(const MealyAutomaton &m1, const MealyAutomaton &m2,
                                     std::size_t limit) {
  unsigned N = std::min(m1.horizon, m2.horizon);
  unsigned H = std::max(N, dynamics_reach(m1.dynamics, N));
  std::vector<NatTrans> out;
  for (auto &f : enumerate_nat(m1.E, m2.E, H, limit))
    if (check_morphism(f, m1, m2))
      out.push_back(std::move(f));
  return out;
}

Expr free_semigroup(const Expr &a, unsigned m) {
  Expr s = ex::zero();
  for (unsigned n = 1; n <= m; ++n)
    s = n == 1 ? ex::cauchy_power(a, 1) : ex::sum(s, ex::cauchy_power(a, n));
  return s;
}

namespace {

struct Source {
  std::function<Natural(unsigned)> count;
  std::function<std::shared_ptr<const DegreeData>(unsigned)> data;
  std::optional<unsigned> empty_from;
};

// Π_{m>=0} |Hom_{S_m}(f[m], g[k+m])| for k = 0..N.
CountSeq hom_day_impl(const Source &f, const Expr &g, unsigned N, unsigned scan) {
  Tail gt = tail_of(g);
  CountSeq out;
  for (unsigned k = 0; k <= N; ++k) {
    Natural prod = 1;
    bool zero = false;
    std::vector<unsigned> pending;
    for (unsigned m = 0;; ++m) {
      if (f.empty_from && m >= *f.empty_from)
        break;
      if (gt.shape == Tail::Shape::Singleton && k + m >= gt.from)
        break;
      if (m > N + scan)
        throw Error(ErrorCode::DivergentProduct,
                    "no factor bound certified for degree " + std::to_string(k) +
                        " within " + std::to_string(m) + " factors");
      Natural fc = f.count(m);
      if (fc == 0)
        continue;
      Natural gc = cardinality(g, k + m);
      if (gc == 0) {
        zero = true;
        break;
      }
      if (gc > 1)
        pending.push_back(m);
    }
    if (!zero)
      for (unsigned m : pending) {
        prod *= count_equivariant_maps(f.data(m)->action,
                                       restrict_to_tail(enumerate(g, k + m)->action, k));
        if (prod == 0)
          break;
      }
    out.coeffs.push_back(zero ? Natural(0) : prod);
  }
  return out;
}

std::optional<unsigned> empty_from(const Expr &e) {
  Tail t = tail_of(e);
  if (t.shape == Tail::Shape::Empty)
    return t.from;
  return std::nullopt;
}

void check_bits(const Natural &x, std::size_t max_bits) {
  if (mpz_sizeinbase(x.get_mpz_t(), 2) > max_bits)
    throw Error(ErrorCode::DivergentProduct, "product exceeds the configured bound");
}

} // namespace

CountSeq hom_day_counts(const Expr &f, const Expr &g, unsigned N, unsigned scan) {
  Source src{[f](unsigned m) { return cardinality(f, m); },
             [f](unsigned m) { return enumerate(f, m); }, empty_from(f)};
  return hom_day_impl(src, g, N, scan);
}

CountSeq terminal_counts(const Dynamics &t, const Expr &B, unsigned N,
                         const TerminalOptions &opt) {
  constexpr std::size_t max_bits = 1u << 20;
  CountSeq out;
  switch (t.kind) {
  case Dynamics::Kind::Pointing:
  case Dynamics::Kind::DeriveL:
    throw Error(ErrorCode::NotSupported,
                "terminal objects for " + t.name() + " dynamics are not implemented");
  case Dynamics::Kind::AdjL: {
    // product of |B[k+n]| over n >= 1
    Tail bt = tail_of(B);
    for (unsigned k = 0; k <= N; ++k) {
      Natural prod = 1;
      for (unsigned n = opt.moore ? 0 : 1;; ++n) {
        if (bt.shape == Tail::Shape::Singleton && k + n >= bt.from)
          break;
        if (n > N + opt.scan)
          throw Error(ErrorCode::DivergentProduct,
                      "no tail of singletons found for degree " + std::to_string(k));
        Natural c = cardinality(B, k + n);
        prod *= c;
        if (c == 0)
          break;
        check_bits(prod, max_bits);
      }
      out.coeffs.push_back(prod);
    }
    return out;
  }
  case Dynamics::Kind::Derive: {
    // r_n[j] = |R^n B[j]|; r_n[0] = 1 and r_n[j] = r_{n-1}[j-1]^j for n >= 1
    auto b = count_seq(B, N);
    std::vector<std::vector<Natural>> r(N + 1, std::vector<Natural>(N + 1));
    r[0] = b.coeffs;
    for (unsigned n = 1; n <= N; ++n) {
      r[n][0] = 1;
      for (unsigned j = 1; j <= N; ++j) {
        if (r[n - 1][j - 1] > 1 &&
            mpz_sizeinbase(r[n - 1][j - 1].get_mpz_t(), 2) * j > max_bits)
          throw Error(ErrorCode::DivergentProduct, "product exceeds the configured bound");
        r[n][j] = power(r[n - 1][j - 1], j);
      }
    }
    for (unsigned k = 0; k <= N; ++k) {
      // factors with n > k are 1
      Natural prod = opt.moore ? b[k] : Natural(1);
      for (unsigned n = 1; n <= k; ++n)
        prod *= r[n][k];
      check_bits(prod, max_bits);
      out.coeffs.push_back(prod);
    }
    return out;
  }
  case Dynamics::Kind::TensorBy: {
    if (cardinality(t.a, 0) != 0)
      throw Error(ErrorCode::InvalidExpr, render(t.a) + " must be empty at degree 0");
    Expr a = t.a;
    std::optional<unsigned> ef;
    if (auto e = empty_from(a); e && *e <= 1)
      ef = 0;
    Source src{[a](unsigned m) { return cardinality(free_semigroup(a, m), m); },
               [a](unsigned m) { return enumerate(free_semigroup(a, m), m); }, ef};
    out = hom_day_impl(src, B, N, opt.scan);
    if (opt.moore)
      for (unsigned k = 0; k <= N; ++k)
        out.coeffs[k] *= cardinality(B, k);
    return out;
  }
  }
  return out;
}

} // namespace species
