#include "species/transforms.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "species/error.hpp"

namespace species {

const Structure &NatTrans::operator()(unsigned k, const Structure &s) const {
  if (k >= components.size())
    throw Error(ErrorCode::HorizonExhausted,
                "transformation known up to degree " + std::to_string(horizon()) +
                    ", asked at " + std::to_string(k));
  const Component &c = components[k];
  auto i = c.source->index_of(s);
  if (!i)
    throw Error(ErrorCode::StructureNotOfExpr,
                to_string(s) + " is not a structure of " + render(source));
  return (*c.target)[c.map[*i]];
}

Structure NatTrans::apply_on(const Structure &s, const std::vector<int> &V, int floor) const {
  unsigned k = static_cast<unsigned>(V.size());
  Structure standard = transport(source, s, LabelMap::standardize(V, floor));
  return transport(target, (*this)(k, standard), LabelMap::unstandardize(V, floor));
}

NatTrans nat_from_function(const Expr &source, const Expr &target, unsigned N,
                           const StructureFn &fn) {
  NatTrans t{source, target, {}};
  for (unsigned k = 0; k <= N; ++k) {
    Component c{enumerate(source, k), enumerate(target, k), {}};
    c.map.reserve(c.source->size());
    for (std::size_t i = 0; i < c.source->size(); ++i) {
      Structure img = fn(k, (*c.source)[i]);
      auto j = c.target->index_of(img);
      if (!j)
        throw Error(ErrorCode::StructureNotOfExpr, "image " + to_string(img) +
                                                       " is not a structure of " +
                                                       render(target));
      c.map.push_back(*j);
    }
    t.components.push_back(std::move(c));
  }
  return t;
}

NatTrans identity_nat(const Expr &f, unsigned N) {
  return nat_from_function(f, f, N, [](unsigned, const Structure &s) { return s; });
}

NaturalityReport naturality(const NatTrans &t) {
  for (unsigned k = 0; k < t.components.size(); ++k) {
    const Component &c = t.components[k];
    if (!is_equivariant(c.map, c.source->action, c.target->action))
      return {false, k};
  }
  return {};
}

bool check_naturality(const NatTrans &t) { return naturality(t).ok; }

NatCount count_nat(const Expr &f, const Expr &g, unsigned N) {
  NatCount r{{}, 1};
  for (unsigned k = 0; k <= N; ++k) {
    Natural c = count_equivariant_maps(enumerate(f, k)->action, enumerate(g, k)->action);
    r.cumulative *= c;
    r.per_degree.push_back(c);
  }
  return r;
}

std::vector<NatTrans> enumerate_nat(const Expr &f, const Expr &g, unsigned N,
                                    std::size_t limit) {
  NatCount count = count_nat(f, g, N);
  if (count.cumulative > Natural(static_cast<unsigned long>(limit)))
    throw Error(ErrorCode::TooManyMaps, count.cumulative.get_str() +
                                            " transformations exceed the limit " +
                                            std::to_string(limit));
  std::vector<std::shared_ptr<const DegreeData>> src, tgt;
  std::vector<std::vector<PointMap>> per_degree;
  for (unsigned k = 0; k <= N; ++k) {
    src.push_back(enumerate(f, k));
    tgt.push_back(enumerate(g, k));
    per_degree.push_back(enumerate_equivariant_maps(src[k]->action, tgt[k]->action, limit));
  }
  std::vector<NatTrans> out;
  if (count.cumulative == 0)
    return out;
  std::vector<std::size_t> odo(N + 1, 0);
  while (true) {
    NatTrans t{f, g, {}};
    for (unsigned k = 0; k <= N; ++k)
      t.components.push_back({src[k], tgt[k], per_degree[k][odo[k]]});
    out.push_back(std::move(t));
    unsigned k = 0;
    for (; k <= N; ++k) {
      if (++odo[k] < per_degree[k].size())
        break;
      odo[k] = 0;
    }
    if (k > N)
      break;
  }
  return out;
}

IsoResult iso_check(const Expr &f, const Expr &g, unsigned N, std::size_t cap) {
  IsoResult r;
  for (unsigned k = 0; k <= N; ++k) {
    auto a = enumerate(f, k, cap);
    auto b = enumerate(g, k, cap);
    if (a->size() != b->size() || !actions_isomorphic(a->action, b->action)) {
      r.isomorphic = false;
      r.witness = k;
      r.left = stabilizer_classes(a->action);
      r.right = stabilizer_classes(b->action);
      return r;
    }
  }
  return r;
}

std::string describe(const std::vector<StabilizerClass> &classes) {
  std::map<std::tuple<std::size_t, std::size_t, std::string>, std::size_t> mult;
  for (const auto &c : classes)
    ++mult[{c.orbit_size, c.order, c.census}];
  std::ostringstream os;
  bool first = true;
  for (const auto &[key, m] : mult) {
    const auto &[orbit, order, census] = key;
    os << (first ? "" : "; ") << m << " x orbit " << orbit << " stabilizer " << order << " ["
       << census << "]";
    first = false;
  }
  return first ? "empty" : os.str();
}

const LawReport &MonoidReport::law(const std::string &name) const {
  for (const auto &l : laws)
    if (l.law == name)
      return l;
  throw Error(ErrorCode::InvalidAlgebra, "no law named " + name);
}

Structure associate_right(const Structure &s) {
  if (s.tag != Tag::Pair || s.children.size() != 2 || s.children[0].tag != Tag::Pair ||
      s.children[0].children.size() != 2)
    throw Error(ErrorCode::StructureNotOfExpr, "not a bracketed triple: " + to_string(s));
  const Structure &left = s.children[0];
  std::vector<int> u2;
  std::set_difference(s.labels.begin(), s.labels.end(), left.labels.begin(), left.labels.end(),
                      std::back_inserter(u2));
  Structure inner{Tag::Pair, u2, {left.children[1], s.children[1]}};
  return Structure{Tag::Pair, left.labels, {left.children[0], inner}};
}

namespace {

std::vector<int> complement(unsigned k, const std::vector<int> &U) {
  std::vector<int> all(k), out;
  std::iota(all.begin(), all.end(), 1);
  std::set_difference(all.begin(), all.end(), U.begin(), U.end(), std::back_inserter(out));
  return out;
}

void fail(LawReport &law, unsigned k, const std::string &detail) {
  if (law.ok) {
    law.ok = false;
    law.degree = k;
    law.detail = detail;
  }
}

} // namespace

MonoidReport check_monoid(const Expr &f, const NatTrans &mu, const Structure &eta, unsigned N) {
  Expr ff = ex::cauchy(f, f);
  Expr fff = ex::cauchy(ff, f);
  if (mu.horizon() < N)
    throw Error(ErrorCode::HorizonExhausted, "multiplication known only up to degree " +
                                                 std::to_string(mu.horizon()));
  MonoidReport rep;
  LawReport nat, left, right, assoc, shuffle;
  nat.law = "naturality";
  left.law = "left_unit";
  right.law = "right_unit";
  assoc.law = "associativity";
  shuffle.law = "shuffle";

  auto nr = naturality(mu);
  if (!nr.ok)
    fail(nat, *nr.degree, "multiplication is not equivariant");
  if (!enumerate(f, 0)->index_of(eta))
    fail(left, 0, "unit " + to_string(eta) + " is not a structure of " + render(f));

  // first associativity failure with all three parts nonempty
  std::optional<unsigned> nonempty_failure;
  for (unsigned k = 0; k <= N && left.ok; ++k) {
    auto fk = enumerate(f, k);
    std::vector<int> all(k);
    std::iota(all.begin(), all.end(), 1);
    for (const auto &s : *fk->structures) {
      const Structure &l = mu(k, Structure{Tag::Pair, {}, {eta, s}});
      if (!(l == s))
        fail(left, k, "mu(eta, " + to_string(s) + ") = " + to_string(l));
      const Structure &r = mu(k, Structure{Tag::Pair, all, {s, eta}});
      if (!(r == s))
        fail(right, k, "mu(" + to_string(s) + ", eta) = " + to_string(r));
    }
  }
  for (unsigned k = 0; k <= N; ++k) {
    auto triples = enumerate(fff, k);
    for (const auto &s : *triples->structures) {
      const Structure &p12 = s.children[0];
      Structure l = mu(k, Structure{Tag::Pair, s.labels, {mu.apply_on(p12, s.labels, 1), s.children[1]}});
      Structure a = associate_right(s);
      std::vector<int> u23 = complement(k, a.labels);
      Structure r = mu(k, Structure{Tag::Pair, a.labels, {a.children[0], mu.apply_on(a.children[1], u23, 1)}});
      if (!(l == r)) {
        fail(assoc, k, to_string(s) + ": " + to_string(l) + " vs " + to_string(r));
        bool nonempty = !p12.labels.empty() && p12.labels.size() < s.labels.size() &&
                        s.labels.size() < k;
        if (nonempty && !nonempty_failure)
          nonempty_failure = k;
      }
    }
  }
  if (!assoc.ok && nonempty_failure)
    assoc.detail += "; first failure with three nonempty parts at degree " +
                    std::to_string(*nonempty_failure);
  else if (!assoc.ok)
    assoc.detail += "; no failure with three nonempty parts up to the horizon";

  for (unsigned k = 0; k <= std::min(N, 5u); ++k) {
    auto pairs = enumerate(ff, k);
    auto perms = all_permutations(k);
    for (const auto &s : *pairs->structures) {
      const Structure &image = mu(k, s);
      for (const auto &p : perms) {
        bool keeps = std::all_of(s.labels.begin(), s.labels.end(), [&](int x) {
          return std::binary_search(s.labels.begin(), s.labels.end(), p(x));
        });
        if (!keeps)
          continue;
        Structure moved = transport(ff, s, LabelMap::of(p));
        if (!(mu(k, moved) == transport(f, image, LabelMap::of(p))))
          fail(shuffle, k, "shuffle " + p.str() + " on " + to_string(s));
      }
    }
  }
  rep.laws = {nat, left, right, assoc, shuffle};
  rep.ok = std::all_of(rep.laws.begin(), rep.laws.end(), [](const LawReport &l) { return l.ok; });
  return rep;
}

PartialAlgebra terminal_algebra(const Expr &carrier, unsigned N) {
  for (unsigned k = 0; k <= N; ++k)
    if (enumerate(carrier, k)->size() != 1)
      throw Error(ErrorCode::InvalidAlgebra,
                  render(carrier) + " is not a single point at degree " + std::to_string(k));
  Expr d = ex::derive(carrier);
  return {carrier, nat_from_function(d, carrier, N, [&](unsigned k, const Structure &) {
            return (*enumerate(carrier, k))[0];
          })};
}

PartialAlgebra unit_algebra(unsigned N) {
  Expr one = ex::one();
  return {one, nat_from_function(ex::derive(one), one, N, [](unsigned, const Structure &s) {
            return s;
          })};
}

AlgebraReport check_algebra(const PartialAlgebra &a) {
  if (!same_tree(a.xi.source, ex::derive(a.carrier)) || !same_tree(a.xi.target, a.carrier))
    return {false, "structure map must go from D(" + render(a.carrier) + ") to " +
                       render(a.carrier)};
  auto nr = naturality(a.xi);
  if (!nr.ok)
    return {false, "structure map is not equivariant at degree " + std::to_string(*nr.degree)};
  return {};
}

PartialAlgebra tensor_partial_algebras(const PartialAlgebra &a, const PartialAlgebra &b,
                                       unsigned N) {
  for (const auto *alg : {&a, &b}) {
    auto r = check_algebra(*alg);
    if (!r.ok)
      throw Error(ErrorCode::InvalidAlgebra, r.detail);
    if (alg->xi.horizon() < N)
      throw Error(ErrorCode::InvalidAlgebra, "algebra on " + render(alg->carrier) +
                                                 " is known only up to degree " +
                                                 std::to_string(alg->xi.horizon()));
  }
  Expr carrier = ex::cauchy(a.carrier, b.carrier);
  // moves the adjoined point 0 back to floor 1
  const LabelMap refloor{0, {}, 1};
  auto xi = nat_from_function(
      ex::derive(carrier), carrier, N, [&](unsigned k, const Structure &s) {
        const Structure &pair = s.children.at(0);
        const std::vector<int> &U = pair.labels;
        if (!U.empty() && U.front() == 0) {
          std::vector<int> V(U.begin() + 1, U.end());
          Structure da{Tag::Deriv, {0}, {pair.children[0]}};
          return Structure{Tag::Pair, V,
                           {a.xi.apply_on(da, V, 1),
                            transport(b.carrier, pair.children[1], refloor)}};
        }
        Structure db{Tag::Deriv, {0}, {pair.children[1]}};
        return Structure{Tag::Pair, U,
                         {transport(a.carrier, pair.children[0], refloor),
                          b.xi.apply_on(db, complement(k, U), 1)}};
      });
  return {carrier, xi};
}

Structure derive_image(const NatTrans &h, unsigned k, const Structure &s) {
  if (s.tag != Tag::Deriv || s.labels != std::vector<int>{0} || s.children.size() != 1)
    throw Error(ErrorCode::StructureNotOfExpr, "not a derivative structure: " + to_string(s));
  std::vector<int> V(k + 1);
  std::iota(V.begin(), V.end(), 0);
  return Structure{Tag::Deriv, {0}, {h.apply_on(s.children[0], V, 0)}};
}

bool is_algebra_morphism(const NatTrans &h, const PartialAlgebra &a, const PartialAlgebra &b) {
  if (h.horizon() == 0)
    return true;
  unsigned top = std::min({h.horizon() - 1, a.xi.horizon(), b.xi.horizon()});
  for (unsigned k = 0; k <= top; ++k) {
    auto da = enumerate(a.xi.source, k);
    for (const auto &s : *da->structures)
      if (!(h(k, a.xi(k, s)) == b.xi(k, derive_image(h, k, s))))
        return false;
  }
  return true;
}

std::vector<Expr> default_family() {
  return {ex::x(), ex::exp(), ex::lin(), ex::cyc(), ex::subsets()};
}

const std::vector<std::string> &suite_names() {
  static const std::vector<std::string> names{
      "leibniz", "chain_rule", "perm_decomp", "der_lin", "der_cyc",  "der_perm",
      "napier",  "commutation", "der_R",      "R_der",   "lin_free"};
  return names;
}

FiniteAction power_action(const DegreeData &f) {
  unsigned n = f.degree;
  std::size_t m = f.size();
  std::size_t size = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (m != 0 && size > default_enumeration_cap / m)
      throw Error(ErrorCode::EnumerationTooLarge,
                  "function space of " + render(f.expr) + " at degree " + std::to_string(n));
    size *= m;
  }
  if (m == 0 && n > 0)
    size = 0;
  std::shared_ptr<const DegreeData> keep = enumerate(f.expr, f.degree);
  return FiniteAction(n, size, [keep, n, m](const Permutation &p, std::size_t x) {
    std::vector<std::size_t> phi(n), psi(n);
    for (unsigned i = n; i-- > 0;) {
      phi[i] = x % m;
      x /= m;
    }
    for (unsigned a = 1; a <= n; ++a)
      psi[static_cast<std::size_t>(p(static_cast<int>(a)) - 1)] = keep->action.act(p, phi[a - 1]);
    std::size_t y = 0;
    for (unsigned i = 0; i < n; ++i)
      y = y * m + psi[i];
    return y;
  });
}

namespace {

std::vector<int> complement_in(unsigned n, const std::vector<int> &U) {
  std::vector<int> out;
  for (int x = 1; x <= static_cast<int>(n); ++x)
    if (!std::binary_search(U.begin(), U.end(), x))
      out.push_back(x);
  return out;
}

std::vector<int> all_but(unsigned n, int a) {
  std::vector<int> out;
  for (int x = 1; x <= static_cast<int>(n); ++x)
    if (x != a)
      out.push_back(x);
  return out;
}

} // namespace

Natural marks(const Expr &e, const SubgroupElements &h, std::size_t cap) {
  unsigned n = h.degree;
  switch (e.kind()) {
  case Kind::Zero:
    return 0;
  case Kind::Sum:
    return marks(e.arg(0), h, cap) + marks(e.arg(1), h, cap);
  case Kind::Hadamard:
    return marks(e.arg(0), h, cap) * marks(e.arg(1), h, cap);
  case Kind::Derive:
    return marks(e.arg(0), extend_subgroup(h), cap);
  case Kind::Cauchy: {
    // invariant left parts are unions of orbits
    auto orbs = point_orbits(h);
    Natural total = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << orbs.size()); ++mask) {
      std::vector<int> U;
      for (std::size_t i = 0; i < orbs.size(); ++i)
        if (mask >> i & 1)
          U.insert(U.end(), orbs[i].begin(), orbs[i].end());
      std::sort(U.begin(), U.end());
      Natural l = marks(e.arg(0), restrict_subgroup(h, U), cap);
      if (l != 0)
        total += l * marks(e.arg(1), restrict_subgroup(h, complement_in(n, U)), cap);
    }
    return total;
  }
  case Kind::Pointing: {
    Natural fixed = 0;
    for (const auto &o : point_orbits(h))
      if (o.size() == 1)
        fixed += 1;
    return fixed == 0 ? Natural(0) : fixed * marks(e.arg(0), h, cap);
  }
  case Kind::AdjL: {
    Natural total = 0;
    for (const auto &o : point_orbits(h))
      if (o.size() == 1)
        total += marks(e.arg(0), restrict_subgroup(h, all_but(n, o[0])), cap);
    return total;
  }
  case Kind::AdjR: {
    Natural total = 1;
    for (const auto &o : point_orbits(h)) {
      total *= marks(e.arg(0), restrict_subgroup(point_stabilizer(h, o[0]), all_but(n, o[0])), cap);
      if (total == 0)
        break;
    }
    return total;
  }
  default: {
    if (cardinality(e, n) > Natural(static_cast<unsigned long>(cap)))
      throw Error(ErrorCode::EnumerationTooLarge,
                  "marks of " + render(e) + " at degree " + std::to_string(n));
    auto d = enumerate(e, n, cap);
    return static_cast<unsigned long>(fixed_points(h, d->action).size());
  }
  }
}

Natural power_marks(const Expr &f, const SubgroupElements &h, std::size_t cap) {
  Natural total = 1;
  for (const auto &o : point_orbits(h))
    total *= marks(f, point_stabilizer(h, o[0]), cap);
  return total;
}

std::optional<SubgroupElements> marks_differ(
    const std::function<Natural(const SubgroupElements &)> &a,
    const std::function<Natural(const SubgroupElements &)> &b, unsigned n) {
  for (const auto &h : subgroup_classes(n))
    if (a(h) != b(h))
      return h;
  return std::nullopt;
}

namespace {

struct Side {
  Expr expr;
  bool power = false; // points are functions [n] -> expr[n]
};

Natural side_count(const Side &s, unsigned k) {
  Natural c = cardinality(s.expr, k);
  return s.power ? power(c, k) : c;
}

Natural side_marks(const Side &s, const SubgroupElements &h, std::size_t cap) {
  return s.power ? power_marks(s.expr, h, cap) : marks(s.expr, h, cap);
}

FiniteAction side_action(const Side &s, unsigned k) {
  if (s.power)
    return power_action(*enumerate(s.expr, k));
  return enumerate(s.expr, k)->action;
}

SuiteCase compare(const std::string &label, const Side &lhs, const Side &rhs, unsigned N,
                  std::size_t cap) {
  SuiteCase c;
  c.label = label;
  bool structural = true;
  for (unsigned k = 0; k <= N; ++k) {
    Natural a = side_count(lhs, k), b = side_count(rhs, k);
    if (a != b) {
      c.ok = false;
      c.failing_degree = k;
      c.detail = "cardinalities " + a.get_str() + " and " + b.get_str() + " at degree " +
                 std::to_string(k);
      return c;
    }
    if (!structural)
      continue;
    if (a > Natural(static_cast<unsigned long>(cap))) {
      if (k > subgroup_lattice_max_degree) {
        structural = false;
        continue;
      }
      try {
        auto h = marks_differ([&](const SubgroupElements &g) { return side_marks(lhs, g, cap); },
                              [&](const SubgroupElements &g) { return side_marks(rhs, g, cap); }, k);
        if (h) {
          c.ok = false;
          c.failing_degree = k;
          c.detail = "degree " + std::to_string(k) + ": fixed points of a subgroup of order " +
                     std::to_string(h->order()) + " differ";
          return c;
        }
      } catch (const Error &e) {
        if (e.code() != ErrorCode::EnumerationTooLarge)
          throw;
        structural = false;
        continue;
      }
      c.structural_up_to = k;
      c.by_marks_from = c.by_marks_from ? c.by_marks_from : std::optional<unsigned>(k);
      continue;
    }
    FiniteAction fa = side_action(lhs, k), fb = side_action(rhs, k);
    if (!actions_isomorphic(fa, fb)) {
      c.ok = false;
      c.failing_degree = k;
      c.detail = "degree " + std::to_string(k) + ": " + describe(stabilizer_classes(fa)) +
                 " vs " + describe(stabilizer_classes(fb));
      return c;
    }
    c.structural_up_to = k;
  }
  if (c.by_marks_from)
    c.detail = "degrees " + std::to_string(*c.by_marks_from) + " and up compared by fixed points";
  if (!structural)
    c.detail = "S_k-sets compared up to degree " + std::to_string(c.structural_up_to) +
               ", cardinalities up to " + std::to_string(N);
  return c;
}

} // namespace

SuiteReport canonical_iso_suite(const std::string &name, unsigned N,
                                const std::vector<Expr> &family, std::size_t structural_cap) {
  using namespace ex;
  SuiteReport rep;
  rep.name = name;
  rep.horizon = N;
  auto add = [&](const Expr &l, const Expr &r) {
    rep.cases.push_back(compare(render(l) + " ~ " + render(r), {l}, {r}, N, structural_cap));
  };
  if (name == "leibniz") {
    for (const auto &f : family)
      for (const auto &g : family)
        add(derive(cauchy(f, g)), sum(cauchy(derive(f), g), cauchy(f, derive(g))));
  } else if (name == "chain_rule") {
    for (const auto &f : family)
      for (const auto &g : family)
        if (cardinality(g, 0) == 0)
          add(derive(substitute(f, g)), cauchy(substitute(derive(f), g), derive(g)));
  } else if (name == "perm_decomp") {
    add(perm(), substitute(exp(), cyc()));
    add(subsets(), cauchy(exp(), exp()));
  } else if (name == "der_lin") {
    add(derive(lin()), cauchy(lin(), lin()));
  } else if (name == "der_cyc") {
    add(derive(cyc()), lin());
  } else if (name == "der_perm") {
    add(derive(perm()), cauchy(perm(), lin()));
  } else if (name == "napier") {
    add(derive(exp()), exp());
  } else if (name == "commutation") {
    for (const auto &f : family)
      add(derive_l(f), sum(f, pointing(f)));
  } else if (name == "der_R") {
    for (const auto &f : family)
      add(derive(adj_r(f)), hadamard(adj_r(derive(f)), f));
  } else if (name == "R_der") {
    for (const auto &f : family) {
      Expr l = adj_r(derive(f));
      rep.cases.push_back(compare(render(l) + " ~ " + render(f) + "^n", {l}, {f, true}, N,
                                  structural_cap));
    }
  } else if (name == "lin_free") {
    Expr s = ex::rep(0);
    for (unsigned n = 1; n <= N; ++n)
      s = sum(s, ex::rep(n));
    add(lin(), s);
  } else {
    throw Error(ErrorCode::InvalidExpr, "unknown suite " + name);
  }
  rep.ok = std::all_of(rep.cases.begin(), rep.cases.end(), [](const SuiteCase &c) { return c.ok; });
  return rep;
}

} // namespace species
