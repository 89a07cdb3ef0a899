#include "species/symmetry.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "species/error.hpp"

namespace species {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size() + 1, false);
  for (int v : images_) {
    if (v < 1 || v > static_cast<int>(images_.size()) || seen[v])
      throw Error(ErrorCode::DegreeMismatch, "images are not a bijection of {1..n}");
    seen[v] = true;
  }
}

Permutation Permutation::identity(unsigned degree) {
  std::vector<int> v(degree);
  std::iota(v.begin(), v.end(), 1);
  Permutation p;
  p.images_ = std::move(v);
  return p;
}

Permutation Permutation::from_cycles(unsigned degree,
                                     std::initializer_list<std::vector<int>> cycles) {
  Permutation result = identity(degree);
  for (const auto &cycle : cycles) {
    Permutation c = identity(degree);
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      int from = cycle[i];
      int to = cycle[(i + 1) % cycle.size()];
      if (from < 1 || from > static_cast<int>(degree))
        throw Error(ErrorCode::DegreeMismatch, "cycle entry out of range");
      c.images_[from - 1] = to;
    }
    result = result * c;
  }
  return Permutation(result.images_);
}

Permutation Permutation::transposition(unsigned degree, int a, int b) {
  return from_cycles(degree, {{a, b}});
}

Permutation Permutation::long_cycle(unsigned degree) {
  Permutation p = identity(degree);
  for (unsigned i = 0; i < degree; ++i)
    p.images_[i] = static_cast<int>((i + 1) % degree) + 1;
  return p;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != static_cast<int>(i) + 1)
      return false;
  return true;
}

Permutation Permutation::inverse() const {
  Permutation p;
  p.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    p.images_[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i) + 1;
  return p;
}

std::vector<unsigned> Permutation::cycle_type() const {
  std::vector<unsigned> lengths;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i])
      continue;
    unsigned len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(images_[j] - 1)) {
      seen[j] = true;
      ++len;
    }
    lengths.push_back(len);
  }
  std::sort(lengths.begin(), lengths.end(), std::greater<>());
  return lengths;
}

std::string Permutation::str() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < images_.size(); ++i)
    os << (i ? " " : "") << images_[i];
  os << ']';
  return os.str();
}

Permutation operator*(const Permutation &a, const Permutation &b) {
  if (a.degree() != b.degree())
    throw Error(ErrorCode::DegreeMismatch, "composing permutations of different degree");
  Permutation p;
  p.images_.resize(a.images_.size());
  for (std::size_t i = 0; i < b.images_.size(); ++i)
    p.images_[i] = a.images_[static_cast<std::size_t>(b.images_[i] - 1)];
  return p;
}

std::ostream &operator<<(std::ostream &os, const Permutation &p) {
  return os << p.str();
}

namespace {

std::vector<Permutation> build_permutations(unsigned n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

const std::vector<Permutation> &cached_permutations(unsigned n) {
  static std::array<std::once_flag, default_max_degree + 1> flags;
  static std::array<std::vector<Permutation>, default_max_degree + 1> tables;
  std::call_once(flags[n], [n] { tables[n] = build_permutations(n); });
  return tables[n];
}

void check_degree(unsigned n, unsigned max_degree) {
  if (n > max_degree)
    throw Error(ErrorCode::DegreeTooLarge,
                "degree " + std::to_string(n) + " exceeds the configured maximum " +
                    std::to_string(max_degree));
}

// Invokes fn on every permutation of degree n, in all_permutations order.
template <typename Fn> void for_each_permutation(unsigned n, unsigned max_degree, Fn fn) {
  check_degree(n, max_degree);
  if (n <= default_max_degree) {
    for (const auto &p : cached_permutations(n))
      if (!fn(p))
        return;
    return;
  }
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  do {
    if (!fn(Permutation(v)))
      return;
  } while (std::next_permutation(v.begin(), v.end()));
}

std::string census_of(const SubgroupElements &h) {
  std::map<std::vector<unsigned>, std::size_t> counts;
  for (const auto &p : h.elements)
    ++counts[p.cycle_type()];
  std::ostringstream os;
  bool first = true;
  for (const auto &[type, count] : counts) {
    if (!first)
      os << ' ';
    first = false;
    for (std::size_t i = 0; i < type.size(); ++i)
      os << (i ? "." : "") << type[i];
    os << 'x' << count;
  }
  return os.str();
}

} // namespace

std::vector<Permutation> all_permutations(unsigned n, unsigned max_degree) {
  check_degree(n, max_degree);
  if (n <= default_max_degree)
    return cached_permutations(n);
  return build_permutations(n);
}

std::vector<Permutation> standard_generators(unsigned n) {
  std::vector<Permutation> gens;
  if (n <= 1)
    return gens;
  gens.push_back(Permutation::transposition(n, 1, 2));
  if (n > 2)
    gens.push_back(Permutation::long_cycle(n));
  return gens;
}

FiniteAction::FiniteAction(unsigned degree, std::size_t size, ActFn act)
    : degree_(degree), size_(size), act_(std::move(act)),
      generators_(standard_generators(degree)) {
  generator_images_.reserve(generators_.size());
  for (const auto &g : generators_) {
    std::vector<std::size_t> img(size_);
    for (std::size_t x = 0; x < size_; ++x) {
      img[x] = act_(g, x);
      if (img[x] >= size_)
        throw Error(ErrorCode::PointNotInAction, "action leaves the point set");
    }
    generator_images_.push_back(std::move(img));
  }
}

bool SubgroupElements::contains(const Permutation &p) const {
  return std::binary_search(elements.begin(), elements.end(), p);
}

std::vector<Orbit> orbits(const FiniteAction &a) {
  std::vector<Orbit> result;
  std::vector<bool> seen(a.size(), false);
  for (std::size_t start = 0; start < a.size(); ++start) {
    if (seen[start])
      continue;
    Orbit orbit{start, {start}};
    seen[start] = true;
    for (std::size_t i = 0; i < orbit.points.size(); ++i) {
      std::size_t x = orbit.points[i];
      for (std::size_t g = 0; g < a.generators().size(); ++g) {
        std::size_t y = a.generator_images(g)[x];
        if (!seen[y]) {
          seen[y] = true;
          orbit.points.push_back(y);
        }
      }
    }
    std::sort(orbit.points.begin(), orbit.points.end());
    result.push_back(std::move(orbit));
  }
  return result;
}

SubgroupElements stabilizer(const FiniteAction &a, std::size_t x, unsigned max_degree) {
  if (x >= a.size())
    throw Error(ErrorCode::PointNotInAction, "point " + std::to_string(x) + " not in action");
  SubgroupElements h{a.degree(), {}};
  for_each_permutation(a.degree(), max_degree, [&](const Permutation &p) {
    if (a.act(p, x) == x)
      h.elements.push_back(p);
    return true;
  });
  std::sort(h.elements.begin(), h.elements.end());
  return h;
}

SubgroupElements closure(unsigned degree, std::span<const Permutation> gens) {
  std::set<Permutation> seen{Permutation::identity(degree)};
  std::vector<Permutation> frontier{Permutation::identity(degree)};
  while (!frontier.empty()) {
    std::vector<Permutation> next;
    for (const auto &p : frontier)
      for (const auto &g : gens) {
        Permutation q = g * p;
        if (seen.insert(q).second)
          next.push_back(std::move(q));
      }
    frontier = std::move(next);
  }
  return SubgroupElements{degree, {seen.begin(), seen.end()}};
}

std::vector<Permutation> generating_set(const SubgroupElements &h) {
  std::vector<Permutation> gens;
  SubgroupElements current = closure(h.degree, gens);
  for (const auto &p : h.elements) {
    if (current.order() == h.order())
      break;
    if (current.contains(p))
      continue;
    gens.push_back(p);
    current = closure(h.degree, gens);
  }
  return gens;
}

std::vector<std::size_t> fixed_points(const SubgroupElements &h, const FiniteAction &a) {
  if (h.degree != a.degree())
    throw Error(ErrorCode::DegreeMismatch, "subgroup and action have different degree");
  std::vector<Permutation> gens = generating_set(h);
  std::vector<std::size_t> result;
  for (std::size_t x = 0; x < a.size(); ++x) {
    bool fixed = std::all_of(gens.begin(), gens.end(),
                             [&](const Permutation &g) { return a.act(g, x) == x; });
    if (fixed)
      result.push_back(x);
  }
  return result;
}

bool conjugate_subgroups(const SubgroupElements &a, const SubgroupElements &b,
                         unsigned max_degree) {
  if (a.degree != b.degree || a.order() != b.order())
    return false;
  if (a.elements == b.elements)
    return true;
  std::vector<Permutation> gens = generating_set(a);
  bool found = false;
  for_each_permutation(a.degree, max_degree, [&](const Permutation &s) {
    Permutation s_inv = s.inverse();
    found = std::all_of(gens.begin(), gens.end(), [&](const Permutation &g) {
      return b.contains(s * g * s_inv);
    });
    return !found;
  });
  return found;
}

Natural count_equivariant_maps(const FiniteAction &src, const FiniteAction &tgt,
                               unsigned max_degree) {
  if (src.degree() != tgt.degree())
    throw Error(ErrorCode::DegreeMismatch, "equivariant maps between actions of different degree");
  Natural total = 1;
  std::map<std::vector<Permutation>, std::size_t> memo;
  for (const auto &orbit : orbits(src)) {
    SubgroupElements h = stabilizer(src, orbit.representative, max_degree);
    auto it = memo.find(h.elements);
    std::size_t fixed;
    if (it != memo.end()) {
      fixed = it->second;
    } else {
      fixed = fixed_points(h, tgt).size();
      memo.emplace(h.elements, fixed);
    }
    total *= static_cast<unsigned long>(fixed);
    if (total == 0)
      break;
  }
  return total;
}

std::vector<PointMap> enumerate_equivariant_maps(const FiniteAction &src,
                                                 const FiniteAction &tgt,
                                                 std::size_t limit,
                                                 unsigned max_degree) {
  if (src.degree() != tgt.degree())
    throw Error(ErrorCode::DegreeMismatch, "equivariant maps between actions of different degree");
  struct OrbitPlan {
    std::vector<std::pair<std::size_t, Permutation>> transversal;
    std::vector<std::size_t> choices;
  };
  std::vector<OrbitPlan> plans;
  Natural count = 1;
  for (const auto &orbit : orbits(src)) {
    OrbitPlan plan;
    // transversal[i] = (x, s) with s . representative = x
    std::vector<bool> seen(src.size(), false);
    plan.transversal.emplace_back(orbit.representative, Permutation::identity(src.degree()));
    seen[orbit.representative] = true;
    for (std::size_t i = 0; i < plan.transversal.size(); ++i) {
      for (std::size_t g = 0; g < src.generators().size(); ++g) {
        std::size_t y = src.generator_images(g)[plan.transversal[i].first];
        if (!seen[y]) {
          seen[y] = true;
          plan.transversal.emplace_back(y, src.generators()[g] * plan.transversal[i].second);
        }
      }
    }
    plan.choices = fixed_points(stabilizer(src, orbit.representative, max_degree), tgt);
    count *= static_cast<unsigned long>(plan.choices.size());
    plans.push_back(std::move(plan));
  }
  if (count > Natural(static_cast<unsigned long>(limit)))
    throw Error(ErrorCode::TooManyMaps, to_string(count) + " equivariant maps exceed the limit " +
                                            std::to_string(limit));
  std::vector<PointMap> result;
  if (count == 0)
    return result;
  std::vector<std::size_t> odometer(plans.size(), 0);
  while (true) {
    PointMap f(src.size());
    for (std::size_t o = 0; o < plans.size(); ++o) {
      std::size_t y = plans[o].choices[odometer[o]];
      for (const auto &[x, s] : plans[o].transversal)
        f[x] = tgt.act(s, y);
    }
    result.push_back(std::move(f));
    std::size_t o = 0;
    for (; o < plans.size(); ++o) {
      if (++odometer[o] < plans[o].choices.size())
        break;
      odometer[o] = 0;
    }
    if (o == plans.size())
      break;
  }
  return result;
}

bool is_equivariant(const PointMap &f, const FiniteAction &src, const FiniteAction &tgt) {
  if (src.degree() != tgt.degree() || f.size() != src.size())
    return false;
  for (std::size_t g = 0; g < src.generators().size(); ++g)
    for (std::size_t x = 0; x < src.size(); ++x)
      if (f[src.generator_images(g)[x]] != tgt.generator_images(g)[f[x]])
        return false;
  return true;
}

std::vector<StabilizerClass> stabilizer_classes(const FiniteAction &a, unsigned max_degree) {
  std::vector<StabilizerClass> out;
  for (const auto &orbit : orbits(a)) {
    SubgroupElements h = stabilizer(a, orbit.representative, max_degree);
    out.push_back({orbit.points.size(), h.order(), census_of(h)});
  }
  std::sort(out.begin(), out.end(), [](const auto &x, const auto &y) {
    return std::tie(x.orbit_size, x.census) < std::tie(y.orbit_size, y.census);
  });
  return out;
}

bool actions_isomorphic(const FiniteAction &a, const FiniteAction &b, unsigned max_degree) {
  if (a.degree() != b.degree())
    throw Error(ErrorCode::DegreeMismatch, "comparing actions of different degree");
  if (a.size() != b.size())
    return false;
  auto oa = orbits(a);
  auto ob = orbits(b);
  if (oa.size() != ob.size())
    return false;

  // Bucket stabilizers by a conjugation invariant, then resolve each bucket
  // into genuine conjugacy classes.
  using Key = std::pair<std::size_t, std::string>;
  std::map<Key, std::pair<std::vector<SubgroupElements>, std::vector<SubgroupElements>>> buckets;
  for (const auto &o : oa) {
    SubgroupElements h = stabilizer(a, o.representative, max_degree);
    Key key{h.order(), census_of(h)};
    buckets[key].first.push_back(std::move(h));
  }
  for (const auto &o : ob) {
    SubgroupElements h = stabilizer(b, o.representative, max_degree);
    Key key{h.order(), census_of(h)};
    buckets[key].second.push_back(std::move(h));
  }
  for (auto &[key, sides] : buckets) {
    auto &[left, right] = sides;
    if (left.size() != right.size())
      return false;
    std::vector<SubgroupElements> reps;
    std::vector<long> balance;
    auto tally = [&](const SubgroupElements &h, long delta) {
      for (std::size_t i = 0; i < reps.size(); ++i)
        if (conjugate_subgroups(reps[i], h, max_degree)) {
          balance[i] += delta;
          return;
        }
      reps.push_back(h);
      balance.push_back(delta);
    };
    for (const auto &h : left)
      tally(h, 1);
    for (const auto &h : right)
      tally(h, -1);
    if (std::any_of(balance.begin(), balance.end(), [](long v) { return v != 0; }))
      return false;
  }
  return true;
}

FiniteAction restrict_to_tail(const FiniteAction &a, unsigned k) {
  if (k > a.degree())
    throw Error(ErrorCode::DegreeMismatch, "restriction offset exceeds degree");
  unsigned m = a.degree() - k;
  FiniteAction parent = a;
  return FiniteAction(m, a.size(), [parent, k](const Permutation &p, std::size_t x) {
    std::vector<int> img(parent.degree());
    for (unsigned i = 0; i < k; ++i)
      img[i] = static_cast<int>(i) + 1;
    for (unsigned i = 0; i < p.degree(); ++i)
      img[k + i] = static_cast<int>(k) + p(static_cast<int>(i) + 1);
    return parent.act(Permutation(std::move(img)), x);
  });
}

} // namespace species

namespace species {

namespace {

SubgroupElements conjugate(const SubgroupElements &h, const Permutation &s) {
  Permutation s_inv = s.inverse();
  std::vector<Permutation> out;
  out.reserve(h.elements.size());
  for (const auto &g : h.elements)
    out.push_back(s * g * s_inv);
  std::sort(out.begin(), out.end());
  return SubgroupElements{h.degree, std::move(out)};
}

std::vector<SubgroupElements> build_classes(unsigned n) {
  auto perms = all_permutations(n);
  std::set<std::vector<Permutation>> seen;
  std::vector<SubgroupElements> all{closure(n, {})};
  seen.insert(all[0].elements);
  // every subgroup is reached by adjoining one element at a time
  for (std::size_t i = 0; i < all.size(); ++i) {
    std::vector<Permutation> gens = generating_set(all[i]);
    for (const auto &p : perms) {
      if (all[i].contains(p))
        continue;
      gens.push_back(p);
      SubgroupElements h = closure(n, gens);
      gens.pop_back();
      if (seen.insert(h.elements).second)
        all.push_back(std::move(h));
    }
  }
  std::set<std::vector<Permutation>> classes_seen;
  std::vector<SubgroupElements> reps;
  for (const auto &h : all) {
    std::vector<Permutation> canonical = h.elements;
    for (const auto &s : perms)
      canonical = std::min(canonical, conjugate(h, s).elements);
    if (classes_seen.insert(canonical).second)
      reps.push_back(SubgroupElements{n, canonical});
  }
  std::stable_sort(reps.begin(), reps.end(),
                   [](const auto &a, const auto &b) { return a.order() < b.order(); });
  return reps;
}

} // namespace

const std::vector<SubgroupElements> &subgroup_classes(unsigned n) {
  if (n > subgroup_lattice_max_degree)
    throw Error(ErrorCode::DegreeTooLarge, "subgroup classes of S_" + std::to_string(n) +
                                               " (limit " +
                                               std::to_string(subgroup_lattice_max_degree) + ")");
  static std::mutex mu;
  static std::map<unsigned, std::vector<SubgroupElements>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end())
    it = cache.emplace(n, build_classes(n)).first;
  return it->second;
}

SubgroupElements point_stabilizer(const SubgroupElements &h, int a) {
  SubgroupElements out{h.degree, {}};
  for (const auto &g : h.elements)
    if (g(a) == a)
      out.elements.push_back(g);
  return out;
}

SubgroupElements restrict_subgroup(const SubgroupElements &h, const std::vector<int> &V) {
  std::map<int, int> pos;
  for (std::size_t i = 0; i < V.size(); ++i)
    pos[V[i]] = static_cast<int>(i) + 1;
  std::set<Permutation> out;
  for (const auto &g : h.elements) {
    std::vector<int> img(V.size());
    for (std::size_t i = 0; i < V.size(); ++i) {
      auto it = pos.find(g(V[i]));
      if (it == pos.end())
        throw Error(ErrorCode::PointNotInAction, "subgroup does not preserve the label set");
      img[i] = it->second;
    }
    out.insert(Permutation(std::move(img)));
  }
  return SubgroupElements{static_cast<unsigned>(V.size()), {out.begin(), out.end()}};
}

SubgroupElements extend_subgroup(const SubgroupElements &h) {
  SubgroupElements out{h.degree + 1, {}};
  for (const auto &g : h.elements) {
    std::vector<int> img(g.images().begin(), g.images().end());
    img.push_back(static_cast<int>(h.degree) + 1);
    out.elements.push_back(Permutation(std::move(img)));
  }
  return out;
}

std::vector<std::vector<int>> point_orbits(const SubgroupElements &h) {
  std::vector<std::vector<int>> out;
  std::vector<bool> done(h.degree + 1, false);
  for (int a = 1; a <= static_cast<int>(h.degree); ++a) {
    if (done[static_cast<std::size_t>(a)])
      continue;
    std::set<int> orb;
    for (const auto &g : h.elements)
      orb.insert(g(a));
    for (int b : orb)
      done[static_cast<std::size_t>(b)] = true;
    out.emplace_back(orb.begin(), orb.end());
  }
  return out;
}

} // namespace species
