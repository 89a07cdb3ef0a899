#ifndef SPECIES_SYMMETRY_HPP
#define SPECIES_SYMMETRY_HPP

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "species/numeric.hpp"

// Finite symmetric groups S_n acting on finite sets: orbits, stabilizers,
// fixed points and equivariant maps, all at desk scale (n <= 8 by default).

namespace species {

inline constexpr unsigned default_max_degree = 8;

// A bijection of {1, ..., n} in one-line notation.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(unsigned degree);
  // Product of disjoint or overlapping cycles, composed left to right.
  static Permutation from_cycles(unsigned degree,
                                 std::initializer_list<std::vector<int>> cycles);
  static Permutation transposition(unsigned degree, int a, int b);
  // (1 2 ... n)
  static Permutation long_cycle(unsigned degree);

  unsigned degree() const { return static_cast<unsigned>(images_.size()); }
  int operator()(int x) const { return images_[static_cast<std::size_t>(x - 1)]; }
  std::span<const int> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  // Cycle type as a sorted (descending) list of cycle lengths.
  std::vector<unsigned> cycle_type() const;
  std::string str() const;

  // (a * b)(x) = a(b(x))
  friend Permutation operator*(const Permutation &a, const Permutation &b);
  friend bool operator==(const Permutation &, const Permutation &) = default;
  friend std::strong_ordering operator<=>(const Permutation &a,
                                          const Permutation &b) {
    return a.images_ <=> b.images_;
  }

private:
  std::vector<int> images_;
};

std::ostream &operator<<(std::ostream &os, const Permutation &p);

// All n! permutations of {1..n}; identity first, the rest in lexicographic
// order of one-line notation.
std::vector<Permutation> all_permutations(unsigned n,
                                          unsigned max_degree = default_max_degree);

// The standard generators {(1 2), (1 2 ... n)} of S_n, deduplicated; empty for
// n <= 1.
std::vector<Permutation> standard_generators(unsigned n);

// A left action of S_n on the points {0, ..., size-1}. Point order is the
// canonical order of whatever the points encode, so the least point of an
// orbit is its smallest index.
class FiniteAction {
public:
  using ActFn = std::function<std::size_t(const Permutation &, std::size_t)>;

  FiniteAction(unsigned degree, std::size_t size, ActFn act);

  unsigned degree() const { return degree_; }
  std::size_t size() const { return size_; }
  std::size_t act(const Permutation &p, std::size_t x) const { return act_(p, x); }

  std::span<const Permutation> generators() const { return generators_; }
  // Image of every point under generators()[g].
  std::span<const std::size_t> generator_images(std::size_t g) const {
    return generator_images_[g];
  }

private:
  unsigned degree_;
  std::size_t size_;
  ActFn act_;
  std::vector<Permutation> generators_;
  std::vector<std::vector<std::size_t>> generator_images_;
};

struct Orbit {
  std::size_t representative;
  std::vector<std::size_t> points; // sorted
};

struct SubgroupElements {
  unsigned degree = 0;
  std::vector<Permutation> elements; // sorted, contains the identity

  std::size_t order() const { return elements.size(); }
  bool contains(const Permutation &p) const;
};

// Orbits sorted by representative.
std::vector<Orbit> orbits(const FiniteAction &a);
SubgroupElements stabilizer(const FiniteAction &a, std::size_t x,
                            unsigned max_degree = default_max_degree);
std::vector<std::size_t> fixed_points(const SubgroupElements &h,
                                      const FiniteAction &a);
// A small generating set for h (greedy, in element order).
std::vector<Permutation> generating_set(const SubgroupElements &h);
// Generated subgroup, closed under composition.
SubgroupElements closure(unsigned degree, std::span<const Permutation> gens);
bool conjugate_subgroups(const SubgroupElements &a, const SubgroupElements &b,
                         unsigned max_degree = default_max_degree);

inline constexpr unsigned subgroup_lattice_max_degree = 5;
// One subgroup of S_n from each conjugacy class (156 subgroups in 19
// classes for n = 5), ordered by size.  Throws DegreeTooLarge for n > 5.
const std::vector<SubgroupElements> &subgroup_classes(unsigned n);
// Elements of h that fix the point a.
SubgroupElements point_stabilizer(const SubgroupElements &h, int a);
// h acting on the sorted label set V, which every element must preserve,
// with V relabelled as 1..|V| in order.
SubgroupElements restrict_subgroup(const SubgroupElements &h, const std::vector<int> &V);
// h inside S_{n+1}, fixing n + 1.
SubgroupElements extend_subgroup(const SubgroupElements &h);
// Orbits of h on 1..n, each sorted, ordered by least element.
std::vector<std::vector<int>> point_orbits(const SubgroupElements &h);

// An equivariant map as the image index of every source point.
using PointMap = std::vector<std::size_t>;

Natural count_equivariant_maps(const FiniteAction &src, const FiniteAction &tgt,
                               unsigned max_degree = default_max_degree);
std::vector<PointMap> enumerate_equivariant_maps(
    const FiniteAction &src, const FiniteAction &tgt, std::size_t limit,
    unsigned max_degree = default_max_degree);
bool is_equivariant(const PointMap &f, const FiniteAction &src,
                    const FiniteAction &tgt);

// One entry per orbit: order of the stabilizer and its conjugacy class,
// described by the cycle-type census of its elements.
struct StabilizerClass {
  std::size_t orbit_size;
  std::size_t order;
  std::string census;
};
std::vector<StabilizerClass> stabilizer_classes(
    const FiniteAction &a, unsigned max_degree = default_max_degree);

// Classification of finite G-sets: isomorphic iff the multisets of conjugacy
// classes of orbit stabilizers agree.
bool actions_isomorphic(const FiniteAction &a, const FiniteAction &b,
                        unsigned max_degree = default_max_degree);

// Restriction of an S_{k+m} action to S_m acting on the labels k+1..k+m.
FiniteAction restrict_to_tail(const FiniteAction &a, unsigned k);

} // namespace species

#endif // SPECIES_SYMMETRY_HPP
