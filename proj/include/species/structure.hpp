#ifndef SPECIES_STRUCTURE_HPP
#define SPECIES_STRUCTURE_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "species/expr.hpp"
#include "species/symmetry.hpp"

namespace species {

// Labels 1..n are the points of the underlying set.  Labels <= 0 are
// adjoined points: the first derivative adds 0, a derivative nested inside
// it adds -1, and so on.  Permutations never move them.
enum class Tag : std::uint8_t {
  Set,    // labels: the whole label set
  Subset, // labels: the chosen subset
  Lin,    // labels: the order
  Cyc,    // labels: the cycle, rotated to start at its least label
  Perm,   // labels: x0, p(x0), x1, p(x1), ... with x ascending
  Rep,    // labels: image of 1..k
  Pair,   // labels: left part U; children: left and right structures
  Both,   // children: the two factors
  Inl,
  Inr,
  Deriv,  // labels: [adjoined point]; children: [inner]
  Point,  // labels: [chosen label]; children: [inner]
  Tuple,  // labels: the label set; children: one structure per label
  Part,   // labels: block sizes then blocks; children: outer, then one per block
  Table,  // labels: [index, label set...]
  Star,   // the single point above a right truncation; labels: label set
};

const char *tag_name(Tag t);

struct Structure {
  Tag tag = Tag::Set;
  std::vector<int> labels;
  std::vector<Structure> children;

  friend bool operator==(const Structure &a, const Structure &b);
  friend std::strong_ordering operator<=>(const Structure &a, const Structure &b);
};

std::string to_string(const Structure &s);

// Relabelling x -> img[x - lo] on lo..lo+|img|-1, x -> x + shift below lo,
// identity above.
struct LabelMap {
  int lo = 1;
  std::vector<int> img;
  int shift = 0;

  int operator()(int x) const {
    if (x < lo)
      return x + shift;
    std::size_t i = static_cast<std::size_t>(x - lo);
    return i < img.size() ? img[i] : x;
  }

  static LabelMap of(const Permutation &p);
  // Sends the sorted set V (all entries >= floor) to 1..|V| by rank and the
  // labels below `floor` to labels below 1.
  static LabelMap standardize(const std::vector<int> &V, int floor);
  static LabelMap unstandardize(const std::vector<int> &V, int floor);
};

// Canonical structures of e on the sorted label set L.  Adjoined points are
// created below `floor`.  Not sorted.
std::vector<Structure> enumerate_on(const Expr &e, const std::vector<int> &L, int floor);

// Transport of a structure of e along a relabelling, re-canonicalized.
Structure transport(const Expr &e, const Structure &s, const LabelMap &m);

inline constexpr std::size_t default_enumeration_cap = 1000000;

struct DegreeData {
  Expr expr;
  unsigned degree = 0;
  std::shared_ptr<const std::vector<Structure>> structures; // sorted
  FiniteAction action;

  std::size_t size() const { return structures->size(); }
  const Structure &operator[](std::size_t i) const { return (*structures)[i]; }
  std::optional<std::size_t> index_of(const Structure &s) const;
};

std::shared_ptr<const DegreeData> enumerate(const Expr &e, unsigned n,
                                            std::size_t cap = default_enumeration_cap);

// Throws StructureNotOfExpr unless s is a structure of e at degree p.degree().
Structure act(const Expr &e, const Permutation &p, const Structure &s);

// Builds a FiniteAction on the sorted structure list by transport.
FiniteAction structure_action(const Expr &e, unsigned n,
                              std::shared_ptr<const std::vector<Structure>> structures);

} // namespace species

#endif // SPECIES_STRUCTURE_HPP
