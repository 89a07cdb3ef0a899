#ifndef SPECIES_EXPR_HPP
#define SPECIES_EXPR_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "species/symmetry.hpp"

namespace species {

enum class Kind {
  Zero,
  One,
  X,
  Rep,
  Exp,
  ExpPlus,
  Lin,
  LinPlus,
  Cyc,
  Perm,
  Subsets,
  Table,
  Sum,
  Hadamard,
  Cauchy,
  Substitute,
  Derive,
  Pointing,
  AdjL,
  AdjR,
  DeriveL,
  TruncLeft,
  TruncRight,
};

const char *kind_name(Kind k);

// One degree of a custom species: `size` points and the images of every
// point under the standard generators of S_degree.
struct TableDegree {
  std::size_t size = 0;
  std::vector<std::vector<std::size_t>> generator_images;
};

// A primitive given by explicit degree tables, 0..max_degree().  The full
// action of every permutation is reconstructed from the generator images;
// inconsistent tables are recorded as defects instead of throwing.
class SpeciesTable {
public:
  SpeciesTable(std::string name, std::vector<TableDegree> degrees);

  const std::string &name() const { return name_; }
  unsigned max_degree() const { return static_cast<unsigned>(degrees_.size()) - 1; }
  std::size_t size(unsigned n) const { return degrees_[n].size; }
  // Action of a permutation of degree n on a point of degree n.
  std::size_t act(const Permutation &p, std::size_t x) const;
  const std::vector<std::string> &defects() const { return defects_; }

private:
  std::string name_;
  std::vector<TableDegree> degrees_;
  // full_[n][rank(p) * size + x]
  std::vector<std::vector<std::size_t>> full_;
  std::vector<std::string> defects_;
};

// Index of p in all_permutations(p.degree()).
std::size_t permutation_rank(const Permutation &p);

struct Node;

// Immutable species expression.  Cheap to copy; nodes are shared.
class Expr {
public:
  Expr();

  Kind kind() const;
  const Expr &arg(std::size_t i) const;
  std::size_t arity() const;
  // Rep: k.  TruncLeft/TruncRight: n.
  unsigned param() const;
  const std::shared_ptr<const SpeciesTable> &table() const;
  // DeriveL is evaluated through Derive(AdjL(f)).
  const Expr &expansion() const;

  const Node *node() const { return node_.get(); }
  bool same(const Expr &other) const { return node_ == other.node_; }

  friend Expr make_expr(Kind k, std::vector<Expr> args, unsigned param,
                        std::shared_ptr<const SpeciesTable> table);

private:
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct Node {
  Kind kind;
  std::vector<Expr> args;
  unsigned param = 0;
  std::shared_ptr<const SpeciesTable> table;
  std::vector<Expr> expansion; // empty, or one expression
};

Expr make_expr(Kind k, std::vector<Expr> args = {}, unsigned param = 0,
               std::shared_ptr<const SpeciesTable> table = nullptr);

namespace ex {
Expr zero();
Expr one();
Expr x();
Expr rep(unsigned k);
Expr exp();
Expr exp_plus();
Expr lin();
Expr lin_plus();
Expr cyc();
Expr perm();
Expr subsets();
Expr table(std::shared_ptr<const SpeciesTable> t);
Expr sum(Expr a, Expr b);
Expr hadamard(Expr a, Expr b);
Expr cauchy(Expr a, Expr b);
Expr substitute(Expr outer, Expr inner);
Expr derive(Expr a);
Expr pointing(Expr a);
Expr adj_l(Expr a);
Expr adj_r(Expr a);
Expr derive_l(Expr a);
Expr trunc_left(Expr a, unsigned n);
Expr trunc_right(Expr a, unsigned n);
// a * a * ... * a (k >= 1 factors)
Expr cauchy_power(const Expr &a, unsigned k);
} // namespace ex

// Structural equality of expression trees (tables compared by identity).
bool same_tree(const Expr &a, const Expr &b);

// Pretty printer in the surface syntax of the parser, with minimal
// parentheses.  Truncations print as tl(e, n) / tr(e, n).  Tables print as
// their name in brackets and do not parse.
std::string render(const Expr &e);

struct Diagnostic {
  std::string code;
  std::string message;
};

// Empty when the expression is well formed.
std::vector<Diagnostic> validate(const Expr &e);

// Largest degree of any primitive consulted when evaluating e at degree n.
unsigned degree_budget(const Expr &e, unsigned n);

// What is known about the tail of a species: from degree `from` on every
// degree is empty, respectively a single point.
struct Tail {
  enum class Shape { Unknown, Empty, Singleton };
  Shape shape = Shape::Unknown;
  unsigned from = 0;

  static Tail unknown() { return {}; }
  static Tail empty(unsigned m) { return {Shape::Empty, m}; }
  static Tail singleton(unsigned m) { return {Shape::Singleton, m}; }
};

Tail tail_of(const Expr &e);

} // namespace species

#endif // SPECIES_EXPR_HPP
