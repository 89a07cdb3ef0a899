#include "species/expr.hpp"

#include <algorithm>
#include <sstream>

#include "species/counting.hpp"
#include "species/error.hpp"

namespace species {

const char *kind_name(Kind k) {
  switch (k) {
  case Kind::Zero: return "Zero";
  case Kind::One: return "One";
  case Kind::X: return "X";
  case Kind::Rep: return "Representable";
  case Kind::Exp: return "Exp";
  case Kind::ExpPlus: return "ExpPlus";
  case Kind::Lin: return "Lin";
  case Kind::LinPlus: return "LinPlus";
  case Kind::Cyc: return "Cyc";
  case Kind::Perm: return "Perm";
  case Kind::Subsets: return "Subsets";
  case Kind::Table: return "Table";
  case Kind::Sum: return "Sum";
  case Kind::Hadamard: return "Hadamard";
  case Kind::Cauchy: return "Cauchy";
  case Kind::Substitute: return "Substitute";
  case Kind::Derive: return "Derive";
  case Kind::Pointing: return "Pointing";
  case Kind::AdjL: return "AdjL";
  case Kind::AdjR: return "AdjR";
  case Kind::DeriveL: return "DeriveL";
  case Kind::TruncLeft: return "TruncLeft";
  case Kind::TruncRight: return "TruncRight";
  }
  return "?";
}

std::size_t permutation_rank(const Permutation &p) {
  auto img = p.images();
  std::size_t n = img.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (img[j] < img[i])
        ++smaller;
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

SpeciesTable::SpeciesTable(std::string name, std::vector<TableDegree> degrees)
    : name_(std::move(name)), degrees_(std::move(degrees)) {
  if (degrees_.empty())
    degrees_.push_back(TableDegree{});
  full_.resize(degrees_.size());
  for (unsigned n = 0; n < degrees_.size(); ++n) {
    const TableDegree &d = degrees_[n];
    auto gens = standard_generators(n);
    std::size_t order = all_permutations(n).size();
    auto defect = [&](const std::string &msg) {
      defects_.push_back("degree " + std::to_string(n) + ": " + msg);
    };
    std::vector<std::size_t> id(d.size);
    for (std::size_t x = 0; x < d.size; ++x)
      id[x] = x;
    std::vector<std::size_t> &full = full_[n];
    full.assign(order * d.size, 0);
    for (std::size_t r = 0; r < order; ++r)
      std::copy(id.begin(), id.end(), full.begin() + static_cast<long>(r * d.size));
    if (d.generator_images.size() != gens.size()) {
      defect("expected " + std::to_string(gens.size()) + " generator tables");
      continue;
    }
    bool ok = true;
    for (const auto &img : d.generator_images) {
      std::vector<std::size_t> sorted = img;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != id) {
        defect("generator table is not a bijection of the points");
        ok = false;
      }
    }
    if (!ok)
      continue;
    // Breadth-first over the Cayley graph; every permutation must receive a
    // single consistent action.
    std::vector<bool> known(order, false);
    known[0] = true;
    std::vector<Permutation> frontier{Permutation::identity(n)};
    while (!frontier.empty() && ok) {
      std::vector<Permutation> next;
      for (const auto &p : frontier) {
        std::size_t rp = permutation_rank(p);
        for (std::size_t g = 0; g < gens.size() && ok; ++g) {
          Permutation q = gens[g] * p;
          std::size_t rq = permutation_rank(q);
          std::vector<std::size_t> action(d.size);
          for (std::size_t x = 0; x < d.size; ++x)
            action[x] = d.generator_images[g][full[rp * d.size + x]];
          auto dst = full.begin() + static_cast<long>(rq * d.size);
          if (known[rq]) {
            if (!std::equal(action.begin(), action.end(), dst)) {
              defect("generator tables do not define an action of S_" + std::to_string(n));
              ok = false;
            }
            continue;
          }
          known[rq] = true;
          std::copy(action.begin(), action.end(), dst);
          next.push_back(std::move(q));
        }
      }
      frontier = std::move(next);
    }
  }
}

std::size_t SpeciesTable::act(const Permutation &p, std::size_t x) const {
  unsigned n = p.degree();
  if (n > max_degree())
    throw Error(ErrorCode::BudgetExceeded,
                "table " + name_ + " has no degree " + std::to_string(n));
  return full_[n][permutation_rank(p) * degrees_[n].size + x];
}

Expr::Expr() : Expr(ex::zero()) {}

Kind Expr::kind() const { return node_->kind; }
const Expr &Expr::arg(std::size_t i) const { return node_->args.at(i); }
std::size_t Expr::arity() const { return node_->args.size(); }
unsigned Expr::param() const { return node_->param; }
const std::shared_ptr<const SpeciesTable> &Expr::table() const { return node_->table; }
const Expr &Expr::expansion() const { return node_->expansion.at(0); }

Expr make_expr(Kind k, std::vector<Expr> args, unsigned param,
               std::shared_ptr<const SpeciesTable> table) {
  auto node = std::make_shared<Node>();
  node->kind = k;
  node->args = std::move(args);
  node->param = param;
  node->table = std::move(table);
  if (k == Kind::DeriveL)
    node->expansion.push_back(ex::derive(ex::adj_l(node->args.at(0))));
  return Expr(std::move(node));
}

namespace ex {

namespace {
Expr leaf(Kind k) { return make_expr(k); }
} // namespace

Expr zero() {
  static const Expr e = leaf(Kind::Zero);
  return e;
}
Expr one() { return leaf(Kind::One); }
Expr x() { return leaf(Kind::X); }
Expr rep(unsigned k) { return make_expr(Kind::Rep, {}, k); }
Expr exp() { return leaf(Kind::Exp); }
Expr exp_plus() { return leaf(Kind::ExpPlus); }
Expr lin() { return leaf(Kind::Lin); }
Expr lin_plus() { return leaf(Kind::LinPlus); }
Expr cyc() { return leaf(Kind::Cyc); }
Expr perm() { return leaf(Kind::Perm); }
Expr subsets() { return leaf(Kind::Subsets); }
Expr table(std::shared_ptr<const SpeciesTable> t) {
  return make_expr(Kind::Table, {}, 0, std::move(t));
}
Expr sum(Expr a, Expr b) { return make_expr(Kind::Sum, {std::move(a), std::move(b)}); }
Expr hadamard(Expr a, Expr b) {
  return make_expr(Kind::Hadamard, {std::move(a), std::move(b)});
}
Expr cauchy(Expr a, Expr b) { return make_expr(Kind::Cauchy, {std::move(a), std::move(b)}); }
Expr substitute(Expr outer, Expr inner) {
  return make_expr(Kind::Substitute, {std::move(outer), std::move(inner)});
}
Expr derive(Expr a) { return make_expr(Kind::Derive, {std::move(a)}); }
Expr pointing(Expr a) { return make_expr(Kind::Pointing, {std::move(a)}); }
Expr adj_l(Expr a) { return make_expr(Kind::AdjL, {std::move(a)}); }
Expr adj_r(Expr a) { return make_expr(Kind::AdjR, {std::move(a)}); }
Expr derive_l(Expr a) { return make_expr(Kind::DeriveL, {std::move(a)}); }
Expr trunc_left(Expr a, unsigned n) { return make_expr(Kind::TruncLeft, {std::move(a)}, n); }
Expr trunc_right(Expr a, unsigned n) {
  return make_expr(Kind::TruncRight, {std::move(a)}, n);
}
Expr cauchy_power(const Expr &a, unsigned k) {
  if (k == 0)
    throw Error(ErrorCode::InvalidExpr, "cauchy_power needs at least one factor");
  Expr r = a;
  for (unsigned i = 1; i < k; ++i)
    r = cauchy(r, a);
  return r;
}

} // namespace ex

bool same_tree(const Expr &a, const Expr &b) {
  if (a.same(b))
    return true;
  if (a.kind() != b.kind() || a.param() != b.param() || a.arity() != b.arity() ||
      a.table() != b.table())
    return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!same_tree(a.arg(i), b.arg(i)))
      return false;
  return true;
}

namespace {

// 1: sum, 2: products, 3: substitution, 4: atom
int precedence(Kind k) {
  switch (k) {
  case Kind::Sum: return 1;
  case Kind::Cauchy:
  case Kind::Hadamard: return 2;
  case Kind::Substitute: return 3;
  default: return 4;
  }
}

void render_into(std::ostringstream &os, const Expr &e, int context) {
  bool paren = precedence(e.kind()) < context;
  if (paren)
    os << '(';
  auto unary = [&](const char *name) {
    os << name << '(';
    render_into(os, e.arg(0), 0);
    os << ')';
  };
  switch (e.kind()) {
  case Kind::Zero: os << '0'; break;
  case Kind::One: os << '1'; break;
  case Kind::X: os << 'X'; break;
  case Kind::Rep: os << "Y(" << e.param() << ')'; break;
  case Kind::Exp: os << 'E'; break;
  case Kind::ExpPlus: os << "E+"; break;
  case Kind::Lin: os << 'L'; break;
  case Kind::LinPlus: os << "L+"; break;
  case Kind::Cyc: os << 'C'; break;
  case Kind::Perm: os << 'S'; break;
  case Kind::Subsets: os << 'P'; break;
  case Kind::Table: os << '[' << e.table()->name() << ']'; break;
  case Kind::Sum:
    render_into(os, e.arg(0), 1);
    os << " + ";
    render_into(os, e.arg(1), 2);
    break;
  case Kind::Cauchy:
  case Kind::Hadamard:
    render_into(os, e.arg(0), 2);
    os << (e.kind() == Kind::Cauchy ? " * " : " & ");
    render_into(os, e.arg(1), 3);
    break;
  case Kind::Substitute:
    render_into(os, e.arg(0), 4);
    os << " o ";
    render_into(os, e.arg(1), 3);
    break;
  case Kind::Derive: unary("D"); break;
  case Kind::Pointing: unary("pt"); break;
  case Kind::AdjL: unary("adjL"); break;
  case Kind::AdjR: unary("adjR"); break;
  case Kind::DeriveL: unary("dL"); break;
  case Kind::TruncLeft:
  case Kind::TruncRight:
    os << (e.kind() == Kind::TruncLeft ? "tl(" : "tr(");
    render_into(os, e.arg(0), 0);
    os << ", " << e.param() << ')';
    break;
  }
  if (paren)
    os << ')';
}

void validate_into(const Expr &e, std::vector<Diagnostic> &out) {
  for (std::size_t i = 0; i < e.arity(); ++i)
    validate_into(e.arg(i), out);
  if (e.kind() == Kind::Table) {
    for (const auto &d : e.table()->defects())
      out.push_back({"InvalidExpr", "table " + e.table()->name() + ": " + d});
  }
  if (e.kind() == Kind::Substitute) {
    const Expr &inner = e.arg(1);
    try {
      if (cardinality(inner, 0) != 0)
        out.push_back({"InnerNotPositive", "inner species " + render(inner) +
                                               " is nonempty at degree 0"});
    } catch (const Error &err) {
      out.push_back({error_name(err.code()), err.what()});
    }
  }
}

} // namespace

std::string render(const Expr &e) {
  std::ostringstream os;
  render_into(os, e, 0);
  return os.str();
}

std::vector<Diagnostic> validate(const Expr &e) {
  std::vector<Diagnostic> out;
  validate_into(e, out);
  return out;
}

unsigned degree_budget(const Expr &e, unsigned n) {
  switch (e.kind()) {
  case Kind::Sum:
  case Kind::Hadamard:
  case Kind::Cauchy:
  case Kind::Substitute:
    return std::max(degree_budget(e.arg(0), n), degree_budget(e.arg(1), n));
  case Kind::Derive: return degree_budget(e.arg(0), n + 1);
  case Kind::AdjL:
  case Kind::AdjR: return n == 0 ? 0 : degree_budget(e.arg(0), n - 1);
  case Kind::Pointing:
  case Kind::DeriveL: return degree_budget(e.arg(0), n);
  case Kind::TruncLeft:
  case Kind::TruncRight: return degree_budget(e.arg(0), std::min(n, e.param()));
  default: return n;
  }
}

Tail tail_of(const Expr &e) {
  using S = Tail::Shape;
  switch (e.kind()) {
  case Kind::Zero: return Tail::empty(0);
  case Kind::One: return Tail::empty(1);
  case Kind::X: return Tail::empty(2);
  case Kind::Rep: return Tail::empty(e.param() + 1);
  case Kind::Exp: return Tail::singleton(0);
  case Kind::ExpPlus: return Tail::singleton(1);
  case Kind::TruncLeft: return Tail::empty(e.param() + 1);
  case Kind::TruncRight: return Tail::singleton(e.param() + 1);
  case Kind::Sum: {
    Tail a = tail_of(e.arg(0)), b = tail_of(e.arg(1));
    unsigned m = std::max(a.from, b.from);
    if (a.shape == S::Empty && b.shape == S::Empty)
      return Tail::empty(m);
    if ((a.shape == S::Empty && b.shape == S::Singleton) ||
        (a.shape == S::Singleton && b.shape == S::Empty))
      return Tail::singleton(m);
    return Tail::unknown();
  }
  case Kind::Hadamard: {
    Tail a = tail_of(e.arg(0)), b = tail_of(e.arg(1));
    if (a.shape == S::Empty && b.shape == S::Empty)
      return Tail::empty(std::min(a.from, b.from));
    if (a.shape == S::Empty)
      return a;
    if (b.shape == S::Empty)
      return b;
    if (a.shape == S::Singleton && b.shape == S::Singleton)
      return Tail::singleton(std::max(a.from, b.from));
    return Tail::unknown();
  }
  case Kind::Cauchy: {
    Tail a = tail_of(e.arg(0)), b = tail_of(e.arg(1));
    if (a.shape == S::Empty && a.from == 0)
      return a;
    if (b.shape == S::Empty && b.from == 0)
      return b;
    if (a.shape == S::Empty && b.shape == S::Empty)
      return Tail::empty(a.from + b.from - 1);
    return Tail::unknown();
  }
  case Kind::Derive: {
    Tail a = tail_of(e.arg(0));
    if (a.shape == S::Unknown)
      return a;
    return {a.shape, a.from == 0 ? 0 : a.from - 1};
  }
  case Kind::AdjL: {
    Tail a = tail_of(e.arg(0));
    if (a.shape == S::Empty)
      return Tail::empty(a.from + 1);
    return Tail::unknown();
  }
  case Kind::AdjR: {
    Tail a = tail_of(e.arg(0));
    if (a.shape == S::Unknown)
      return a;
    return {a.shape, a.from + 1};
  }
  case Kind::Pointing:
  case Kind::DeriveL: {
    Tail a = tail_of(e.arg(0));
    if (a.shape == S::Empty)
      return a;
    return Tail::unknown();
  }
  case Kind::Substitute: {
    Tail a = tail_of(e.arg(0)), b = tail_of(e.arg(1));
    if (a.shape == S::Empty && a.from == 0)
      return a;
    if (b.shape == S::Empty && b.from <= 1)
      return Tail::empty(1);
    if (a.shape == S::Empty && b.shape == S::Empty)
      return Tail::empty((a.from - 1) * (b.from - 1) + 1);
    return Tail::unknown();
  }
  default: return Tail::unknown();
  }
}

} // namespace species
