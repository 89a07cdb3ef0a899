#include "species/structure.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

#include "species/counting.hpp"
#include "species/error.hpp"

namespace species {

const char *tag_name(Tag t) {
  switch (t) {
  case Tag::Set: return "Set";
  case Tag::Subset: return "Subset";
  case Tag::Lin: return "Lin";
  case Tag::Cyc: return "Cyc";
  case Tag::Perm: return "Perm";
  case Tag::Rep: return "Rep";
  case Tag::Pair: return "Pair";
  case Tag::Both: return "Both";
  case Tag::Inl: return "Inl";
  case Tag::Inr: return "Inr";
  case Tag::Deriv: return "Deriv";
  case Tag::Point: return "Point";
  case Tag::Tuple: return "Tuple";
  case Tag::Part: return "Part";
  case Tag::Table: return "Table";
  case Tag::Star: return "Star";
  }
  return "?";
}

bool operator==(const Structure &a, const Structure &b) {
  return a.tag == b.tag && a.labels == b.labels && a.children == b.children;
}

std::strong_ordering operator<=>(const Structure &a, const Structure &b) {
  if (auto c = a.tag <=> b.tag; c != 0)
    return c;
  if (auto c = a.labels <=> b.labels; c != 0)
    return c;
  return std::lexicographical_compare_three_way(a.children.begin(), a.children.end(),
                                                b.children.begin(), b.children.end());
}

namespace {

std::string label_str(int x) {
  if (x > 0)
    return std::to_string(x);
  return x == 0 ? "*" : "*" + std::to_string(1 - x);
}

std::string join(const std::vector<int> &v, std::size_t from, std::size_t to,
                 const char *sep) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from)
      out += sep;
    out += label_str(v[i]);
  }
  return out;
}

} // namespace

std::string to_string(const Structure &s) {
  const auto &L = s.labels;
  auto all = [&](const char *sep) { return join(L, 0, L.size(), sep); };
  switch (s.tag) {
  case Tag::Set: return "{" + all(",") + "}";
  case Tag::Subset: return "sub{" + all(",") + "}";
  case Tag::Lin: return "[" + all(" ") + "]";
  case Tag::Cyc: return "(" + all(" ") + ")";
  case Tag::Perm: {
    std::string out = "perm[";
    for (std::size_t i = 0; i + 1 < L.size(); i += 2)
      out += (i ? " " : "") + label_str(L[i]) + ">" + label_str(L[i + 1]);
    return out + "]";
  }
  case Tag::Rep: return "rep[" + all(" ") + "]";
  case Tag::Pair:
    return "({" + all(",") + "}: " + to_string(s.children[0]) + " | " +
           to_string(s.children[1]) + ")";
  case Tag::Both: return "<" + to_string(s.children[0]) + " & " + to_string(s.children[1]) + ">";
  case Tag::Inl: return "inl " + to_string(s.children[0]);
  case Tag::Inr: return "inr " + to_string(s.children[0]);
  case Tag::Deriv: return "d" + label_str(L[0]) + " " + to_string(s.children[0]);
  case Tag::Point: return "@" + label_str(L[0]) + " " + to_string(s.children[0]);
  case Tag::Tuple: {
    std::string out = "tuple{";
    for (std::size_t i = 0; i < L.size(); ++i)
      out += (i ? ", " : "") + label_str(L[i]) + ": " + to_string(s.children[i]);
    return out + "}";
  }
  case Tag::Part: {
    std::size_t k = s.children.size() - 1;
    std::string out = "part[";
    std::size_t pos = k;
    for (std::size_t b = 0; b < k; ++b) {
      std::size_t size = static_cast<std::size_t>(L[b]);
      out += "{" + join(L, pos, pos + size, ",") + "}";
      pos += size;
    }
    out += "](" + to_string(s.children[0]);
    for (std::size_t b = 1; b <= k; ++b)
      out += (b == 1 ? "; " : ", ") + to_string(s.children[b]);
    return out + ")";
  }
  case Tag::Table: return "#" + std::to_string(L[0]) + "{" + join(L, 1, L.size(), ",") + "}";
  case Tag::Star: return "top{" + all(",") + "}";
  }
  return "?";
}

LabelMap LabelMap::of(const Permutation &p) {
  LabelMap m;
  m.lo = 1;
  m.img.assign(p.images().begin(), p.images().end());
  return m;
}

LabelMap LabelMap::standardize(const std::vector<int> &V, int floor) {
  LabelMap m;
  m.lo = floor;
  m.shift = 1 - floor;
  if (!V.empty()) {
    m.img.resize(static_cast<std::size_t>(V.back() - floor + 1));
    for (std::size_t i = 0; i < m.img.size(); ++i)
      m.img[i] = floor + static_cast<int>(i);
    for (std::size_t r = 0; r < V.size(); ++r)
      m.img[static_cast<std::size_t>(V[r] - floor)] = static_cast<int>(r) + 1;
  }
  return m;
}

LabelMap LabelMap::unstandardize(const std::vector<int> &V, int floor) {
  LabelMap m;
  m.lo = 1;
  m.shift = floor - 1;
  m.img = V;
  return m;
}

namespace {

std::vector<int> without(const std::vector<int> &L, int a) {
  std::vector<int> out;
  out.reserve(L.size());
  for (int x : L)
    if (x != a)
      out.push_back(x);
  return out;
}

std::vector<int> with(const std::vector<int> &L, int a) {
  std::vector<int> out = L;
  out.insert(std::lower_bound(out.begin(), out.end(), a), a);
  return out;
}

void rotate_to_min(std::vector<int> &cycle) {
  if (!cycle.empty())
    std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
}

// Blocks of a set partition, in order of least element.
void for_each_partition(const std::vector<int> &L,
                        const std::function<void(const std::vector<std::vector<int>> &)> &fn) {
  std::vector<std::vector<int>> blocks;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == L.size()) {
      fn(blocks);
      return;
    }
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      blocks[b].push_back(L[i]);
      rec(i + 1);
      blocks[b].pop_back();
    }
    blocks.push_back({L[i]});
    rec(i + 1);
    blocks.pop_back();
  };
  rec(0);
}

Structure leaf(Tag t, std::vector<int> labels) { return Structure{t, std::move(labels), {}}; }

std::vector<Structure> enumerate_rec(const Expr &e, const std::vector<int> &L, int c) {
  std::vector<Structure> out;
  std::size_t m = L.size();
  switch (e.kind()) {
  case Kind::Zero: break;
  case Kind::One:
    if (m == 0)
      out.push_back(leaf(Tag::Set, {}));
    break;
  case Kind::X:
    if (m == 1)
      out.push_back(leaf(Tag::Set, L));
    break;
  case Kind::Exp: out.push_back(leaf(Tag::Set, L)); break;
  case Kind::ExpPlus:
    if (m > 0)
      out.push_back(leaf(Tag::Set, L));
    break;
  case Kind::Rep:
  case Kind::Lin:
  case Kind::LinPlus: {
    if (e.kind() == Kind::Rep && m != e.param())
      break;
    if (e.kind() == Kind::LinPlus && m == 0)
      break;
    Tag t = e.kind() == Kind::Rep ? Tag::Rep : Tag::Lin;
    std::vector<int> order = L;
    do
      out.push_back(leaf(t, order));
    while (std::next_permutation(order.begin(), order.end()));
    break;
  }
  case Kind::Cyc: {
    if (m == 0)
      break;
    std::vector<int> rest(L.begin() + 1, L.end());
    do {
      std::vector<int> cycle{L[0]};
      cycle.insert(cycle.end(), rest.begin(), rest.end());
      out.push_back(leaf(Tag::Cyc, std::move(cycle)));
    } while (std::next_permutation(rest.begin(), rest.end()));
    break;
  }
  case Kind::Perm: {
    std::vector<int> img = L;
    do {
      std::vector<int> pairs;
      for (std::size_t i = 0; i < m; ++i) {
        pairs.push_back(L[i]);
        pairs.push_back(img[i]);
      }
      out.push_back(leaf(Tag::Perm, std::move(pairs)));
    } while (std::next_permutation(img.begin(), img.end()));
    break;
  }
  case Kind::Subsets:
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      std::vector<int> U;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1)
          U.push_back(L[i]);
      out.push_back(leaf(Tag::Subset, std::move(U)));
    }
    break;
  case Kind::Table: {
    const auto &t = *e.table();
    if (m > t.max_degree())
      throw Error(ErrorCode::BudgetExceeded,
                  "table " + t.name() + " has no degree " + std::to_string(m));
    for (std::size_t i = 0; i < t.size(static_cast<unsigned>(m)); ++i) {
      std::vector<int> labels{static_cast<int>(i)};
      labels.insert(labels.end(), L.begin(), L.end());
      out.push_back(leaf(Tag::Table, std::move(labels)));
    }
    break;
  }
  case Kind::Sum:
    for (auto &s : enumerate_rec(e.arg(0), L, c))
      out.push_back(Structure{Tag::Inl, {}, {std::move(s)}});
    for (auto &s : enumerate_rec(e.arg(1), L, c))
      out.push_back(Structure{Tag::Inr, {}, {std::move(s)}});
    break;
  case Kind::Hadamard: {
    auto a = enumerate_rec(e.arg(0), L, c);
    if (a.empty())
      break;
    auto b = enumerate_rec(e.arg(1), L, c);
    for (const auto &sa : a)
      for (const auto &sb : b)
        out.push_back(Structure{Tag::Both, {}, {sa, sb}});
    break;
  }
  case Kind::Cauchy:
    for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
      std::vector<int> U, V;
      for (std::size_t i = 0; i < m; ++i)
        (mask >> i & 1 ? U : V).push_back(L[i]);
      auto a = enumerate_rec(e.arg(0), U, c);
      if (a.empty())
        continue;
      auto b = enumerate_rec(e.arg(1), V, c);
      for (const auto &sa : a)
        for (const auto &sb : b)
          out.push_back(Structure{Tag::Pair, U, {sa, sb}});
    }
    break;
  case Kind::Substitute:
    for_each_partition(L, [&](const std::vector<std::vector<int>> &blocks) {
      std::size_t k = blocks.size();
      std::vector<int> ranks(k);
      std::iota(ranks.begin(), ranks.end(), 1);
      auto outer = enumerate_rec(e.arg(0), ranks, 1);
      if (outer.empty())
        return;
      std::vector<std::vector<Structure>> inner;
      for (const auto &b : blocks) {
        inner.push_back(enumerate_rec(e.arg(1), b, c));
        if (inner.back().empty())
          return;
      }
      std::vector<int> labels;
      for (const auto &b : blocks)
        labels.push_back(static_cast<int>(b.size()));
      for (const auto &b : blocks)
        labels.insert(labels.end(), b.begin(), b.end());
      std::vector<std::size_t> odo(k, 0);
      for (const auto &o : outer) {
        std::fill(odo.begin(), odo.end(), 0);
        while (true) {
          Structure s{Tag::Part, labels, {o}};
          for (std::size_t i = 0; i < k; ++i)
            s.children.push_back(inner[i][odo[i]]);
          out.push_back(std::move(s));
          std::size_t i = 0;
          for (; i < k; ++i) {
            if (++odo[i] < inner[i].size())
              break;
            odo[i] = 0;
          }
          if (i == k)
            break;
        }
      }
    });
    break;
  case Kind::Derive:
    for (auto &s : enumerate_rec(e.arg(0), with(L, c - 1), c - 1))
      out.push_back(Structure{Tag::Deriv, {c - 1}, {std::move(s)}});
    break;
  case Kind::AdjL:
  case Kind::Pointing:
    for (int a : L) {
      bool pointing = e.kind() == Kind::Pointing;
      std::vector<int> rest = without(L, a);
      auto inner = pointing ? enumerate_rec(e.arg(0), with(rest, c - 1), c - 1)
                            : enumerate_rec(e.arg(0), rest, c);
      for (auto &s : inner)
        out.push_back(Structure{Tag::Point, {a}, {std::move(s)}});
    }
    break;
  case Kind::AdjR: {
    std::vector<std::vector<Structure>> choices;
    for (int a : L) {
      choices.push_back(enumerate_rec(e.arg(0), without(L, a), c));
      if (choices.back().empty())
        return out;
    }
    std::vector<std::size_t> odo(m, 0);
    while (true) {
      Structure s{Tag::Tuple, L, {}};
      for (std::size_t i = 0; i < m; ++i)
        s.children.push_back(choices[i][odo[i]]);
      out.push_back(std::move(s));
      std::size_t i = 0;
      for (; i < m; ++i) {
        if (++odo[i] < choices[i].size())
          break;
        odo[i] = 0;
      }
      if (i == m)
        break;
    }
    break;
  }
  case Kind::DeriveL: return enumerate_rec(e.expansion(), L, c);
  case Kind::TruncLeft:
    if (m <= e.param())
      return enumerate_rec(e.arg(0), L, c);
    break;
  case Kind::TruncRight:
    if (m <= e.param())
      return enumerate_rec(e.arg(0), L, c);
    out.push_back(leaf(Tag::Star, L));
    break;
  }
  return out;
}

std::vector<int> mapped(const std::vector<int> &v, const LabelMap &m) {
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = m(v[i]);
  return out;
}

std::vector<int> mapped_sorted(const std::vector<int> &v, const LabelMap &m) {
  std::vector<int> out = mapped(v, m);
  std::sort(out.begin(), out.end());
  return out;
}

void expect(bool ok, const Expr &e) {
  if (!ok)
    throw Error(ErrorCode::StructureNotOfExpr, "structure does not belong to " + render(e));
}

} // namespace

std::vector<Structure> enumerate_on(const Expr &e, const std::vector<int> &L, int floor) {
  return enumerate_rec(e, L, floor);
}

Structure transport(const Expr &e, const Structure &s, const LabelMap &m) {
  auto child = [&](std::size_t i) -> const Structure & {
    expect(i < s.children.size(), e);
    return s.children[i];
  };
  switch (e.kind()) {
  case Kind::Zero: expect(false, e); break;
  case Kind::One:
  case Kind::X:
  case Kind::Exp:
  case Kind::ExpPlus:
  case Kind::Subsets:
    expect(s.tag == (e.kind() == Kind::Subsets ? Tag::Subset : Tag::Set), e);
    return leaf(s.tag, mapped_sorted(s.labels, m));
  case Kind::Rep:
  case Kind::Lin:
  case Kind::LinPlus:
    expect(s.tag == (e.kind() == Kind::Rep ? Tag::Rep : Tag::Lin), e);
    return leaf(s.tag, mapped(s.labels, m));
  case Kind::Cyc: {
    expect(s.tag == Tag::Cyc, e);
    auto cycle = mapped(s.labels, m);
    rotate_to_min(cycle);
    return leaf(Tag::Cyc, std::move(cycle));
  }
  case Kind::Perm: {
    expect(s.tag == Tag::Perm && s.labels.size() % 2 == 0, e);
    std::vector<std::pair<int, int>> pairs;
    for (std::size_t i = 0; i < s.labels.size(); i += 2)
      pairs.emplace_back(m(s.labels[i]), m(s.labels[i + 1]));
    std::sort(pairs.begin(), pairs.end());
    std::vector<int> labels;
    for (auto [x, y] : pairs) {
      labels.push_back(x);
      labels.push_back(y);
    }
    return leaf(Tag::Perm, std::move(labels));
  }
  case Kind::Table: {
    expect(s.tag == Tag::Table && !s.labels.empty(), e);
    std::vector<int> U(s.labels.begin() + 1, s.labels.end());
    std::vector<int> V = mapped_sorted(U, m);
    std::vector<int> pi(U.size());
    for (std::size_t i = 0; i < U.size(); ++i)
      pi[i] = static_cast<int>(std::lower_bound(V.begin(), V.end(), m(U[i])) - V.begin()) + 1;
    std::size_t idx = e.table()->act(Permutation(pi), static_cast<std::size_t>(s.labels[0]));
    std::vector<int> labels{static_cast<int>(idx)};
    labels.insert(labels.end(), V.begin(), V.end());
    return leaf(Tag::Table, std::move(labels));
  }
  case Kind::Sum:
    expect(s.tag == Tag::Inl || s.tag == Tag::Inr, e);
    return Structure{s.tag, {}, {transport(e.arg(s.tag == Tag::Inl ? 0 : 1), child(0), m)}};
  case Kind::Hadamard:
    expect(s.tag == Tag::Both, e);
    return Structure{Tag::Both, {},
                     {transport(e.arg(0), child(0), m), transport(e.arg(1), child(1), m)}};
  case Kind::Cauchy:
    expect(s.tag == Tag::Pair, e);
    return Structure{Tag::Pair, mapped_sorted(s.labels, m),
                     {transport(e.arg(0), child(0), m), transport(e.arg(1), child(1), m)}};
  case Kind::Derive:
    expect(s.tag == Tag::Deriv && s.labels.size() == 1, e);
    return Structure{Tag::Deriv, mapped(s.labels, m), {transport(e.arg(0), child(0), m)}};
  case Kind::AdjL:
  case Kind::Pointing:
    expect(s.tag == Tag::Point && s.labels.size() == 1, e);
    return Structure{Tag::Point, mapped(s.labels, m), {transport(e.arg(0), child(0), m)}};
  case Kind::AdjR: {
    expect(s.tag == Tag::Tuple && s.children.size() == s.labels.size(), e);
    std::vector<std::pair<int, Structure>> entries;
    for (std::size_t i = 0; i < s.labels.size(); ++i)
      entries.emplace_back(m(s.labels[i]), transport(e.arg(0), s.children[i], m));
    std::sort(entries.begin(), entries.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    Structure r{Tag::Tuple, {}, {}};
    for (auto &[a, c] : entries) {
      r.labels.push_back(a);
      r.children.push_back(std::move(c));
    }
    return r;
  }
  case Kind::Substitute: {
    expect(s.tag == Tag::Part && !s.children.empty(), e);
    std::size_t k = s.children.size() - 1;
    expect(s.labels.size() >= k, e);
    struct Block {
      std::vector<int> labels;
      std::size_t old_index;
      Structure inner;
    };
    std::vector<Block> blocks;
    std::size_t pos = k;
    for (std::size_t b = 0; b < k; ++b) {
      auto size = static_cast<std::size_t>(s.labels[b]);
      expect(pos + size <= s.labels.size(), e);
      std::vector<int> bl(s.labels.begin() + static_cast<long>(pos),
                          s.labels.begin() + static_cast<long>(pos + size));
      pos += size;
      blocks.push_back({mapped_sorted(bl, m), b, transport(e.arg(1), s.children[b + 1], m)});
    }
    std::sort(blocks.begin(), blocks.end(),
              [](const Block &x, const Block &y) { return x.labels < y.labels; });
    LabelMap outer_map;
    outer_map.img.resize(k);
    for (std::size_t nb = 0; nb < k; ++nb)
      outer_map.img[blocks[nb].old_index] = static_cast<int>(nb) + 1;
    Structure r{Tag::Part, {}, {transport(e.arg(0), child(0), outer_map)}};
    for (const auto &b : blocks)
      r.labels.push_back(static_cast<int>(b.labels.size()));
    for (auto &b : blocks) {
      r.labels.insert(r.labels.end(), b.labels.begin(), b.labels.end());
      r.children.push_back(std::move(b.inner));
    }
    return r;
  }
  case Kind::DeriveL: return transport(e.expansion(), s, m);
  case Kind::TruncLeft: return transport(e.arg(0), s, m);
  case Kind::TruncRight:
    if (s.tag == Tag::Star)
      return leaf(Tag::Star, mapped_sorted(s.labels, m));
    return transport(e.arg(0), s, m);
  }
  expect(false, e);
  return s;
}

std::optional<std::size_t> DegreeData::index_of(const Structure &s) const {
  auto it = std::lower_bound(structures->begin(), structures->end(), s);
  if (it == structures->end() || !(*it == s))
    return std::nullopt;
  return static_cast<std::size_t>(it - structures->begin());
}

FiniteAction structure_action(const Expr &e, unsigned n,
                              std::shared_ptr<const std::vector<Structure>> structures) {
  auto act_fn = [e, structures](const Permutation &p, std::size_t i) -> std::size_t {
    Structure t = transport(e, (*structures)[i], LabelMap::of(p));
    auto it = std::lower_bound(structures->begin(), structures->end(), t);
    if (it == structures->end() || !(*it == t))
      throw Error(ErrorCode::StructureNotOfExpr,
                  "relabelled structure " + to_string(t) + " left " + render(e));
    return static_cast<std::size_t>(it - structures->begin());
  };
  return FiniteAction(n, structures->size(), act_fn);
}

namespace {

struct CacheKey {
  const Node *node;
  unsigned degree;
  auto operator<=>(const CacheKey &) const = default;
};

struct Cache {
  std::mutex mutex;
  std::map<CacheKey, std::pair<Expr, std::shared_ptr<const DegreeData>>> entries;
};

Cache &cache() {
  static Cache c;
  return c;
}

} // namespace

std::shared_ptr<const DegreeData> enumerate(const Expr &e, unsigned n, std::size_t cap) {
  {
    std::lock_guard lock(cache().mutex);
    auto it = cache().entries.find({e.node(), n});
    if (it != cache().entries.end())
      return it->second.second;
  }
  for (const auto &d : validate(e))
    throw Error(d.code == "InnerNotPositive" ? ErrorCode::InnerNotPositive : ErrorCode::InvalidExpr,
                d.message);
  Natural expected = cardinality(e, n);
  if (expected > Natural(static_cast<unsigned long>(cap)))
    throw Error(ErrorCode::EnumerationTooLarge,
                render(e) + " has " + expected.get_str() + " structures at degree " +
                    std::to_string(n) + ", above the cap " + std::to_string(cap));
  std::vector<int> L(n);
  std::iota(L.begin(), L.end(), 1);
  auto list = enumerate_rec(e, L, 1);
  std::sort(list.begin(), list.end());
  if (Natural(static_cast<unsigned long>(list.size())) != expected)
    throw Error(ErrorCode::InvalidExpr, "enumeration of " + render(e) + " disagrees with its count");
  auto structures = std::make_shared<const std::vector<Structure>>(std::move(list));
  auto data = std::make_shared<DegreeData>(
      DegreeData{e, n, structures, structure_action(e, n, structures)});
  std::lock_guard lock(cache().mutex);
  auto [it, inserted] = cache().entries.emplace(CacheKey{e.node(), n}, std::make_pair(e, data));
  return it->second.second;
}

Structure act(const Expr &e, const Permutation &p, const Structure &s) {
  auto data = enumerate(e, p.degree());
  if (!data->index_of(s))
    throw Error(ErrorCode::StructureNotOfExpr,
                to_string(s) + " is not a structure of " + render(e) + " at degree " +
                    std::to_string(p.degree()));
  return transport(e, s, LabelMap::of(p));
}

} // namespace species
