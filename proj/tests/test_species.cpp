#include <doctest.h>

#include "printing.hpp"

#include "golden.hpp"
#include "species/counting.hpp"
#include "species/error.hpp"
#include "species/structure.hpp"

using namespace species;

TEST_CASE("enumeration examples") {
  CHECK(enumerate(ex::cyc(), 4)->size() == 6);
  for (unsigned n = 0; n <= 4; ++n)
    CHECK(enumerate(ex::zero(), n)->size() == 0);
  auto xx = enumerate(ex::cauchy(ex::x(), ex::x()), 2);
  REQUIRE(xx->size() == 2);
  auto swap = Permutation::transposition(2, 1, 2);
  CHECK(xx->action.act(swap, 0) == 1);
  CHECK(xx->action.act(swap, 1) == 0);
  for (unsigned n = 0; n <= 6; ++n)
    CHECK(enumerate(ex::derive(ex::exp()), n)->size() == 1);
}

TEST_CASE("act relabels and recanonicalizes") {
  Structure cyc{Tag::Cyc, {1, 2, 3}, {}};
  auto swap = Permutation::transposition(3, 1, 2);
  CHECK(act(ex::cyc(), Permutation::identity(3), cyc) == cyc);
  CHECK(act(ex::cyc(), swap, cyc) == Structure{Tag::Cyc, {1, 3, 2}, {}});
  Structure sub{Tag::Subset, {1, 2}, {}};
  CHECK(act(ex::subsets(), Permutation::transposition(3, 1, 3), sub) ==
        Structure{Tag::Subset, {2, 3}, {}});
  CHECK_THROWS_AS(act(ex::cyc(), swap, sub), Error);
  CHECK_THROWS_AS(act(ex::lin(), swap, Structure{Tag::Lin, {1, 2}, {}}), Error);
}

TEST_CASE("cardinality examples") {
  CHECK(cardinality(ex::perm(), 5) == 120);
  CHECK(cardinality(ex::subsets(), 6) == 64);
  CHECK(cardinality(ex::substitute(ex::exp(), ex::cyc()), 4) == 24);
}

TEST_CASE("validate") {
  CHECK(validate(ex::substitute(ex::exp(), ex::cyc())).empty());
  auto bad = validate(ex::substitute(ex::exp(), ex::exp()));
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].code == "InnerNotPositive");
  CHECK(validate(ex::derive(ex::lin())).empty());
  CHECK_THROWS_AS(enumerate(ex::substitute(ex::exp(), ex::exp()), 2), Error);
}

TEST_CASE("degree budget") {
  CHECK(degree_budget(ex::derive(ex::derive(ex::exp())), 3) == 5);
  CHECK(degree_budget(ex::lin(), 4) == 4);
  CHECK(degree_budget(ex::adj_r(ex::lin()), 0) == 0);
  CHECK(degree_budget(ex::adj_l(ex::derive(ex::lin())), 3) == 3);
}

namespace {

// Subsets as a custom table up to degree 3, points in bitmask order.
std::shared_ptr<const SpeciesTable> subsets_table(unsigned max) {
  std::vector<TableDegree> degrees;
  for (unsigned n = 0; n <= max; ++n) {
    TableDegree d;
    d.size = std::size_t{1} << n;
    for (const auto &g : standard_generators(n)) {
      std::vector<std::size_t> img(d.size);
      for (std::size_t mask = 0; mask < d.size; ++mask) {
        std::size_t out = 0;
        for (unsigned i = 0; i < n; ++i)
          if (mask >> i & 1)
            out |= std::size_t{1} << (g(static_cast<int>(i) + 1) - 1);
        img[mask] = out;
      }
      d.generator_images.push_back(img);
    }
    degrees.push_back(d);
  }
  return std::make_shared<SpeciesTable>("subsets", degrees);
}

} // namespace

TEST_CASE("table primitive") {
  auto t = ex::table(subsets_table(3));
  CHECK(validate(t).empty());
  CHECK(count_seq(t, 3) == CountSeq::of({1, 2, 4, 8}));
  CHECK_THROWS_AS(count_seq(t, 4), Error);
  for (unsigned n = 0; n <= 3; ++n)
    CHECK(actions_isomorphic(enumerate(t, n)->action, enumerate(ex::subsets(), n)->action));
  CHECK(degree_budget(ex::derive_l(t), 3) == 3);
  CHECK(count_seq(ex::derive_l(t), 3) == seq_sum(count_seq(t, 3), count_seq(ex::pointing(t), 3)));
  CHECK(cardinality(ex::derive(t), 2) == 8);
  auto dt = enumerate(ex::derive(t), 2);
  CHECK(actions_isomorphic(dt->action, enumerate(ex::derive(ex::subsets()), 2)->action));

  TableDegree broken;
  broken.size = 2;
  broken.generator_images = {{0, 0}};
  auto bad = std::make_shared<SpeciesTable>(
      "broken", std::vector<TableDegree>{TableDegree{1, {}}, TableDegree{1, {}}, broken});
  CHECK(!validate(ex::table(bad)).empty());

  // A transposition table that is not an action: (1 2) of order 3.
  TableDegree wrong;
  wrong.size = 3;
  wrong.generator_images = {{1, 2, 0}};
  auto bad2 = std::make_shared<SpeciesTable>(
      "wrong", std::vector<TableDegree>{TableDegree{1, {}}, TableDegree{1, {}}, wrong});
  CHECK(!validate(ex::table(bad2)).empty());
}

TEST_CASE("golden expressions: enumeration matches counting") {
  for (const auto &[name, e] : golden::expressions()) {
    CAPTURE(name);
    auto counts = count_seq(e, 5);
    for (unsigned n = 0; n <= 5; ++n) {
      CAPTURE(n);
      auto d = enumerate(e, n);
      CHECK(Natural(static_cast<unsigned long>(d->size())) == counts[n]);
      CHECK(std::is_sorted(d->structures->begin(), d->structures->end()));
      CHECK(std::adjacent_find(d->structures->begin(), d->structures->end()) ==
            d->structures->end());
    }
  }
}

TEST_CASE("golden expressions: action laws") {
  for (const auto &[name, e] : golden::expressions()) {
    CAPTURE(name);
    for (unsigned n = 0; n <= 4; ++n) {
      auto d = enumerate(e, n);
      if (d->size() > 2000)
        continue;
      auto perms = all_permutations(n);
      for (std::size_t i = 0; i < d->size(); ++i) {
        CHECK(d->action.act(Permutation::identity(n), i) == i);
        for (const auto &p : perms) {
          // canonical(canonical(s)) = canonical(s)
          Structure t = transport(e, (*d)[i], LabelMap::of(p));
          CHECK(transport(e, t, LabelMap::of(Permutation::identity(n))) == t);
        }
        for (const auto &g : d->action.generators())
          for (const auto &h : d->action.generators())
            CHECK(d->action.act(g * h, i) == d->action.act(g, d->action.act(h, i)));
      }
    }
  }
}

TEST_CASE("derivative of lin-like species") {
  // orders of {*, 1, 2}; S_2 acts freely
  auto d = enumerate(ex::derive(ex::lin()), 2);
  CHECK(d->size() == 6);
  CHECK(orbits(d->action).size() == 3);
}

TEST_CASE("DeriveL decomposes as F + pointing F") {
  for (const auto &f : {ex::exp(), ex::lin(), ex::cyc(), ex::subsets(), ex::x()})
    for (unsigned n = 0; n <= 4; ++n)
      CHECK(actions_isomorphic(enumerate(ex::derive_l(f), n)->action,
                               enumerate(ex::sum(f, ex::pointing(f)), n)->action));
}

TEST_CASE("derivative of R: counts") {
  for (const auto &f : {ex::exp(), ex::lin(), ex::cyc(), ex::subsets(), ex::x()})
    for (unsigned n = 0; n <= 5; ++n)
      CHECK(cardinality(ex::derive(ex::adj_r(f)), n) ==
            cardinality(ex::adj_r(ex::derive(f)), n) * cardinality(f, n));
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(enumerate(ex::lin(), 8, 1000), Error);
  try {
    enumerate(ex::perm(), 7, 100);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::EnumerationTooLarge);
  }
}

TEST_CASE("structure text") {
  auto d = enumerate(ex::substitute(ex::exp(), ex::cyc()), 3);
  bool found = false;
  for (const auto &s : *d->structures)
    if (to_string(s) == "part[{1,2}{3}]({1,2}; (1 2), (3))")
      found = true;
  CHECK(found);
  CHECK(to_string(enumerate(ex::derive(ex::lin()), 1)->structures->front()) == "d* [* 1]");
}
