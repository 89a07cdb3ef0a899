#include <doctest.h>

#include "printing.hpp"

#include "oracles.hpp"
#include "species/error.hpp"
#include "species/structure.hpp"
#include "species/symmetry.hpp"

using namespace species;

namespace {

FiniteAction trivial(unsigned n, std::size_t size) {
  return FiniteAction(n, size, [](const Permutation &, std::size_t x) { return x; });
}

// S_n acting on itself by left multiplication.
FiniteAction regular(unsigned n) {
  auto perms = all_permutations(n);
  std::vector<Permutation> sorted = perms;
  std::sort(sorted.begin(), sorted.end());
  return FiniteAction(n, sorted.size(), [sorted](const Permutation &p, std::size_t x) {
    auto q = p * sorted[x];
    return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), q) -
                                    sorted.begin());
  });
}

const FiniteAction &action_of(const Expr &e, unsigned n) { return enumerate(e, n)->action; }

} // namespace

TEST_CASE("all_permutations sizes and order") {
  CHECK(all_permutations(0).size() == 1);
  CHECK(all_permutations(0)[0].degree() == 0);
  CHECK(all_permutations(1).size() == 1);
  auto p4 = all_permutations(4);
  CHECK(p4.size() == 24);
  CHECK(p4.front().is_identity());
  CHECK(std::is_sorted(p4.begin(), p4.end()));
  CHECK(std::adjacent_find(p4.begin(), p4.end()) == p4.end());
  CHECK_THROWS_AS(all_permutations(9), Error);
  CHECK(all_permutations(6, 6).size() == 720);
}

TEST_CASE("permutation algebra") {
  auto a = Permutation::transposition(3, 1, 2);
  auto c = Permutation::long_cycle(3);
  CHECK((a * a).is_identity());
  CHECK((c * c * c).is_identity());
  CHECK((a * c)(1) == a(c(1)));
  CHECK((c * c.inverse()).is_identity());
  CHECK(c.cycle_type() == std::vector<unsigned>{3});
  CHECK(Permutation::from_cycles(5, {{1, 2}, {3, 4, 5}}).cycle_type() ==
        std::vector<unsigned>{3, 2});
  CHECK_THROWS_AS(Permutation(std::vector<int>{1, 1}), Error);
  for (const auto &p : all_permutations(3))
    for (const auto &q : all_permutations(3))
      for (const auto &r : all_permutations(3))
        CHECK((p * q) * r == p * (q * r));
}

TEST_CASE("orbits") {
  CHECK(orbits(trivial(3, 3)).size() == 3);
  auto s2 = regular(2);
  REQUIRE(orbits(s2).size() == 1);
  CHECK(orbits(s2)[0].points.size() == 2);
  auto subsets3 = orbits(action_of(ex::subsets(), 3));
  CHECK(subsets3.size() == 4);
  for (const auto &o : subsets3)
    CHECK(o.representative == o.points.front());
}

TEST_CASE("stabilizers") {
  auto full = stabilizer(trivial(3, 2), 1);
  CHECK(full.order() == 6);
  CHECK(stabilizer(regular(3), 4).order() == 1);

  auto P3 = enumerate(ex::subsets(), 3);
  auto one = P3->index_of(Structure{Tag::Subset, {1}, {}});
  REQUIRE(one);
  auto h = stabilizer(P3->action, *one);
  CHECK(h.order() == 2);
  CHECK(h.contains(Permutation::transposition(3, 2, 3)));
  CHECK_THROWS_AS(stabilizer(P3->action, 100), Error);

  for (const auto &o : orbits(P3->action))
    CHECK(o.points.size() * stabilizer(P3->action, o.representative).order() == 6);
}

TEST_CASE("fixed points") {
  auto P3 = enumerate(ex::subsets(), 3);
  SubgroupElements id{3, {Permutation::identity(3)}};
  CHECK(fixed_points(id, P3->action).size() == 8);
  SubgroupElements all{3, all_permutations(3)};
  std::sort(all.elements.begin(), all.elements.end());
  auto fixed = fixed_points(all, P3->action);
  REQUIRE(fixed.size() == 2);
  CHECK((*P3)[fixed[0]].labels.empty());
  CHECK((*P3)[fixed[1]].labels == std::vector<int>{1, 2, 3});

  auto L2 = enumerate(ex::lin(), 2);
  auto swap = closure(2, std::vector<Permutation>{Permutation::transposition(2, 1, 2)});
  CHECK(fixed_points(swap, L2->action).empty());
  CHECK_THROWS_AS(fixed_points(swap, P3->action), Error);
}

TEST_CASE("closure and generating sets") {
  auto s4 = closure(4, standard_generators(4));
  CHECK(s4.order() == 24);
  auto gens = generating_set(s4);
  CHECK(closure(4, gens).elements == s4.elements);
  CHECK(standard_generators(1).empty());
  CHECK(standard_generators(2).size() == 1);
}

TEST_CASE("counting equivariant maps") {
  auto L2 = action_of(ex::lin(), 2);
  CHECK(count_equivariant_maps(L2, L2) == 2);
  for (unsigned n = 1; n <= 5; ++n)
    CHECK(count_equivariant_maps(action_of(ex::exp(), n), action_of(ex::subsets(), n)) == 2);
  CHECK(count_equivariant_maps(action_of(ex::cyc(), 2), action_of(ex::derive(ex::cyc()), 2)) ==
        0);
  CHECK_THROWS_AS(count_equivariant_maps(L2, action_of(ex::lin(), 3)), Error);
}

TEST_CASE("enumerating equivariant maps") {
  auto E3 = action_of(ex::exp(), 3);
  CHECK(enumerate_equivariant_maps(E3, E3, 10).size() == 1);

  auto L2d = enumerate(ex::lin(), 2);
  auto maps = enumerate_equivariant_maps(L2d->action, L2d->action, 10);
  REQUIRE(maps.size() == 2);
  std::sort(maps.begin(), maps.end());
  CHECK(maps[0] == PointMap{0, 1});
  CHECK(maps[1] == PointMap{1, 0});
  for (const auto &f : maps)
    CHECK(is_equivariant(f, L2d->action, L2d->action));

  CHECK(enumerate_equivariant_maps(action_of(ex::cyc(), 2), L2d->action, 10).empty());
  auto S3 = action_of(ex::subsets(), 3);
  CHECK_THROWS_AS(enumerate_equivariant_maps(S3, S3, 3), Error);
  CHECK(!is_equivariant(PointMap{0, 0}, L2d->action, L2d->action));
}

TEST_CASE("actions_isomorphic") {
  auto P3 = action_of(ex::subsets(), 3);
  CHECK(actions_isomorphic(P3, P3));
  CHECK(actions_isomorphic(P3, action_of(ex::cauchy(ex::exp(), ex::exp()), 3)));
  CHECK(!actions_isomorphic(action_of(ex::cyc(), 3), action_of(ex::lin(), 3)));
  CHECK(!actions_isomorphic(action_of(ex::perm(), 2), action_of(ex::lin(), 2)));
  CHECK(!actions_isomorphic(action_of(ex::perm(), 3), action_of(ex::lin(), 3)));
  CHECK_THROWS_AS(actions_isomorphic(P3, action_of(ex::lin(), 2)), Error);
  CHECK(actions_isomorphic(action_of(ex::cauchy(ex::x(), ex::exp()), 4),
                           action_of(ex::adj_l(ex::exp()), 4)));
}

TEST_CASE("orbit-stabilizer count against brute force") {
  std::vector<Expr> family = {ex::exp(),  ex::x(),   ex::one(),
                              ex::lin(),  ex::cyc(), ex::perm(),
                              ex::subsets(), ex::cauchy(ex::x(), ex::exp()),
                              ex::derive(ex::cyc()), ex::derive(ex::lin()),
                              ex::sum(ex::exp(), ex::exp()), ex::pointing(ex::exp())};
  for (unsigned n = 0; n <= 3; ++n)
    for (const auto &a : family)
      for (const auto &b : family) {
        const auto &src = action_of(a, n);
        const auto &tgt = action_of(b, n);
        if (src.size() > 8 || tgt.size() > 8)
          continue;
        auto fast = count_equivariant_maps(src, tgt);
        CHECK(fast == oracle::equivariant_count_backtrack(src, tgt));
        if (src.size() <= 6 && tgt.size() <= 6)
          CHECK(fast == oracle::equivariant_count_exhaustive(src, tgt));
        CHECK(fast == enumerate_equivariant_maps(src, tgt, 1u << 20).size());
        bool iso = actions_isomorphic(src, tgt);
        CHECK(iso == oracle::equivariant_bijection_exists(src, tgt));
      }
}

TEST_CASE("restriction to a tail") {
  auto P3 = action_of(ex::subsets(), 3);
  auto r = restrict_to_tail(P3, 1);
  CHECK(r.degree() == 2);
  CHECK(r.size() == 8);
  // S_2 moving 2 and 3 fixes {}, {1}, {2,3} and {1,2,3}.
  SubgroupElements s2{2, all_permutations(2)};
  CHECK(fixed_points(s2, r).size() == 4);
  CHECK(restrict_to_tail(P3, 3).degree() == 0);
}

TEST_CASE("subgroup classes of small symmetric groups") {
  const std::vector<std::size_t> classes{1, 1, 2, 4, 11, 19};
  for (unsigned n = 0; n <= 5; ++n) {
    const auto &reps = subgroup_classes(n);
    CHECK(reps.size() == classes[n]);
    CHECK(reps.front().order() == 1);
    CHECK(reps.back().order() == oracle::factorial(n));
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j)
        CHECK(!conjugate_subgroups(reps[i], reps[j]));
  }
  CHECK_THROWS_AS(subgroup_classes(6), Error);
}

TEST_CASE("subgroup restriction helpers") {
  auto h = closure(4, std::vector<Permutation>{Permutation::from_cycles(4, {{1, 3}, {2, 4}})});
  CHECK(point_orbits(h) == std::vector<std::vector<int>>{{1, 3}, {2, 4}});
  auto r = restrict_subgroup(h, {2, 4});
  CHECK(r.degree == 2);
  CHECK(r.order() == 2);
  CHECK(point_stabilizer(h, 1).order() == 1);
  CHECK(extend_subgroup(h).elements.back()(5) == 5);
  CHECK_THROWS_AS(restrict_subgroup(h, {1, 2}), Error);
}
