#include <doctest.h>

#include "printing.hpp"

#include <numeric>

#include "species/automata.hpp"
#include "species/error.hpp"

using namespace species;

namespace {

std::vector<int> range1(unsigned k) {
  std::vector<int> v(k);
  std::iota(v.begin(), v.end(), 1);
  return v;
}

NatTrans to_set(const Expr &src, unsigned N) {
  return nat_from_function(src, ex::exp(), N, [](unsigned k, const Structure &) {
    return Structure{Tag::Set, range1(k), {}};
  });
}

NatTrans unique_into(const Expr &src, const Expr &tgt, unsigned N) {
  return nat_from_function(src, tgt, N, [tgt](unsigned k, const Structure &) {
    return (*enumerate(tgt, k))[0];
  });
}

MealyAutomaton exp_automaton(const Dynamics &t, unsigned N) {
  Expr e = ex::exp();
  Expr fe = apply_dynamics(t, e);
  return {t, e, e, to_set(fe, N), to_set(fe, N), N};
}

// B = subsets up to degree 2, a single point above
Expr small_output() { return ex::trunc_right(ex::subsets(), 2); }

// The terminal AdjL automaton with output B at horizon 2: states are pairs
// (t1, t2) with t_n in D^n B, higher factors being singletons.
MealyAutomaton terminal_adjl(const Expr &B) {
  Expr T = ex::hadamard(ex::derive(B), ex::derive(ex::derive(B)));
  Expr fT = ex::adj_l(T);
  auto send_star = [](unsigned k, int a, int shift) {
    std::vector<int> img{a};
    for (int x = 1; x <= static_cast<int>(k); ++x)
      img.push_back(x);
    return LabelMap{0, img, shift};
  };
  auto s = nat_from_function(fT, B, 2, [&](unsigned k, const Structure &x) {
    int a = x.labels[0];
    const Structure &t1 = x.children[0].children[0];
    return transport(B, t1.children[0], send_star(k, a, 0));
  });
  auto d = nat_from_function(fT, T, 2, [&](unsigned k, const Structure &x) {
    int a = x.labels[0];
    const Structure &t2 = x.children[0].children[1];
    Structure head{Tag::Deriv, {0}, {transport(B, t2.children[0].children[0], send_star(k, a, 1))}};
    return Structure{Tag::Both, {}, {head, (*enumerate(ex::derive(ex::derive(B)), k))[0]}};
  });
  return {Dynamics::adj_l(), T, B, d, s, 2};
}

// E = Exp; the output picks the point chosen by L.
MealyAutomaton exp_pointer(const Expr &B) {
  Expr e = ex::exp();
  Expr fe = ex::adj_l(e);
  auto s = nat_from_function(fe, B, 2, [](unsigned, const Structure &x) {
    return Structure{Tag::Subset, {x.labels[0]}, {}};
  });
  return {Dynamics::adj_l(), e, B, to_set(fe, 2), s, 2};
}

// E = Lin; d appends the chosen point, s outputs the set of the first element.
MealyAutomaton lin_appender(const Expr &B) {
  Expr l = ex::lin();
  Expr fl = ex::adj_l(l);
  auto d = nat_from_function(fl, l, 2, [](unsigned, const Structure &x) {
    auto o = x.children[0].labels;
    o.push_back(x.labels[0]);
    return Structure{Tag::Lin, o, {}};
  });
  auto s = nat_from_function(fl, B, 2, [](unsigned, const Structure &x) {
    const auto &o = x.children[0].labels;
    return Structure{Tag::Subset, {o.empty() ? x.labels[0] : o.front()}, {}};
  });
  return {Dynamics::adj_l(), l, B, d, s, 2};
}

} // namespace

TEST_CASE("apply_dynamics") {
  Expr e = apply_dynamics(Dynamics::derive(), ex::exp());
  CHECK(e.kind() == Kind::Derive);
  CHECK(iso_check(e, ex::exp(), 5).isomorphic);
  for (const auto &f : {ex::lin(), ex::cyc(), ex::subsets()}) {
    auto c = count_seq(apply_dynamics(Dynamics::adj_l(), f), 5);
    auto base = count_seq(f, 5);
    for (unsigned n = 1; n <= 5; ++n)
      CHECK(c[n] == n * base[n - 1]);
  }
  CHECK(count_seq(apply_dynamics(Dynamics::pointing(), ex::lin()), 3) ==
        CountSeq::of({0, 1, 4, 18}));
  CHECK(apply_dynamics(Dynamics::tensor_by(ex::x()), ex::lin()).kind() == Kind::Cauchy);
  CHECK(apply_dynamics(Dynamics::derive_l(), ex::lin()).kind() == Kind::DeriveL);
}

TEST_CASE("check_mealy and check_moore") {
  CHECK(check_mealy(exp_automaton(Dynamics::derive(), 3)).ok);
  for (const auto &t : {Dynamics::adj_l(), Dynamics::pointing(), Dynamics::derive_l(),
                        Dynamics::tensor_by(ex::x())})
    CHECK(check_mealy(exp_automaton(t, 3)).ok);

  // output Lin[2] constant on a free orbit: not equivariant at degree 2
  Expr fe = ex::derive(ex::lin());
  auto bad_s = nat_from_function(fe, ex::lin(), 2, [](unsigned k, const Structure &) {
    return Structure{Tag::Lin, range1(k), {}};
  });
  auto d = nat_from_function(fe, ex::lin(), 2, [](unsigned, const Structure &x) {
    std::vector<int> o;
    for (int v : x.children[0].labels)
      if (v != 0)
        o.push_back(v);
    return Structure{Tag::Lin, o, {}};
  });
  MealyAutomaton m{Dynamics::derive(), ex::lin(), ex::lin(), d, bad_s, 2};
  auto r = check_mealy(m);
  CHECK(!r.ok);
  CHECK(r.degree == 2u);
  REQUIRE(!r.diagnostics.empty());
  CHECK(r.diagnostics[0].code == "NotEquivariant");

  MealyAutomaton wrong = m;
  wrong.B = ex::cyc();
  CHECK(check_mealy(wrong).diagnostics.front().code == "ShapeMismatch");

  Expr e = ex::exp();
  MooreAutomaton moore{Dynamics::derive(), e, e, to_set(ex::derive(e), 3), identity_nat(e, 3), 3};
  CHECK(check_moore(moore).ok);
}

TEST_CASE("identity morphisms") {
  for (const auto &t : {Dynamics::derive(), Dynamics::adj_l(), Dynamics::pointing(),
                        Dynamics::derive_l(), Dynamics::tensor_by(ex::x())}) {
    auto m = exp_automaton(t, 3);
    CHECK(check_morphism(identity_nat(ex::exp(), 4), m, m));
  }
  auto term = terminal_adjl(small_output());
  CHECK(check_morphism(identity_nat(term.E, 2), term, term));

  // Lin states: the new point replaces the adjoined one or joins the order
  Expr l = ex::lin();
  auto relabel = [](const std::vector<int> &o, int a) {
    std::vector<int> out;
    for (int v : o)
      out.push_back(v == 0 ? a : v);
    return Structure{Tag::Lin, out, {}};
  };
  std::vector<std::pair<Dynamics, StructureFn>> cases = {
      {Dynamics::derive(),
       [](unsigned, const Structure &x) {
         std::vector<int> o;
         for (int v : x.children[0].labels)
           if (v != 0)
             o.push_back(v);
         return Structure{Tag::Lin, o, {}};
       }},
      {Dynamics::pointing(),
       [&](unsigned, const Structure &x) { return relabel(x.children[0].labels, x.labels[0]); }},
      {Dynamics::derive_l(),
       [&](unsigned, const Structure &x) {
         const Structure &p = x.children[0];
         return relabel(p.children[0].labels, p.labels[0]);
       }},
      {Dynamics::tensor_by(ex::x()), [](unsigned, const Structure &x) {
         std::vector<int> o{x.labels[0]};
         o.insert(o.end(), x.children[1].labels.begin(), x.children[1].labels.end());
         return Structure{Tag::Lin, o, {}};
       }}};
  for (const auto &[t, fn] : cases) {
    CAPTURE(t.name());
    Expr fl = apply_dynamics(t, l);
    MealyAutomaton m{t, l, ex::exp(), nat_from_function(fl, l, 3, fn), to_set(fl, 3), 3};
    CHECK(check_mealy(m).ok);
    CHECK(check_morphism(identity_nat(l, 4), m, m));
    MealyAutomaton one = exp_automaton(t, 3);
    CHECK(find_morphisms(m, one).size() == 1);
  }
}

TEST_CASE("the terminal automaton receives exactly one morphism") {
  Expr B = small_output();
  auto term = terminal_adjl(B);
  REQUIRE(check_mealy(term).ok);
  auto counts = terminal_counts(Dynamics::adj_l(), B, 2);
  CHECK(counts == CountSeq::of({8, 4, 1}));
  for (unsigned k = 0; k <= 2; ++k)
    CHECK(Natural(static_cast<unsigned long>(enumerate(term.E, k)->size())) == counts[k]);

  for (const auto &m : {exp_pointer(B), lin_appender(B)}) {
    REQUIRE(check_mealy(m).ok);
    auto found = find_morphisms(m, term);
    REQUIRE(found.size() == 1);
    CHECK(check_morphism(found[0], m, term));

    // same shape, wrong degree-0 component
    NatTrans f = found[0];
    f.components[0].map[0] = (f.components[0].map[0] + 1) % f.components[0].target->size();
    CHECK(check_naturality(f));
    CHECK(!check_morphism(f, m, term));
  }
  CHECK_THROWS_AS(check_morphism(identity_nat(ex::exp(), 2), exp_pointer(B), term), Error);
}

TEST_CASE("functorial images preserve shape") {
  Expr l = ex::lin();
  auto rev = nat_from_function(l, l, 4, [](unsigned, const Structure &s) {
    auto o = s.labels;
    std::reverse(o.begin(), o.end());
    return Structure{Tag::Lin, o, {}};
  });
  for (const auto &t : {Dynamics::derive(), Dynamics::adj_l(), Dynamics::pointing(),
                        Dynamics::derive_l(), Dynamics::tensor_by(ex::cyc())}) {
    CAPTURE(t.name());
    Expr fl = apply_dynamics(t, l);
    for (unsigned k = 0; k <= 3; ++k) {
      auto d = enumerate(fl, k);
      std::vector<Structure> images;
      for (const auto &s : *d->structures) {
        auto img = functorial_image(t, rev, k, s);
        CHECK(d->index_of(img));
        images.push_back(img);
        // reversal is an involution, so is its image
        CHECK(functorial_image(t, rev, k, img) == s);
      }
      // Ff is equivariant
      for (const auto &p : all_permutations(k))
        for (const auto &s : *d->structures)
          CHECK(functorial_image(t, rev, k, act(fl, p, s)) ==
                act(fl, p, functorial_image(t, rev, k, s)));
    }
  }
}

TEST_CASE("terminal counts") {
  // the product over n >= 1 of |y[2][k+n]| has a zero factor at every k
  CHECK(terminal_counts(Dynamics::adj_l(), ex::rep(2), 3) == CountSeq::of({0, 0, 0, 0}));
  CHECK(terminal_counts(Dynamics::adj_l(), ex::exp(), 6) == CountSeq::constant(6, 1));
  CHECK(terminal_counts(Dynamics::tensor_by(ex::x()), ex::exp(), 3) == CountSeq::constant(3, 1));
  CHECK(terminal_counts(Dynamics::derive(), ex::exp(), 6) == CountSeq::constant(6, 1));
  CHECK_THROWS_AS(terminal_counts(Dynamics::pointing(), ex::exp(), 3), Error);
  CHECK_THROWS_AS(terminal_counts(Dynamics::derive_l(), ex::exp(), 3), Error);
  CHECK_THROWS_AS(terminal_counts(Dynamics::tensor_by(ex::exp()), ex::exp(), 3), Error);
  try {
    terminal_counts(Dynamics::adj_l(), ex::lin(), 3);
    CHECK(false);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::DivergentProduct);
  }
  // R B[k] = B[k-1]^k
  auto r = terminal_counts(Dynamics::derive(), ex::subsets(), 3);
  CHECK(r == CountSeq::of({1, 1, 4, 4096}));
}

TEST_CASE("terminal counts for DeriveDyn by direct recurrence") {
  for (const auto &B : {ex::subsets(), ex::lin(), ex::cyc(), ex::x(), ex::exp_plus()}) {
    auto b = count_seq(B, 4);
    auto r = terminal_counts(Dynamics::derive(), B, 4);
    // R^n B at degree k as an explicit species
    for (unsigned k = 0; k <= 4; ++k) {
      Natural prod = 1;
      Expr rn = B;
      for (unsigned n = 1; n <= k + 1; ++n) {
        rn = ex::adj_r(rn);
        prod *= cardinality(rn, k);
      }
      CHECK(r[k] == prod);
    }
  }
}

TEST_CASE("Moore terminal objects are shifted by one factor") {
  TerminalOptions moore;
  moore.moore = true;
  for (const auto &B : {ex::exp(), small_output(), ex::rep(2), ex::sum(ex::exp(), ex::one())}) {
    for (const auto &t : {Dynamics::adj_l(), Dynamics::derive(), Dynamics::tensor_by(ex::x())}) {
      auto mealy = terminal_counts(t, B, 3);
      auto mo = terminal_counts(t, B, 3, moore);
      for (unsigned k = 0; k <= 3; ++k)
        CHECK(mo[k] == mealy[k] * cardinality(B, k));
    }
  }
}

TEST_CASE("hom_day_counts") {
  for (const auto &g : {ex::lin(), ex::cyc(), ex::subsets(), ex::rep(2), ex::perm()}) {
    auto dg = count_seq(ex::derive(g), 4);
    CHECK(hom_day_counts(ex::x(), g, 4) == dg);
    CHECK(hom_day_counts(ex::one(), g, 4) == count_seq(g, 4));
  }
  CHECK(hom_day_counts(ex::lin_plus(), ex::rep(2), 3) == CountSeq::of({0, 0, 0, 0}));
}

TEST_CASE("terminal objects as Day homs") {
  std::vector<Expr> outputs = {ex::rep(2), ex::x(), ex::one(), ex::trunc_left(ex::lin(), 3),
                               small_output(), ex::exp(), ex::trunc_right(ex::cyc(), 3)};
  for (const auto &B : outputs) {
    CAPTURE(render(B));
    CHECK(terminal_counts(Dynamics::adj_l(), B, 3) == hom_day_counts(ex::lin_plus(), B, 3));
    for (const auto &a : {ex::x(), ex::cyc(), ex::sum(ex::x(), ex::cauchy(ex::x(), ex::x()))}) {
      CAPTURE(render(a));
      CHECK(terminal_counts(Dynamics::tensor_by(a), B, 3) ==
            hom_day_counts(free_semigroup(a, 6), B, 3));
    }
  }
  // nontrivial values
  CHECK(terminal_counts(Dynamics::adj_l(), small_output(), 3) == CountSeq::of({8, 4, 1, 1}));
}
