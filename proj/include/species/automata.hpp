#ifndef SPECIES_AUTOMATA_HPP
#define SPECIES_AUTOMATA_HPP

#include <optional>
#include <string>
#include <vector>

#include "species/counting.hpp"
#include "species/transforms.hpp"

namespace species {

struct Dynamics {
  enum class Kind { TensorBy, Derive, AdjL, Pointing, DeriveL };
  Kind kind = Kind::Derive;
  Expr a; // TensorBy only

  static Dynamics tensor_by(Expr a) { return {Kind::TensorBy, std::move(a)}; }
  static Dynamics derive() { return {Kind::Derive, {}}; }
  static Dynamics adj_l() { return {Kind::AdjL, {}}; }
  static Dynamics pointing() { return {Kind::Pointing, {}}; }
  static Dynamics derive_l() { return {Kind::DeriveL, {}}; }

  std::string name() const;
  friend bool operator==(const Dynamics &x, const Dynamics &y);
};

Expr apply_dynamics(const Dynamics &t, const Expr &e);

// Source degree of E needed to evaluate the dynamics at degree k.
unsigned dynamics_reach(const Dynamics &t, unsigned k);

struct MealyAutomaton {
  Dynamics dynamics;
  Expr E, B;
  NatTrans d; // F(E) -> E
  NatTrans s; // F(E) -> B
  unsigned horizon = 0;
};

struct MooreAutomaton {
  Dynamics dynamics;
  Expr E, B;
  NatTrans d; // F(E) -> E
  NatTrans s; // E -> B
  unsigned horizon = 0;
};

struct AutomatonReport {
  bool ok = true;
  std::vector<Diagnostic> diagnostics;
  std::optional<unsigned> degree; // first non-equivariant degree
};

AutomatonReport check_mealy(const MealyAutomaton &m);
AutomatonReport check_moore(const MooreAutomaton &m);

// F f on one structure of F(E1) at degree k.
Structure functorial_image(const Dynamics &t, const NatTrans &f, unsigned k, const Structure &s);

// f . d1 = d2 . Ff and s1 = s2 . Ff at every degree up to the common horizon.
bool check_morphism(const NatTrans &f, const MealyAutomaton &m1, const MealyAutomaton &m2);
bool check_morphism(const NatTrans &f, const MooreAutomaton &m1, const MooreAutomaton &m2);

// All morphisms m1 -> m2, by exhaustive search over equivariant maps.
std::vector<NatTrans> find_morphisms(const MealyAutomaton &m1, const MealyAutomaton &m2,
                                     std::size_t limit = 100000);

struct TerminalOptions {
  bool moore = false;
  unsigned scan = 12; // extra degrees searched for a certified tail
};

CountSeq terminal_counts(const Dynamics &t, const Expr &B, unsigned N,
                         const TerminalOptions &opt = {});

CountSeq hom_day_counts(const Expr &f, const Expr &g, unsigned N, unsigned scan = 12);

// Σ_{n=1..m} a^n, enough for degrees up to m when a is empty at 0.
Expr free_semigroup(const Expr &a, unsigned m);

} // namespace species

#endif // SPECIES_AUTOMATA_HPP
