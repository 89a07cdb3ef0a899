#ifndef SPECIES_TRANSFORMS_HPP
#define SPECIES_TRANSFORMS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "species/counting.hpp"
#include "species/structure.hpp"

namespace species {

// One degree of a natural transformation, as a lookup table between the
// sorted structure lists of source and target.
struct Component {
  std::shared_ptr<const DegreeData> source;
  std::shared_ptr<const DegreeData> target;
  PointMap map;
};

struct NatTrans {
  Expr source;
  Expr target;
  std::vector<Component> components; // components[k] for k = 0..horizon

  unsigned horizon() const { return static_cast<unsigned>(components.size()) - 1; }
  // Image of a structure of the source at degree k (labels 1..k).
  const Structure &operator()(unsigned k, const Structure &s) const;
  // Image of a source structure living on the sorted label set V, whose
  // adjoined points sit below `floor`.
  Structure apply_on(const Structure &s, const std::vector<int> &V, int floor) const;
};

using StructureFn = std::function<Structure(unsigned k, const Structure &)>;

// Tabulates fn at every degree up to N; throws StructureNotOfExpr when fn
// leaves the target.
NatTrans nat_from_function(const Expr &source, const Expr &target, unsigned N,
                           const StructureFn &fn);
NatTrans identity_nat(const Expr &f, unsigned N);

struct NaturalityReport {
  bool ok = true;
  std::optional<unsigned> degree; // first failing degree
};
NaturalityReport naturality(const NatTrans &t);
bool check_naturality(const NatTrans &t);

struct NatCount {
  std::vector<Natural> per_degree;
  Natural cumulative;
};
NatCount count_nat(const Expr &f, const Expr &g, unsigned N);
std::vector<NatTrans> enumerate_nat(const Expr &f, const Expr &g, unsigned N, std::size_t limit);

struct IsoResult {
  bool isomorphic = true;
  std::optional<unsigned> witness;
  std::vector<StabilizerClass> left, right; // at the witness degree
};
IsoResult iso_check(const Expr &f, const Expr &g, unsigned N,
                    std::size_t cap = default_enumeration_cap);
std::string describe(const std::vector<StabilizerClass> &classes);

// Monoids in (species, Cauchy product).

struct LawReport {
  std::string law;
  bool ok = true;
  std::optional<unsigned> degree;
  std::string detail;
};

struct MonoidReport {
  bool ok = true;
  std::vector<LawReport> laws;
  const LawReport &law(const std::string &name) const;
};

// The canonical re-bracketing (F*G)*H -> F*(G*H) on one structure.
Structure associate_right(const Structure &s);

MonoidReport check_monoid(const Expr &f, const NatTrans &mu, const Structure &eta, unsigned N);

// ∂-algebras.

struct PartialAlgebra {
  Expr carrier;
  NatTrans xi; // Derive(carrier) -> carrier
};

// The only map into a species with one point per degree.
PartialAlgebra terminal_algebra(const Expr &carrier, unsigned N);
// Carrier One, with the empty structure map out of ∂One = 0.
PartialAlgebra unit_algebra(unsigned N);

struct AlgebraReport {
  bool ok = true;
  std::string detail;
};
AlgebraReport check_algebra(const PartialAlgebra &a);

// Leibniz split of ∂(A*B), then α on the left summand and β on the right.
PartialAlgebra tensor_partial_algebras(const PartialAlgebra &a, const PartialAlgebra &b,
                                       unsigned N);

// ∂h at degree k, read off from h at degree k + 1.
Structure derive_image(const NatTrans &h, unsigned k, const Structure &s);

// h ∘ ξ_a = ξ_b ∘ ∂h at every degree below h's horizon.
bool is_algebra_morphism(const NatTrans &h, const PartialAlgebra &a, const PartialAlgebra &b);

// Canonical isomorphisms.

struct SuiteCase {
  std::string label;
  bool ok = true;
  unsigned structural_up_to = 0; // degrees checked as S_k-sets
  std::optional<unsigned> by_marks_from; // first degree checked by subgroup marks
  std::optional<unsigned> failing_degree;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  unsigned horizon = 0;
  bool ok = true;
  std::vector<SuiteCase> cases;
};

std::vector<Expr> default_family();
const std::vector<std::string> &suite_names();

// Degrees whose structure count exceeds `structural_cap` on either side are
// compared by cardinality only; the report records how far the S_k-set
// comparison went.
SuiteReport canonical_iso_suite(const std::string &name, unsigned N,
                                const std::vector<Expr> &family = default_family(),
                                std::size_t structural_cap = 400000);

// The action of S_n on functions [n] -> F[n]: (σφ)(σa) = σ·φ(a).  Points are
// functions in lexicographic order of their value indices.
FiniteAction power_action(const DegreeData &f);

// Number of structures of e at degree h.degree fixed by every element of h.
// Sums, products, derivatives, pointings and adjoints are split along the
// orbits of h; anything else is enumerated (EnumerationTooLarge past cap).
Natural marks(const Expr &e, const SubgroupElements &h,
              std::size_t cap = default_enumeration_cap);
// The same for functions [n] -> f[n] under conjugation.
Natural power_marks(const Expr &f, const SubgroupElements &h,
                    std::size_t cap = default_enumeration_cap);
// Burnside: equal marks on every subgroup class means isomorphic S_n-sets.
// Returns the first subgroup where the marks differ.
std::optional<SubgroupElements> marks_differ(const std::function<Natural(const SubgroupElements &)> &a,
                                             const std::function<Natural(const SubgroupElements &)> &b,
                                             unsigned n);


} // namespace species

#endif // SPECIES_TRANSFORMS_HPP
