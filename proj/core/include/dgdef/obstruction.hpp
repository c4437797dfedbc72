#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dgdef/mc.hpp"

namespace dgdef {

/// Obstruction to lifting an MC triple along a small extension B -> A.
///
/// The defect of a lift lies in Cil² ⊗ J; `representatives[s]` is its
/// component on the s-th basis vector of J, a D-closed element of Cil², and
/// `coordinates[s]` its class in the representative basis of H²(Cil).
struct ObstructionClass {
  std::vector<Vec> representatives;
  std::vector<Vec> coordinates;
  std::vector<std::string> h2_basis;  // labels of the H² representatives

  bool is_zero() const;
  /// All coordinates concatenated (J-major).
  Vec flattened() const;
};

/// (id ⊗ s)(ξ) for a section s of m_B -> m_A, plus an optional correction
/// in Cil¹ ⊗ J given in B-coordinates.
McTriple lift_triple(const McTriple& xi, const SmallExtension& e, const TensoredPair& over_b,
                     const McTriple* correction = nullptr);

/// The defect (dx̃ + ½[x̃,x̃], dỹ + ½[ỹ,ỹ], e^{p̃}*h(x̃) − g(ỹ)) of a lift.
McTriple lift_defect(const McTriple& lifted, const TensoredPair& over_b);

/// Obstruction class of ξ (an MC triple over A = e.small). When `lift` is
/// given it is used instead of the section lift; it must reduce to ξ.
ObstructionClass obstruction_class(const McTriple& xi, const SmallExtension& e, const PairDiagram& pd,
                                   const McTriple* lift = nullptr);

/// The section lift of ξ corrected by a solution of D(c) = −defect in
/// Cil¹ ⊗ J, or std::nullopt when the class is nonzero.
/// `kernel_choice`, when set, adds a random element of the solution kernel.
std::optional<McTriple> solve_lift(const McTriple& xi, const SmallExtension& e, const PairDiagram& pd,
                                   std::mt19937_64* kernel_choice = nullptr);

/// Exhaustive search over every correction in Cil¹ ⊗ J = (L¹ ⊕ N¹ ⊕ M⁰) ⊗ J,
/// block by block. Throws std::length_error when p^{dim} of one block
/// exceeds `limit`.
bool lift_exists_bruteforce(const McTriple& xi, const SmallExtension& e, const PairDiagram& pd,
                            std::uint64_t limit = 1000000);

struct ProbeStage {
  unsigned order = 0;  // lifting along curvilinear(order)
  bool obstructed = false;
  ObstructionClass obstruction;
};

struct ProbeResult {
  std::vector<ProbeStage> stages;
  std::optional<unsigned> first_obstructed;
  unsigned depth = 0;
  McTriple last_lift;  // over k[t]/(t^{n+1}) for the last unobstructed stage
};

struct ProbeOptions {
  unsigned depth = 4;
  /// Lift with a random kernel element instead of the echelon solution.
  std::optional<std::uint64_t> randomized_seed;
};

/// Lifts ξ₁ over k[t]/(t²) along curvilinear(2), …, curvilinear(depth) and
/// reports the first obstructed order.
ProbeResult curvilinear_probe(const McTriple& xi1, const PairDiagram& pd, const ProbeOptions& opts = {});

struct AlgebraIsoReport {
  std::string algebra;
  std::size_t source_triples = 0, target_triples = 0;
  std::size_t source_orbits = 0, target_orbits = 0;
  bool well_defined = true, injective = true, surjective = true;
  std::string witness;
  bool bijective() const { return well_defined && injective && surjective; }
};

struct FunctorIsoReport {
  QuasiIsoCertificate quasi_iso;
  std::vector<AlgebraIsoReport> algebras;
  bool all_bijective() const;
};

/// Induced map on gauge orbits of MC triples, for each algebra of the
/// family (prime field, exhaustive enumeration).
FunctorIsoReport verify_functor_iso(const DiagramMorphism& dm, const std::vector<ArtinAlgebra>& family,
                                    std::uint64_t limit = 1000000);

/// The comparison (h,g) -> (0 -> M/h(L) <- N) given by (0, π, id) when h(L)
/// is a DG ideal of M; throws StructureError otherwise.
DiagramMorphism injective_reduction_morphism(const PairDiagram& pd);

enum class SmoothnessCertificate { none, abelian, h2_vanishes, abelian_model, exhaustive };
std::string to_string(SmoothnessCertificate c);

struct CorpusEntry {
  std::string name;
  McTriple xi;
  SmallExtension extension;
};

/// Every MC triple over e.small lifts along e (exhaustive, prime field).
bool smooth_exhaustively(const PairDiagram& pd, const SmallExtension& e, std::uint64_t limit = 1000000);

/// H¹ of the cone map is surjective and H² injective, so the induced map of
/// deformation functors is smooth.
bool smooth_cone_map(const ChainMap& f);

/// Smoothness certificate for pd, trying in order: all three algebras
/// abelian; H²(Cil) = 0; a diagram morphism `model` from an abelian pair into
/// pd whose cone map is smooth; exhaustive lifting over the given
/// extensions. `none` when no route applies.
SmoothnessCertificate certify_smooth(const PairDiagram& pd, const std::vector<SmallExtension>& extensions,
                                     std::uint64_t limit = 1000000, const DiagramMorphism* model = nullptr);

struct AnnihilationEntry {
  std::string name;
  ObstructionClass source_class;
  std::vector<Vec> image;  // H²(φ) applied per J component
  bool annihilated = true;
};

struct AnnihilationReport {
  SmoothnessCertificate certificate = SmoothnessCertificate::none;
  Matrix h2_map;  // H²(Cil) -> H²(target cone)
  std::vector<AnnihilationEntry> entries;
  bool all_annihilated() const;
};

/// Computes each corpus obstruction class and its image under H²(φ).
/// Throws std::invalid_argument when the target is not certified smooth.
AnnihilationReport annihilation_check(const DiagramMorphism& dm, const std::vector<CorpusEntry>& corpus,
                                      std::uint64_t limit = 1000000, const DiagramMorphism* target_model = nullptr);

}  // namespace dgdef
