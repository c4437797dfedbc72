#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dgdef/check.hpp"
#include "dgdef/dgla.hpp"

namespace dgdef {

struct Bidegree {
  int p = 0;
  int q = 0;
  int total() const { return p + q; }
  friend bool operator==(const Bidegree&, const Bidegree&) = default;
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

std::string to_string(Bidegree b);

struct BiBasis {
  std::string label;
  Bidegree bidegree;
};

/// b_left · b_right = value. The reverse order is derived by graded
/// commutativity unless it is listed too.
struct ProductEntry {
  std::size_t left = 0, right = 0;
  Vec value;
};

/// Finite bigraded algebra with ∂ of bidegree (1,0) and ∂̄ of bidegree (0,1).
/// Degrees of signs are total degrees p + q.
class BigradedAlgebra {
public:
  BigradedAlgebra() = default;
  /// Throws StructureError on malformed tables (wrong sizes, repeated entries).
  BigradedAlgebra(Field f, std::vector<BiBasis> basis, const std::vector<ProductEntry>& products, Matrix del,
                  Matrix delbar, std::string name = {});

  /// k·1 ⊕ V with V·V = 0; `v` lists V only and the unit "1" is prepended,
  /// so `del`, `delbar` act on V in V's own indexing.
  static BigradedAlgebra square_zero(Field f, std::vector<BiBasis> v, const Matrix& del, const Matrix& delbar,
                                     std::string name = {});
  /// The one-dimensional model k of a point.
  static BigradedAlgebra point(Field f);

  Field field() const { return field_; }
  const std::string& name() const { return name_; }
  std::size_t size() const { return basis_.size(); }
  const std::string& label(std::size_t i) const { return basis_.at(i).label; }
  Bidegree bidegree(std::size_t i) const { return basis_.at(i).bidegree; }
  int degree(std::size_t i) const { return basis_.at(i).bidegree.total(); }
  const std::vector<BiBasis>& basis() const { return basis_; }
  /// Labels graded by total degree.
  const GradedSpace& space() const { return space_; }
  std::vector<std::size_t> indices(Bidegree b) const;
  /// Bidegrees carrying a basis element, ascending.
  std::vector<Bidegree> bidegrees() const;
  /// Bidegree of a nonzero bihomogeneous vector.
  std::optional<Bidegree> homogeneous_bidegree(std::span<const Scalar> v) const;

  const Matrix& del() const { return del_; }
  const Matrix& delbar() const { return delbar_; }
  Vec del(std::span<const Scalar> x) const { return del_.apply(x); }
  Vec delbar(std::span<const Scalar> x) const { return delbar_.apply(x); }
  const Vec& basis_product(std::size_t i, std::size_t j) const { return table_.at(i * size() + j); }
  Vec multiply(std::span<const Scalar> x, std::span<const Scalar> y) const;
  /// The basis element acting as a two-sided unit, when there is one.
  std::optional<std::size_t> unit() const { return unit_; }
  Vec zero() const { return zero_vec(field_, size()); }

  /// Canonical product entries with left <= right.
  std::vector<ProductEntry> canonical_products() const;

private:
  Field field_{};
  std::string name_;
  std::vector<BiBasis> basis_;
  GradedSpace space_;
  std::vector<Vec> table_;
  Matrix del_, delbar_;
  std::optional<std::size_t> unit_;
};

/// Checks "bidegrees", "del^2=0", "delbar^2=0", "anticommute", "leibniz",
/// "commutative" and "associative", each with a witness on failure.
CheckList validate_bicomplex(const BigradedAlgebra& a);

/// Linear span of `v` as a vector of A rendered with A's labels.
std::string format_element(const BigradedAlgebra& a, std::span<const Scalar> v);

/// X ⊗ Y with the Koszul sign (a⊗b)(c⊗d) = (−1)^{|b||c|} ac⊗bd. `p_star`
/// and `q_star` are a ↦ a⊗1 and b ↦ 1⊗b (both factors need a unit).
struct ProductModel {
  BigradedAlgebra algebra;
  Matrix p_star;  // X -> X ⊗ Y
  Matrix q_star;  // Y -> X ⊗ Y
};
ProductModel tensor_model(const BigradedAlgebra& x, const BigradedAlgebra& y);

/// Algebra morphism A -> B preserving bidegree, product, unit, ∂ and ∂̄.
CheckList validate_model_map(const BigradedAlgebra& source, const BigradedAlgebra& target, const Matrix& m);

struct DelDelbarResult {
  bool holds = true;
  Vec witness;  // in ker ∂ ∩ ker ∂̄ ∩ (im ∂ + im ∂̄) but not in im ∂∂̄
  std::size_t closed_exact_dim = 0;
  std::size_t del_delbar_exact_dim = 0;
};

/// Whether ker ∂ ∩ ker ∂̄ ∩ (im ∂ + im ∂̄) = im ∂∂̄.
DelDelbarResult del_delbar_predicate(const BigradedAlgebra& a);

/// Bases of ∂A and ker ∂ (bihomogeneous).
std::vector<Vec> del_image(const BigradedAlgebra& a);
std::vector<Vec> del_kernel(const BigradedAlgebra& a);

/// (sub, ∂̄) has no cohomology. Throws std::invalid_argument when sub is not
/// ∂̄-closed.
bool subcomplex_acyclic(const BigradedAlgebra& a, std::span<const Vec> sub);

/// Htp(ker ∂, A/∂A) = ⊕_i Hom^{i−1}(ker ∂, A/∂A) with
/// δ(f) = −∂̄f − (−1)^{deg f} f∂̄ and {f,g} = f∂g − (−1)^{deg f·deg g} g∂f.
///
/// Basis element `index(t, s)` sends the s-th closed basis vector to the
/// t-th coexact representative and the remaining closed basis vectors to 0.
class HtpDgla {
public:
  HtpDgla() = default;
  explicit HtpDgla(const BigradedAlgebra& a);

  const DglaPtr& dgla() const { return dgla_; }
  const BigradedAlgebra& algebra() const { return algebra_; }
  /// Bihomogeneous basis of ker ∂ (vectors of A).
  const std::vector<Vec>& closed_basis() const { return closed_.basis(); }
  const SubspaceCoords& closed() const { return closed_; }
  /// A -> A/∂A with standard-basis representatives.
  const QuotientMap& coexact() const { return coexact_; }
  std::size_t closed_dim() const { return closed_.size(); }
  std::size_t coexact_dim() const { return coexact_.quotient_dim(); }
  std::size_t index(std::size_t t, std::size_t s) const { return t * closed_dim() + s; }
  /// Bidegree shift of basis map i, target minus source.
  Bidegree shift(std::size_t i) const;

  /// f(v) in A/∂A coordinates for v ∈ ker ∂ given as a vector of A.
  Vec evaluate(std::span<const Scalar> f, std::span<const Scalar> v) const;
  /// f(v) lifted to A through the standard representatives.
  Vec evaluate_lifted(std::span<const Scalar> f, std::span<const Scalar> v) const;
  /// The class of a linear operator A -> A: restrict to ker ∂, project to A/∂A.
  Vec from_operator(const Matrix& op) const;
  /// Elements f with f(v) ∈ π(target) for every v in `domain` (subspaces of A,
  /// domain inside ker ∂), intersected with the span of `within` (all of Htp
  /// when empty).
  std::vector<Vec> maps_into(std::span<const Vec> domain, std::span<const Vec> target,
                             std::span<const Vec> within = {}) const;

private:
  BigradedAlgebra algebra_;
  SubspaceCoords closed_;
  QuotientMap coexact_;
  DglaPtr dgla_;
};

HtpDgla build_htp_dgla(const BigradedAlgebra& a);

/// The sub-DGLA of maps of bidegree (−1, j) with j >= 0; j is its degree.
/// Contractions land here.
SubDgla contraction_part(const HtpDgla& htp);

/// A DGLA acting on A by contractions: `operators[i]` is ι_{l_i} as a matrix
/// A -> A for the i-th basis element of `algebra`.
struct ContractionAction {
  DglaPtr algebra;
  std::vector<Matrix> operators;

  Matrix operator_of(std::span<const Scalar> a) const;
  Vec contract(std::span<const Scalar> a, std::span<const Scalar> omega) const;
};

/// Whether ι(L^j) ⊂ ⊕_{h,l} Hom(A^{h,l}, A^{h−1,l+j}); the witness names
/// the offending pair.
Check contraction_bidegree_check(const ContractionAction& ca, const BigradedAlgebra& a);

/// ι: L -> Htp(ker ∂, A/∂A). Throws std::invalid_argument when the bidegree
/// contract fails and StructureError (with the failing identity) when ι is
/// not a DGLA morphism.
DglaMorphism contraction_morphism(const ContractionAction& ca, const HtpDgla& htp);
/// ι into a sub-DGLA of htp given by its inclusion.
DglaMorphism contraction_morphism(const ContractionAction& ca, const HtpDgla& htp, const SubDgla& target);

/// f*(χ⌟ω) = η⌟f*ω for f*: A_Y -> A_X. χ and η are contraction operators on
/// A_Y and A_X. Throws std::invalid_argument unless f*(χ⌟θ) = η⌟f*θ on every
/// basis element θ of A_Y of bidegree (1,0) (the hypothesis f*χ = f_*η).
bool verify_pullback_contraction(const BigradedAlgebra& y, const BigradedAlgebra& x, const Matrix& f_star,
                                 const Matrix& chi, const Matrix& eta, std::span<const Scalar> omega);

/// A_Z with the graph ideal I_Γ and the subalgebras q*A_Y, p*A_X.
struct ModelConfiguration {
  BigradedAlgebra ambient;
  std::vector<Vec> ideal;
  std::vector<Vec> y_pullback;
  std::vector<Vec> x_pullback;
};

/// "ideal", "y subalgebra", "x subalgebra" closure checks.
CheckList validate_configuration(const ModelConfiguration& mc);

struct GraphQuotient {
  BigradedAlgebra algebra;  // A_Γ = A_Z / I_Γ on standard representatives
  Matrix projection;
};
GraphQuotient graph_quotient(const ModelConfiguration& mc);

/// Acyclicity of ∂A_Z, ∂A_Γ, ∂A_Z ∩ q*A_Y and ∂A_Z ∩ p*A_X under ∂̄.
struct AcyclicityReport {
  DelDelbarResult ambient, graph;
  bool del_ambient = false, del_graph = false, del_y = false, del_x = false;
  bool all() const { return del_ambient && del_graph && del_y && del_x; }
};
AcyclicityReport acyclicity_report(const ModelConfiguration& mc);

/// {a ∈ M : ι_a(I_Γ) ⊂ I_Γ} and {a ∈ M : ι_a(q*A_Y) = 0}.
std::vector<Vec> log_subspace(const ModelConfiguration& mc, const ContractionAction& m);
std::vector<Vec> factor_subspace(const ModelConfiguration& mc, const ContractionAction& m);

struct ThreeLevelDiagram {
  HtpDgla htp;
  SubDgla q;                     // contraction part of Htp, the middle target
  SubDgla k, j;                  // inside q: K and J
  SubDgla l, n;                  // inside M
  DglaPtr m;
  PairDiagram source;            // h: L -> M <- N: g
  PairDiagram target;            // η: K -> Q <- J: μ
  DiagramMorphism iota;          // (ι|L, ι, ι|N)
  SubDgla k0, q0, j0;            // maps vanishing on ∂A_Z, inside K, Q, J
  PairDiagram abelian_pair;      // η': K0 -> Q0 <- J0: μ'
  DiagramMorphism abelian_model; // abelian_pair -> target by inclusion
  ContractionAction action;
  ModelConfiguration configuration;
  GraphQuotient graph;
};

/// Builds K = {f | f(I_Γ ∩ ker ∂) ⊂ (I_Γ + ∂A)/∂A}, J = {f | f(ker ∂ ∩ q*A_Y) = 0}
/// inside the contraction part of Htp(ker ∂, A_Z/∂A_Z), and the diagram
/// (h, g) -> (η, μ). `l_span` and `n_span` are subspaces of M; empty means
/// the largest admissible one. Throws StructureError with a witness when
/// ι_a(I_Γ) ⊄ I_Γ for some a ∈ L or ι_a(q*A_Y) ≠ 0 for some a ∈ N.
ThreeLevelDiagram build_three_level_diagram(const ModelConfiguration& mc, const ContractionAction& m,
                                            std::span<const Vec> l_span = {}, std::span<const Vec> n_span = {});

/// Harmonic subspace of A_Z and a trace on A_Γ (vanishing off one bidegree
/// and on ∂A_Γ + ∂̄A_Γ).
struct SemiregularityData {
  std::vector<Vec> harmonic;
  Vec trace;
};

/// ω ∈ I_Γ ∩ ker ∂̄ ∩ ker ∂ ∩ q*A_Y.
bool admissible_harmonic(const ThreeLevelDiagram& d, std::span<const Scalar> omega);

/// trace(π_Γ(ι_m ω)) for a D-closed representative (l, n, m) of a class in
/// H²(Cil) of the source pair. Throws std::invalid_argument when ω is not
/// admissible, the representative is not closed or the trace is not a valid
/// trace. Asserts (std::logic_error) independence of the representative and
/// agreement with the pairing on the image class in H²(target).
Scalar semiregularity_pairing(const ThreeLevelDiagram& d, std::span<const Scalar> cls, std::span<const Scalar> omega,
                              std::span<const Scalar> trace);

/// Exterior algebra on odd generators (∂ = ∂̄ = 0). Basis element `mask`
/// is the wedge of the generators whose bits are set, in increasing order.
BigradedAlgebra exterior_model(Field f, const std::vector<BiBasis>& generators, std::string name = {});
/// The odd derivation of exterior_model sending generator i to 1 and the
/// other generators to 0.
Matrix generator_contraction(const BigradedAlgebra& ext, std::size_t generator);
/// The algebra map from exterior_model with generator i sent to images[i].
Matrix exterior_map(const BigradedAlgebra& ext, const BigradedAlgebra& target, std::span<const Vec> images);
/// ω ↦ x·ω.
Matrix left_multiplication(const BigradedAlgebra& a, std::span<const Scalar> x);

/// The action of a sub-DGLA of the contraction part on A for which ι is the
/// inclusion: basis map v_s ↦ w_t acts as that map on ker ∂ and as zero on
/// the standard-basis complement of ker ∂.
ContractionAction tautological_action(const HtpDgla& htp, const SubDgla& sub);

/// A square-zero model k ⊕ V with V a random bicomplex of dimension <= max_dim
/// (direct sum of dots, segments and squares in a random bihomogeneous basis).
BigradedAlgebra random_bicomplex(Field f, std::mt19937_64& rng, std::size_t max_dim);

}  // namespace dgdef
