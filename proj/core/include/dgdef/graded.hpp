#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgdef/linalg.hpp"

namespace dgdef {

inline constexpr int kMinDegree = -8;
inline constexpr int kMaxDegree = 8;

/// Finite graded vector space given by labelled basis elements. Vectors are
/// expressed in the global order of the labels.
class GradedSpace {
public:
  GradedSpace() = default;
  explicit GradedSpace(std::vector<std::pair<std::string, int>> basis);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  int degree(std::size_t i) const { return degrees_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<int>& degrees() const { return degrees_; }
  std::optional<std::size_t> index_of(const std::string& label) const;

  /// Global indices of the basis elements in degree d (ascending).
  const std::vector<std::size_t>& indices(int d) const;
  std::size_t dim(int d) const { return indices(d).size(); }
  /// Degrees carrying at least one basis element.
  std::vector<int> support() const;

  /// Basis entries in order, as (label, degree).
  std::vector<std::pair<std::string, int>> entries() const;

  friend bool operator==(const GradedSpace& a, const GradedSpace& b) {
    return a.labels_ == b.labels_ && a.degrees_ == b.degrees_;
  }

private:
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::map<std::string, std::size_t> lookup_;
  std::map<int, std::vector<std::size_t>> by_degree_;
};

/// "2*a + b" style rendering of a vector by basis labels; "0" when zero.
std::string format_vector(const GradedSpace& s, std::span<const Scalar> v);

/// Whether the global vector v is supported in degree d only.
bool is_homogeneous(const GradedSpace& s, std::span<const Scalar> v, int d);

/// Restricts a global matrix between graded spaces to the block
/// source degree `from` -> target degree `to`.
Matrix graded_block(const Matrix& m, const GradedSpace& target, int to, const GradedSpace& source, int from);

/// Checks that m (target.size() × source.size()) raises degree by `shift`;
/// returns the first offending (row, col) if not.
std::optional<std::pair<std::size_t, std::size_t>> degree_violation(const Matrix& m, const GradedSpace& target,
                                                                     const GradedSpace& source, int shift);

/// Cochain complex with differential of degree +1 given as one global
/// matrix; d∘d = 0 is checked on construction.
class CochainComplex {
public:
  CochainComplex() = default;
  CochainComplex(Field f, GradedSpace space, Matrix d);
  static CochainComplex zero_differential(Field f, GradedSpace space);

  Field field() const { return field_; }
  const GradedSpace& space() const { return space_; }
  const Matrix& differential() const { return d_; }
  std::size_t size() const { return space_.size(); }
  /// d restricted to degree i: C^i -> C^{i+1}.
  Matrix block(int i) const { return graded_block(d_, space_, i + 1, space_, i); }
  /// Euler characteristic sum (-1)^i dim C^i.
  long euler_characteristic() const;

private:
  Field field_{};
  GradedSpace space_;
  Matrix d_;
};

/// Degree-zero map between complexes commuting with the differentials.
class ChainMap {
public:
  ChainMap() = default;
  ChainMap(CochainComplex source, CochainComplex target, Matrix m);
  static ChainMap identity(const CochainComplex& c);
  static ChainMap zero(const CochainComplex& source, const CochainComplex& target);

  const CochainComplex& source() const { return source_; }
  const CochainComplex& target() const { return target_; }
  const Matrix& matrix() const { return m_; }
  Vec apply(std::span<const Scalar> v) const { return m_.apply(v); }
  ChainMap then(const ChainMap& next) const;

private:
  CochainComplex source_, target_;
  Matrix m_;
};

/// H^i of a complex: representatives complete the coboundaries inside the
/// cocycles by deterministic echelon completion.
class Cohomology {
public:
  Cohomology(const CochainComplex& c, int degree);

  int degree() const { return degree_; }
  std::size_t dim() const { return reps_.size(); }
  std::size_t cocycle_dim() const { return cocycles_.size(); }
  std::size_t coboundary_dim() const { return boundary_rank_; }
  /// Representative cocycles as global vectors.
  const std::vector<Vec>& representatives() const { return reps_; }
  bool is_cocycle(std::span<const Scalar> v) const;
  /// Class coordinates of a degree-i cocycle in the representative basis.
  Vec class_of(std::span<const Scalar> cocycle) const;
  bool is_coboundary(std::span<const Scalar> cocycle) const { return is_zero(class_of(cocycle)); }

private:
  Field field_{};
  int degree_ = 0;
  std::size_t total_ = 0;
  std::vector<std::size_t> local_;  // global indices of degree i
  Matrix d_here_;                   // C^i -> C^{i+1}
  std::vector<Vec> cocycles_;       // local coordinates
  SubspaceCoords cocycle_coords_;
  QuotientMap quotient_;            // cocycle coordinates mod coboundaries
  std::size_t boundary_rank_ = 0;
  std::vector<Vec> reps_;
};

/// Convenience: the cohomology of c in degree i; an empty space outside the
/// support.
Cohomology cohomology(const CochainComplex& c, int degree);

/// Matrix of H^i(f): H^i(source) -> H^i(target) in representative bases.
Matrix induced_on_cohomology(const ChainMap& f, int degree);

/// Cone of f: degree i is source^i ⊕ target^{i−1} with
/// D(l, n) = (d l, f(l) − d n). Source basis first, labels prefixed "s." and "t.".
CochainComplex mapping_cone(const ChainMap& f);

struct DegreeCertificate {
  int degree = 0;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::size_t rank = 0;
  bool bijective() const { return rank == source_dim && rank == target_dim; }
};

struct QuasiIsoCertificate {
  bool quasi_isomorphism = true;
  std::vector<DegreeCertificate> degrees;
};

/// Checks H^i(f) is bijective in every degree where either side is nonzero.
QuasiIsoCertificate is_quasi_isomorphism(const ChainMap& f);

/// Pair cone Cil^i = L^i ⊕ N^i ⊕ M^{i−1} with
/// D(l, n, m) = (dl, dn, −dm − g(n) + h(l)).
struct PairCone {
  CochainComplex complex;
  std::size_t l_size = 0, n_size = 0, m_size = 0;

  std::size_t l_offset() const { return 0; }
  std::size_t n_offset() const { return l_size; }
  std::size_t m_offset() const { return l_size + n_size; }
  /// Assemble (l, n, m) global component vectors into a cone vector.
  Vec assemble(std::span<const Scalar> l, std::span<const Scalar> n, std::span<const Scalar> m) const;
  Vec l_part(std::span<const Scalar> v) const;
  Vec n_part(std::span<const Scalar> v) const;
  Vec m_part(std::span<const Scalar> v) const;
};

/// h: L->M and g: N->M given as global matrices; both must be chain maps.
PairCone pair_cone(const CochainComplex& l, const CochainComplex& n, const CochainComplex& m, const Matrix& h,
                   const Matrix& g);

/// (l, n, m) -> (α'(l), α''(n), α(m)) between two pair cones.
ChainMap cone_morphism(const PairCone& source, const PairCone& target, const Matrix& alpha_l, const Matrix& alpha_n,
                       const Matrix& alpha_m);

struct InjectiveReduction {
  CochainComplex quotient;       // M / h(L)
  Matrix projection;             // M -> M/h(L)
  CochainComplex composite_cone; // cone of π∘g : N -> M/h(L)
  ChainMap witness;              // pair cone -> composite cone, (l,n,m) -> (n, −π m)
  QuasiIsoCertificate certificate;
};

/// For injective h, compares the pair cone with the cone of N -> M -> M/L.
InjectiveReduction reduce_injective_pair(const PairCone& cone, const CochainComplex& l, const CochainComplex& n,
                                         const CochainComplex& m, const Matrix& h, const Matrix& g);

}  // namespace dgdef
