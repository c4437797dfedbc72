#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dgdef/artin.hpp"
#include "dgdef/check.hpp"
#include "dgdef/graded.hpp"

namespace dgdef {

using SparseVec = std::vector<std::pair<std::uint32_t, Scalar>>;

/// Structure constant [e_left, e_right] = value (global basis coordinates).
struct BracketEntry {
  std::size_t left = 0;
  std::size_t right = 0;
  Vec value;
};

/// Differential graded Lie algebra by structure constants.
///
/// Brackets are supplied for basis pairs; a pair whose reverse is not given
/// is completed by graded antisymmetry. Supplying both orders is allowed and
/// is exactly what `validate_dgla` checks for consistency.
class Dgla {
public:
  Dgla() = default;
  Dgla(Field f, GradedSpace space, Matrix differential, const std::vector<BracketEntry>& brackets,
       std::string name = {});
  /// Abelian DGLA with zero differential.
  static Dgla abelian(Field f, GradedSpace space, std::string name = {});

  const std::string& name() const { return name_; }
  Field field() const { return field_; }
  const GradedSpace& space() const { return space_; }
  std::size_t size() const { return space_.size(); }
  int degree(std::size_t i) const { return space_.degree(i); }
  const Matrix& differential() const { return d_; }
  CochainComplex complex() const { return CochainComplex(field_, space_, d_); }

  Vec d(std::span<const Scalar> x) const { return d_.apply(x); }
  Vec bracket(std::span<const Scalar> x, std::span<const Scalar> y) const;
  /// [e_i, e_j] as a dense vector.
  Vec basis_bracket(std::size_t i, std::size_t j) const;
  const SparseVec& basis_bracket_sparse(std::size_t i, std::size_t j) const { return table_[i * size() + j]; }
  bool is_abelian() const;
  /// Degree of a nonzero homogeneous vector; std::nullopt otherwise.
  std::optional<int> homogeneous_degree(std::span<const Scalar> x) const;
  /// Nonzero structure constants with left <= right.
  std::vector<BracketEntry> canonical_brackets() const;

  Vec zero() const { return zero_vec(field_, size()); }

private:
  std::string name_;
  Field field_{};
  GradedSpace space_;
  Matrix d_;
  std::vector<SparseVec> table_;  // row-major n*n
};

using DglaPtr = std::shared_ptr<const Dgla>;

/// Checks degree compatibility, d∘d = 0, graded antisymmetry, graded
/// Leibniz and graded Jacobi on basis elements; failures carry witnesses.
CheckList validate_dgla(const Dgla& g);

inline bool is_abelian(const Dgla& g) { return g.is_abelian(); }

/// Degree-zero linear map commuting with d and brackets.
class DglaMorphism {
public:
  DglaMorphism() = default;
  /// Throws StructureError (with a witness) unless the map is a morphism.
  DglaMorphism(DglaPtr source, DglaPtr target, Matrix m);

  static CheckList check(const Dgla& source, const Dgla& target, const Matrix& m);
  static DglaMorphism identity(const DglaPtr& g) {
    return DglaMorphism(g, g, Matrix::identity(g->field(), g->size()));
  }

  const DglaPtr& source() const { return source_; }
  const DglaPtr& target() const { return target_; }
  const Matrix& matrix() const { return m_; }
  Vec apply(std::span<const Scalar> v) const { return m_.apply(v); }

private:
  DglaPtr source_, target_;
  Matrix m_;
};

/// The configuration h: L -> M <- N: g with M concentrated in degrees >= 0.
class PairDiagram {
public:
  PairDiagram() = default;
  PairDiagram(DglaMorphism h, DglaMorphism g);

  const Dgla& l() const { return *h_.source(); }
  const Dgla& m() const { return *h_.target(); }
  const Dgla& n() const { return *g_.source(); }
  const DglaMorphism& h() const { return h_; }
  const DglaMorphism& g() const { return g_; }
  Field field() const { return h_.target()->field(); }
  PairCone cone() const;

private:
  DglaMorphism h_, g_;
};

/// Morphism of pair diagrams (h, g) -> (η, μ) given by α': L -> P,
/// α: M -> Q, α'': N -> R with η∘α' = α∘h and μ∘α'' = α∘g.
class DiagramMorphism {
public:
  DiagramMorphism() = default;
  /// Throws StructureError naming the offending composite.
  DiagramMorphism(PairDiagram source, PairDiagram target, Matrix alpha_l, Matrix alpha_m, Matrix alpha_n);
  static DiagramMorphism identity(const PairDiagram& d);

  const PairDiagram& source() const { return source_; }
  const PairDiagram& target() const { return target_; }
  const Matrix& alpha_l() const { return alpha_l_; }
  const Matrix& alpha_m() const { return alpha_m_; }
  const Matrix& alpha_n() const { return alpha_n_; }
  DiagramMorphism then(const DiagramMorphism& next) const;

private:
  PairDiagram source_, target_;
  Matrix alpha_l_, alpha_m_, alpha_n_;
};

/// (l,n,m) -> (α'(l), α''(n), α(m)) between the pair cones.
ChainMap induced_cone_map(const DiagramMorphism& dm);

/// Kronecker product m ⊗ id_k, acting on V ⊗ m_A with index i*k + j.
Matrix tensor_identity(const Matrix& m, std::size_t k);

/// L ⊗ m_A with basis l_i ⊗ μ_j (index i*dim m_A + j), d(l⊗μ) = dl⊗μ and
/// [l⊗μ, l'⊗μ'] = [l,l']⊗μμ'.
Dgla tensor_with_ideal(const Dgla& g, const ArtinAlgebra& a);

struct QuotientDgla {
  DglaPtr dgla;       // on the standard basis vectors completing the ideal
  Matrix projection;  // g -> g / I
};

/// g / I for a graded subspace I closed under d and ad; throws
/// StructureError naming the offending element otherwise.
QuotientDgla quotient_by_ideal(const Dgla& g, std::span<const Vec> ideal);

struct SubDgla {
  DglaPtr dgla;      // on a homogeneous basis of the subspace
  Matrix inclusion;  // sub -> g
};

/// The sub-DGLA spanned by `span` (a graded subspace closed under d and the
/// bracket); throws StructureError naming the offending element otherwise.
/// Basis elements that are standard basis vectors keep their labels.
SubDgla subalgebra(const Dgla& g, std::span<const Vec> span, std::string name = {});

}  // namespace dgdef
