#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgdef/check.hpp"
#include "dgdef/linalg.hpp"

namespace dgdef {

/// Local Artinian k-algebra A = k ⊕ m_A given by a monomial basis of the
/// maximal ideal and its multiplication table; the unit is implicit.
class ArtinAlgebra {
public:
  ArtinAlgebra() = default;
  /// products[i][j] is the product of monomials i and j, as a vector in m_A.
  /// Throws StructureError when the table is not symmetric, associative, or
  /// nilpotent.
  ArtinAlgebra(Field f, std::vector<std::string> monomials, std::vector<std::vector<Vec>> products);

  /// The residue field itself (m_A = 0).
  static ArtinAlgebra residue_field(Field f);
  /// k[x]/(x^{n+1}), monomials x, x^2, ..., x^n.
  static ArtinAlgebra truncated_polynomial(Field f, unsigned n, const std::string& var = "x");

  Field field() const { return field_; }
  std::size_t dim() const { return monomials_.size(); }
  const std::vector<std::string>& monomials() const { return monomials_; }
  const Vec& product(std::size_t i, std::size_t j) const { return products_[i][j]; }
  Vec multiply(std::span<const Scalar> a, std::span<const Scalar> b) const;
  /// Least N with m_A^N = 0.
  unsigned nilpotency_index() const { return nilpotency_; }
  /// Basis of m_A^k (k >= 1); empty once k >= nilpotency index.
  const std::vector<Vec>& power(unsigned k) const;
  std::optional<std::size_t> index_of(const std::string& monomial) const;

  friend bool operator==(const ArtinAlgebra& a, const ArtinAlgebra& b) {
    return a.field_ == b.field_ && a.monomials_ == b.monomials_ && a.products_ == b.products_;
  }

private:
  Field field_{};
  std::vector<std::string> monomials_;
  std::vector<std::vector<Vec>> products_;
  std::vector<std::vector<Vec>> powers_;  // powers_[k-1] = basis of m^k
  unsigned nilpotency_ = 1;
};

/// Surjection p: B -> A of Artinian algebras with kernel J, m_B · J = 0.
struct SmallExtension {
  ArtinAlgebra big;        // B
  ArtinAlgebra small;      // A
  Matrix projection;       // m_B -> m_A, (dim m_A × dim m_B)
  std::vector<Vec> kernel; // basis of J inside m_B

  /// A linear section s: m_A -> m_B with p∘s = id (echelon choice).
  Matrix section() const;
};

/// Checks homomorphism, surjectivity, kernel identification and m_B·J = 0.
CheckList validate_small_extension(const SmallExtension& e);

/// k[x]/(x^{n+1}) -> k[x]/(x^n) with kernel x^n; n >= 1.
SmallExtension curvilinear(Field f, unsigned n, const std::string& var = "x");

/// k[x,y]/(x,y)² -> k[x]/(x²) with kernel y.
SmallExtension two_variable(Field f);

/// Nilpotency index of m_A.
inline unsigned nilpotency_index(const ArtinAlgebra& a) { return a.nilpotency_index(); }

/// Throws when exponential/BCH denominators are not invertible, i.e. a
/// prime field with p < nilpotency index.
void require_exp_characteristic(const ArtinAlgebra& a);

}  // namespace dgdef
