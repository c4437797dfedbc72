#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dgdef/field.hpp"

namespace dgdef {

/// Raised for malformed complexes, maps that fail to commute with
/// differentials, and similar structural violations.
class StructureError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

using Vec = std::vector<Scalar>;

Vec zero_vec(Field f, std::size_t n);
Vec unit_vec(Field f, std::size_t n, std::size_t i);
bool is_zero(std::span<const Scalar> v);
Vec add(std::span<const Scalar> a, std::span<const Scalar> b);
Vec sub(std::span<const Scalar> a, std::span<const Scalar> b);
Vec scale(const Scalar& c, std::span<const Scalar> v);
/// a += c * b
void axpy(Vec& a, const Scalar& c, std::span<const Scalar> b);
std::string to_string(std::span<const Scalar> v);

/// Dense exact matrix. Every entry belongs to the matrix field.
class Matrix {
public:
  Matrix() = default;
  Matrix(Field f, std::size_t rows, std::size_t cols);

  static Matrix identity(Field f, std::size_t n);
  /// Columns given as vectors of length `rows`.
  static Matrix from_columns(Field f, std::size_t rows, std::span<const Vec> cols);
  static Matrix from_rows(Field f, std::size_t cols, std::span<const Vec> rows);

  Field field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Scalar v);
  void add_to(std::size_t r, std::size_t c, const Scalar& v);

  Vec column(std::size_t c) const;
  Vec row(std::size_t r) const;
  Matrix transpose() const;
  bool is_zero() const;

  Vec apply(std::span<const Scalar> v) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix scaled(const Scalar& c) const;
  friend bool operator==(const Matrix& a, const Matrix& b);

  /// Copies `block` with its top-left corner at (r0, c0).
  void set_block(std::size_t r0, std::size_t c0, const Matrix& block);
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;

private:
  Field field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form; pivot = first nonzero entry of each column
/// scanning rows top-down.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivot_cols;
};

Echelon row_reduce(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Linearly independent vectors spanning ker(m); one per free column.
std::vector<Vec> kernel_basis(const Matrix& m);

struct Solution {
  Vec particular;
  std::vector<Vec> kernel;
};

/// Solves m x = b exactly; std::nullopt when inconsistent. The particular
/// solution sets every free variable to zero.
std::optional<Solution> solve(const Matrix& m, std::span<const Scalar> b);

/// Basis of span(vectors) extracted from the given vectors (first maximal
/// independent prefix-greedy subset).
std::vector<Vec> independent_subset(Field f, std::size_t dim, std::span<const Vec> vectors);
/// Reduced basis of span(vectors).
std::vector<Vec> span_basis(Field f, std::size_t dim, std::span<const Vec> vectors);
/// Standard basis vectors completing span(sub) to the ambient space.
std::vector<Vec> quotient_representatives(Field f, std::span<const Vec> sub, std::size_t dim);
/// Basis of span(a) ∩ span(b).
std::vector<Vec> intersect(Field f, std::size_t dim, std::span<const Vec> a, std::span<const Vec> b);
/// Whether v lies in span(basis).
bool in_span(Field f, std::span<const Vec> basis, std::span<const Scalar> v);

/// Coordinates of vectors in a fixed subspace basis, used to express
/// elements and maps relative to a chosen basis.
class SubspaceCoords {
public:
  SubspaceCoords() = default;
  SubspaceCoords(Field f, std::size_t dim, std::vector<Vec> basis);

  std::size_t size() const { return basis_.size(); }
  std::size_t ambient() const { return dim_; }
  const std::vector<Vec>& basis() const { return basis_; }
  /// Coordinates of v; std::nullopt when v is outside the span.
  std::optional<Vec> coords(std::span<const Scalar> v) const;
  Vec embed(std::span<const Scalar> c) const;

private:
  Field field_{};
  std::size_t dim_ = 0;
  std::vector<Vec> basis_;
  Matrix basis_matrix_;
  Echelon echelon_;  // of [basis | I]^T style system
};

/// Decomposition V = span(sub) ⊕ span(complement) with projection onto the
/// complement coordinates (the quotient V / sub).
class QuotientMap {
public:
  QuotientMap() = default;
  QuotientMap(Field f, std::size_t dim, std::span<const Vec> sub);

  std::size_t quotient_dim() const { return reps_.size(); }
  std::size_t ambient() const { return dim_; }
  const std::vector<Vec>& representatives() const { return reps_; }
  const std::vector<Vec>& sub_basis() const { return sub_; }
  /// Coordinates of the class of v in the representative basis.
  Vec project(std::span<const Scalar> v) const;
  /// The projection as a (quotient_dim × dim) matrix.
  const Matrix& matrix() const { return proj_; }

private:
  std::size_t dim_ = 0;
  std::vector<Vec> sub_;
  std::vector<Vec> reps_;
  Matrix proj_;
};

}  // namespace dgdef
