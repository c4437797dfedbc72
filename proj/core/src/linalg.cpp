#include "dgdef/linalg.hpp"

#include <stdexcept>

namespace dgdef {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

Vec zero_vec(Field f, std::size_t n) { return Vec(n, Scalar::zero(f)); }

Vec unit_vec(Field f, std::size_t n, std::size_t i) {
  Vec v = zero_vec(f, n);
  v.at(i) = Scalar::one(f);
  return v;
}

bool is_zero(std::span<const Scalar> v) {
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

Vec add(std::span<const Scalar> a, std::span<const Scalar> b) {
  require(a.size() == b.size(), "vector length mismatch");
  Vec r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Vec sub(std::span<const Scalar> a, std::span<const Scalar> b) {
  require(a.size() == b.size(), "vector length mismatch");
  Vec r(a.begin(), a.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Vec scale(const Scalar& c, std::span<const Scalar> v) {
  Vec r(v.begin(), v.end());
  for (auto& s : r) s *= c;
  return r;
}

void axpy(Vec& a, const Scalar& c, std::span<const Scalar> b) {
  require(a.size() == b.size(), "vector length mismatch");
  if (c.is_zero()) return;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b[i].is_zero()) a[i] += c * b[i];
}

std::string to_string(std::span<const Scalar> v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].to_string();
  }
  return s + ")";
}

Matrix::Matrix(Field f, std::size_t rows, std::size_t cols)
    : field_(f), rows_(rows), cols_(cols), data_(rows * cols, Scalar::zero(f)) {}

Matrix Matrix::identity(Field f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = Scalar::one(f);
  return m;
}

Matrix Matrix::from_columns(Field f, std::size_t rows, std::span<const Vec> cols) {
  Matrix m(f, rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    require(cols[c].size() == rows, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m.set(r, c, cols[c][r]);
  }
  return m;
}

Matrix Matrix::from_rows(Field f, std::size_t cols, std::span<const Vec> rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == cols, "row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m.set(r, c, rows[r][c]);
  }
  return m;
}

void Matrix::set(std::size_t r, std::size_t c, Scalar v) {
  require(r < rows_ && c < cols_, "matrix index out of range");
  if (!(v.field() == field_)) throw FieldMismatch("matrix entry from a different field");
  data_[r * cols_ + c] = std::move(v);
}

void Matrix::add_to(std::size_t r, std::size_t c, const Scalar& v) {
  require(r < rows_ && c < cols_, "matrix index out of range");
  data_[r * cols_ + c] += v;
}

Vec Matrix::column(std::size_t c) const {
  Vec v;
  v.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v.push_back((*this)(r, c));
  return v;
}

Vec Matrix::row(std::size_t r) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = (*this)(r, c);
  return t;
}

bool Matrix::is_zero() const { return dgdef::is_zero(data_); }

Vec Matrix::apply(std::span<const Scalar> v) const {
  require(v.size() == cols_, "matrix-vector dimension mismatch");
  Vec out = zero_vec(field_, rows_);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (v[c].is_zero()) continue;
    for (std::size_t r = 0; r < rows_; ++r) {
      const auto& e = (*this)(r, c);
      if (!e.is_zero()) out[r] += e * v[c];
    }
  }
  return out;
}

Matrix Matrix::operator*(const Matrix& o) const {
  require(cols_ == o.rows_, "matrix product dimension mismatch");
  if (!(field_ == o.field_)) throw FieldMismatch("matrix product across fields");
  Matrix out(field_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        const auto& b = o(k, c);
        if (!b.is_zero()) out.data_[r * o.cols_ + c] += a * b;
      }
    }
  return out;
}

Matrix Matrix::operator+(const Matrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum dimension mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += o.data_[i];
  return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
  require(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference dimension mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= o.data_[i];
  return out;
}

Matrix Matrix::scaled(const Scalar& c) const {
  Matrix out = *this;
  for (auto& e : out.data_) e *= c;
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& block) {
  require(r0 + block.rows_ <= rows_ && c0 + block.cols_ <= cols_, "block out of range");
  for (std::size_t r = 0; r < block.rows_; ++r)
    for (std::size_t c = 0; c < block.cols_; ++c) set(r0 + r, c0 + c, block(r, c));
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  require(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
  Matrix out(field_, nr, nc);
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) out.data_[r * nc + c] = (*this)(r0 + r, c0 + c);
  return out;
}

Echelon row_reduce(const Matrix& m) {
  Echelon e{m, {}};
  Matrix& a = e.reduced;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t piv = lead;
    while (piv < rows && a(piv, c).is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != lead)
      for (std::size_t k = 0; k < cols; ++k) {
        Scalar tmp = a(lead, k);
        a.set(lead, k, a(piv, k));
        a.set(piv, k, tmp);
      }
    Scalar inv = a(lead, c).inverse();
    for (std::size_t k = c; k < cols; ++k)
      if (!a(lead, k).is_zero()) a.set(lead, k, a(lead, k) * inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || a(r, c).is_zero()) continue;
      Scalar factor = a(r, c);
      for (std::size_t k = c; k < cols; ++k)
        if (!a(lead, k).is_zero()) a.set(r, k, a(r, k) - factor * a(lead, k));
    }
    e.pivot_cols.push_back(c);
    ++lead;
  }
  return e;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).pivot_cols.size(); }

std::vector<Vec> kernel_basis(const Matrix& m) {
  const Field f = m.field();
  Echelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v = zero_vec(f, m.cols());
    v[free] = Scalar::one(f);
    for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) v[e.pivot_cols[i]] = -e.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Solution> solve(const Matrix& m, std::span<const Scalar> b) {
  require(b.size() == m.rows(), "right-hand side dimension mismatch");
  const Field f = m.field();
  Matrix aug(f, m.rows(), m.cols() + 1);
  aug.set_block(0, 0, m);
  for (std::size_t r = 0; r < m.rows(); ++r) aug.set(r, m.cols(), b[r]);
  Echelon e = row_reduce(aug);
  if (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols()) return std::nullopt;
  Solution s{zero_vec(f, m.cols()), {}};
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) s.particular[e.pivot_cols[i]] = e.reduced(i, m.cols());
  s.kernel = kernel_basis(m);
  return s;
}

std::vector<Vec> independent_subset(Field f, std::size_t dim, std::span<const Vec> vectors) {
  if (vectors.empty()) return {};
  Matrix m = Matrix::from_columns(f, dim, vectors);
  Echelon e = row_reduce(m);
  std::vector<Vec> out;
  for (auto c : e.pivot_cols) out.push_back(vectors[c]);
  return out;
}

std::vector<Vec> span_basis(Field f, std::size_t dim, std::span<const Vec> vectors) {
  if (vectors.empty()) return {};
  Matrix m = Matrix::from_rows(f, dim, vectors);
  Echelon e = row_reduce(m);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < e.pivot_cols.size(); ++i) out.push_back(e.reduced.row(i));
  return out;
}

std::vector<Vec> quotient_representatives(Field f, std::span<const Vec> sub, std::size_t dim) {
  for (const auto& v : sub) require(v.size() == dim, "subspace vector dimension mismatch");
  std::vector<bool> covered(dim, false);
  if (!sub.empty()) {
    Echelon e = row_reduce(Matrix::from_rows(f, dim, sub));
    for (auto c : e.pivot_cols) covered[c] = true;
  }
  std::vector<Vec> reps;
  for (std::size_t i = 0; i < dim; ++i)
    if (!covered[i]) reps.push_back(unit_vec(f, dim, i));
  return reps;
}

std::vector<Vec> intersect(Field f, std::size_t dim, std::span<const Vec> a, std::span<const Vec> b) {
  auto ba = span_basis(f, dim, a);
  auto bb = span_basis(f, dim, b);
  if (ba.empty() || bb.empty()) return {};
  // Solve sum x_i a_i - sum y_j b_j = 0.
  Matrix m(f, dim, ba.size() + bb.size());
  for (std::size_t i = 0; i < ba.size(); ++i)
    for (std::size_t r = 0; r < dim; ++r) m.set(r, i, ba[i][r]);
  for (std::size_t j = 0; j < bb.size(); ++j)
    for (std::size_t r = 0; r < dim; ++r) m.set(r, ba.size() + j, -bb[j][r]);
  std::vector<Vec> out;
  for (const auto& k : kernel_basis(m)) {
    Vec v = zero_vec(f, dim);
    for (std::size_t i = 0; i < ba.size(); ++i) axpy(v, k[i], ba[i]);
    out.push_back(std::move(v));
  }
  return span_basis(f, dim, out);
}

bool in_span(Field f, std::span<const Vec> basis, std::span<const Scalar> v) {
  if (is_zero(v)) return true;
  if (basis.empty()) return false;
  Matrix m = Matrix::from_columns(f, v.size(), basis);
  return solve(m, v).has_value();
}

SubspaceCoords::SubspaceCoords(Field f, std::size_t dim, std::vector<Vec> basis)
    : field_(f), dim_(dim), basis_(std::move(basis)) {
  const std::size_t k = basis_.size();
  Matrix aug(f, dim, k + dim);
  for (std::size_t c = 0; c < k; ++c) {
    require(basis_[c].size() == dim, "basis vector dimension mismatch");
    for (std::size_t r = 0; r < dim; ++r) aug.set(r, c, basis_[c][r]);
  }
  for (std::size_t r = 0; r < dim; ++r) aug.set(r, k + r, Scalar::one(f));
  echelon_ = row_reduce(aug);
  std::size_t basis_pivots = 0;
  for (auto c : echelon_.pivot_cols)
    if (c < k) ++basis_pivots;
  require(basis_pivots == k, "subspace basis is not linearly independent");
  basis_matrix_ = echelon_.reduced.block(0, k, dim, dim);
}

std::optional<Vec> SubspaceCoords::coords(std::span<const Scalar> v) const {
  require(v.size() == dim_, "vector dimension mismatch");
  Vec t = basis_matrix_.apply(v);
  for (std::size_t i = basis_.size(); i < dim_; ++i)
    if (!t[i].is_zero()) return std::nullopt;
  t.resize(basis_.size());
  return t;
}

Vec SubspaceCoords::embed(std::span<const Scalar> c) const {
  require(c.size() == basis_.size(), "coordinate length mismatch");
  Vec v = zero_vec(field_, dim_);
  for (std::size_t i = 0; i < c.size(); ++i) axpy(v, c[i], basis_[i]);
  return v;
}

QuotientMap::QuotientMap(Field f, std::size_t dim, std::span<const Vec> sub)
    : dim_(dim), sub_(span_basis(f, dim, sub)), reps_(quotient_representatives(f, sub_, dim)) {
  std::vector<Vec> all = sub_;
  all.insert(all.end(), reps_.begin(), reps_.end());
  SubspaceCoords full(f, dim, all);
  proj_ = Matrix(f, reps_.size(), dim);
  for (std::size_t c = 0; c < dim; ++c) {
    Vec coords = *full.coords(unit_vec(f, dim, c));
    for (std::size_t i = 0; i < reps_.size(); ++i) proj_.set(i, c, coords[sub_.size() + i]);
  }
}

Vec QuotientMap::project(std::span<const Scalar> v) const { return proj_.apply(v); }

}  // namespace dgdef
