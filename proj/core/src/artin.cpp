#include "dgdef/artin.hpp"

namespace dgdef {

ArtinAlgebra::ArtinAlgebra(Field f, std::vector<std::string> monomials, std::vector<std::vector<Vec>> products)
    : field_(f), monomials_(std::move(monomials)), products_(std::move(products)) {
  const std::size_t n = monomials_.size();
  if (products_.size() != n) throw StructureError("multiplication table has wrong size");
  for (std::size_t i = 0; i < n; ++i) {
    if (products_[i].size() != n) throw StructureError("multiplication table has wrong size");
    for (auto& v : products_[i]) {
      if (v.empty()) v = zero_vec(f, n);
      if (v.size() != n) throw StructureError("product vector has wrong length");
      for (const auto& s : v)
        if (!(s.field() == f)) throw FieldMismatch("product table over a different field");
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (products_[i][j] != products_[j][i])
        throw StructureError("multiplication not commutative on " + monomials_[i] + "*" + monomials_[j]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Vec left = multiply(products_[i][j], unit_vec(f, n, k));
        Vec right = multiply(unit_vec(f, n, i), products_[j][k]);
        if (left != right)
          throw StructureError("multiplication not associative on (" + monomials_[i] + "," + monomials_[j] + "," +
                               monomials_[k] + ")");
      }
  std::vector<Vec> current;
  for (std::size_t i = 0; i < n; ++i) current.push_back(unit_vec(f, n, i));
  while (!current.empty()) {
    powers_.push_back(current);
    if (powers_.size() > n + 1) throw StructureError("maximal ideal is not nilpotent");
    std::vector<Vec> next;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& v : current) next.push_back(multiply(unit_vec(f, n, i), v));
    current = span_basis(f, n, next);
    if (current.size() == powers_.back().size()) throw StructureError("maximal ideal is not nilpotent");
  }
  nilpotency_ = static_cast<unsigned>(powers_.size()) + 1;
}

ArtinAlgebra ArtinAlgebra::residue_field(Field f) { return ArtinAlgebra(f, {}, {}); }

ArtinAlgebra ArtinAlgebra::truncated_polynomial(Field f, unsigned n, const std::string& var) {
  std::vector<std::string> mons;
  for (unsigned k = 1; k <= n; ++k) mons.push_back(k == 1 ? var : var + "^" + std::to_string(k));
  std::vector<std::vector<Vec>> table(n, std::vector<Vec>(n, zero_vec(f, n)));
  for (unsigned i = 1; i <= n; ++i)
    for (unsigned j = 1; j <= n; ++j)
      if (i + j <= n) table[i - 1][j - 1][i + j - 1] = Scalar::one(f);
  return ArtinAlgebra(f, std::move(mons), std::move(table));
}

Vec ArtinAlgebra::multiply(std::span<const Scalar> a, std::span<const Scalar> b) const {
  const std::size_t n = dim();
  Vec out = zero_vec(field_, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j].is_zero()) continue;
      axpy(out, a[i] * b[j], products_[i][j]);
    }
  }
  return out;
}

const std::vector<Vec>& ArtinAlgebra::power(unsigned k) const {
  static const std::vector<Vec> empty;
  if (k == 0) throw std::invalid_argument("power index must be >= 1");
  return k <= powers_.size() ? powers_[k - 1] : empty;
}

std::optional<std::size_t> ArtinAlgebra::index_of(const std::string& monomial) const {
  for (std::size_t i = 0; i < monomials_.size(); ++i)
    if (monomials_[i] == monomial) return i;
  return std::nullopt;
}

Matrix SmallExtension::section() const {
  const Field f = big.field();
  Matrix s(f, big.dim(), small.dim());
  for (std::size_t a = 0; a < small.dim(); ++a) {
    auto sol = solve(projection, unit_vec(f, small.dim(), a));
    if (!sol) throw StructureError("projection is not surjective");
    for (std::size_t r = 0; r < big.dim(); ++r) s.set(r, a, sol->particular[r]);
  }
  return s;
}

CheckList validate_small_extension(const SmallExtension& e) {
  CheckList report;
  const Field f = e.big.field();
  const std::size_t nb = e.big.dim(), na = e.small.dim();
  if (!(e.small.field() == f) || e.projection.rows() != na || e.projection.cols() != nb) {
    report.fail("shape", "projection must be dim m_A × dim m_B over a common field");
    return report;
  }
  std::string hom_witness;
  for (std::size_t i = 0; i < nb && hom_witness.empty(); ++i)
    for (std::size_t j = i; j < nb && hom_witness.empty(); ++j) {
      Vec lhs = e.projection.apply(e.big.product(i, j));
      Vec rhs = e.small.multiply(e.projection.column(i), e.projection.column(j));
      if (lhs != rhs) hom_witness = "p(" + e.big.monomials()[i] + "*" + e.big.monomials()[j] + ") ≠ p·p";
    }
  report.add("homomorphism", hom_witness.empty(), hom_witness);
  report.add("surjective", rank(e.projection) == na,
             "rank " + std::to_string(rank(e.projection)) + " < dim m_A = " + std::to_string(na));

  auto ker = kernel_basis(e.projection);
  bool kernel_ok = ker.size() == span_basis(f, nb, e.kernel).size();
  std::string kernel_witness;
  for (const auto& v : e.kernel)
    if (!is_zero(e.projection.apply(v))) {
      kernel_ok = false;
      kernel_witness = "J element " + to_string(v) + " not killed by p";
    }
  for (const auto& v : ker)
    if (!in_span(f, e.kernel, v)) {
      kernel_ok = false;
      kernel_witness = "ker p element " + to_string(v) + " outside span(J)";
    }
  if (!kernel_ok && kernel_witness.empty()) kernel_witness = "dim ker p ≠ dim J";
  report.add("kernel", kernel_ok, kernel_witness);

  std::string square_zero;
  for (std::size_t i = 0; i < nb && square_zero.empty(); ++i)
    for (const auto& j : e.kernel) {
      Vec prod = e.big.multiply(unit_vec(f, nb, i), j);
      if (!is_zero(prod)) {
        square_zero = e.big.monomials()[i] + " · " + to_string(j) + " = " + to_string(prod) + " ≠ 0";
        break;
      }
    }
  report.add("m_B*J=0", square_zero.empty(), square_zero);
  return report;
}

SmallExtension curvilinear(Field f, unsigned n, const std::string& var) {
  if (n < 1) throw std::invalid_argument("curvilinear order must be >= 1");
  ArtinAlgebra big = ArtinAlgebra::truncated_polynomial(f, n, var);
  ArtinAlgebra small = ArtinAlgebra::truncated_polynomial(f, n - 1, var);
  Matrix p(f, n - 1, n);
  for (unsigned i = 0; i + 1 < n; ++i) p.set(i, i, Scalar::one(f));
  return SmallExtension{std::move(big), std::move(small), std::move(p), {unit_vec(f, n, n - 1)}};
}

SmallExtension two_variable(Field f) {
  std::vector<std::vector<Vec>> table(2, std::vector<Vec>(2, zero_vec(f, 2)));
  ArtinAlgebra big(f, {"x", "y"}, table);
  Matrix p(f, 1, 2);
  p.set(0, 0, Scalar::one(f));
  return SmallExtension{std::move(big), ArtinAlgebra::truncated_polynomial(f, 1), std::move(p), {unit_vec(f, 2, 1)}};
}

void require_exp_characteristic(const ArtinAlgebra& a) {
  const auto p = a.field().characteristic();
  // Nonzero words have length < N, so denominators up to (N-1)! occur.
  if (p != 0 && p < a.nilpotency_index())
    throw std::domain_error("characteristic " + std::to_string(p) + " is below the nilpotency index " +
                            std::to_string(a.nilpotency_index()));
}

}  // namespace dgdef
