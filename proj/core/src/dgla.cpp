#include "dgdef/dgla.hpp"


namespace dgdef {

namespace {

Scalar sign(Field f, long e) { return (e % 2 == 0) ? Scalar::one(f) : Scalar(f, -1); }

SparseVec sparsify(std::span<const Scalar> v) {
  SparseVec s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return s;
}

void accumulate(Vec& out, const Scalar& c, const SparseVec& s) {
  for (const auto& [i, v] : s) out[i] = out[i] + c * v;
}

}  // namespace

Dgla::Dgla(Field f, GradedSpace space, Matrix differential, const std::vector<BracketEntry>& brackets,
           std::string name)
    : name_(std::move(name)), field_(f), space_(std::move(space)), d_(std::move(differential)) {
  const std::size_t n = space_.size();
  if (d_.rows() == 0 && d_.cols() == 0 && n > 0) d_ = Matrix(f, n, n);
  if (d_.rows() != n || d_.cols() != n) throw StructureError("differential has wrong shape");
  if (n > 0 && !(d_.field() == f)) throw FieldMismatch("differential over a different field");
  table_.assign(n * n, {});
  std::vector<bool> given(n * n, false);
  for (const auto& e : brackets) {
    if (e.left >= n || e.right >= n) throw StructureError("bracket index out of range");
    if (e.value.size() != n) throw StructureError("bracket value has wrong length");
    for (const auto& s : e.value)
      if (!(s.field() == f)) throw FieldMismatch("bracket value over a different field");
    const std::size_t at = e.left * n + e.right;
    if (given[at])
      throw StructureError("bracket [" + space_.label(e.left) + "," + space_.label(e.right) + "] given twice");
    given[at] = true;
    table_[at] = sparsify(e.value);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || given[i * n + j] || !given[j * n + i]) continue;
      const Scalar c = -sign(f, static_cast<long>(degree(i)) * degree(j));
      SparseVec s = table_[j * n + i];
      for (auto& entry : s) entry.second = c * entry.second;
      table_[i * n + j] = std::move(s);
    }
}

Dgla Dgla::abelian(Field f, GradedSpace space, std::string name) {
  const std::size_t n = space.size();
  return Dgla(f, std::move(space), Matrix(f, n, n), {}, std::move(name));
}

Vec Dgla::bracket(std::span<const Scalar> x, std::span<const Scalar> y) const {
  const std::size_t n = size();
  if (x.size() != n || y.size() != n) throw std::invalid_argument("bracket operand has wrong length");
  Vec out = zero();
  std::vector<std::size_t> ys;
  for (std::size_t j = 0; j < n; ++j)
    if (!y[j].is_zero()) ys.push_back(j);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j : ys) {
      const auto& s = table_[i * n + j];
      if (!s.empty()) accumulate(out, x[i] * y[j], s);
    }
  }
  return out;
}

Vec Dgla::basis_bracket(std::size_t i, std::size_t j) const {
  Vec out = zero();
  accumulate(out, Scalar::one(field_), table_.at(i * size() + j));
  return out;
}

bool Dgla::is_abelian() const {
  for (const auto& s : table_)
    if (!s.empty()) return false;
  return true;
}

std::optional<int> Dgla::homogeneous_degree(std::span<const Scalar> x) const {
  std::optional<int> deg;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    if (deg && *deg != degree(i)) return std::nullopt;
    deg = degree(i);
  }
  return deg;
}

std::vector<BracketEntry> Dgla::canonical_brackets() const {
  std::vector<BracketEntry> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!table_[i * n + j].empty()) out.push_back({i, j, basis_bracket(i, j)});
  return out;
}

CheckList validate_dgla(const Dgla& g) {
  CheckList report;
  const std::size_t n = g.size();
  const Field f = g.field();
  const GradedSpace& sp = g.space();
  auto e = [&](std::size_t i) { return unit_vec(f, n, i); };
  // [x, e_j] and [e_i, y] touching only the nonzero coordinates of x or y.
  auto bracket_left = [&](std::span<const Scalar> x, std::size_t j) {
    Vec out = zero_vec(f, n);
    for (std::size_t k = 0; k < n; ++k)
      if (!x[k].is_zero()) accumulate(out, x[k], g.basis_bracket_sparse(k, j));
    return out;
  };
  auto bracket_right = [&](std::size_t i, std::span<const Scalar> y) {
    Vec out = zero_vec(f, n);
    for (std::size_t k = 0; k < n; ++k)
      if (!y[k].is_zero()) accumulate(out, y[k], g.basis_bracket_sparse(i, k));
    return out;
  };

  std::string witness;
  if (auto bad = degree_violation(g.differential(), sp, sp, 1))
    witness = "d(" + sp.label(bad->second) + ") has a component on " + sp.label(bad->first) + " of degree " +
              std::to_string(sp.degree(bad->first));
  for (std::size_t i = 0; i < n && witness.empty(); ++i)
    for (std::size_t j = 0; j < n && witness.empty(); ++j)
      for (const auto& [k, c] : g.basis_bracket_sparse(i, j))
        if (sp.degree(k) != g.degree(i) + g.degree(j)) {
          witness = "[" + sp.label(i) + "," + sp.label(j) + "] has a component on " + sp.label(k) + " of degree " +
                    std::to_string(sp.degree(k));
          break;
        }
  report.add("degrees", witness.empty(), witness);

  witness.clear();
  for (std::size_t i = 0; i < n && witness.empty(); ++i) {
    Vec dd = g.d(g.d(e(i)));
    if (!is_zero(dd)) witness = "d(d(" + sp.label(i) + ")) = " + format_vector(sp, dd);
  }
  report.add("d^2=0", witness.empty(), witness);

  witness.clear();
  for (std::size_t i = 0; i < n && witness.empty(); ++i) {
    if (g.degree(i) % 2 == 0 && !g.basis_bracket_sparse(i, i).empty())
      witness = "[" + sp.label(i) + "," + sp.label(i) + "] = " + format_vector(sp, g.basis_bracket(i, i)) +
                " for an even element";
    for (std::size_t j = i + 1; j < n && witness.empty(); ++j) {
      Vec ab = g.basis_bracket(i, j);
      Vec ba = g.basis_bracket(j, i);
      Vec expected = scale(-sign(f, static_cast<long>(g.degree(i)) * g.degree(j)), ba);
      if (ab != expected)
        witness = "[" + sp.label(i) + "," + sp.label(j) + "] = " + format_vector(sp, ab) + " but [" + sp.label(j) + "," +
                  sp.label(i) + "] = " + format_vector(sp, ba);
    }
  }
  report.add("antisymmetry", witness.empty(), witness);

  witness.clear();
  std::vector<Vec> dbasis(n);
  for (std::size_t i = 0; i < n; ++i) dbasis[i] = g.d(e(i));
  for (std::size_t i = 0; i < n && witness.empty() && !g.is_abelian(); ++i)
    for (std::size_t j = 0; j < n && witness.empty(); ++j) {
      Vec lhs = g.d(g.basis_bracket(i, j));
      Vec rhs = bracket_left(dbasis[i], j);
      axpy(rhs, sign(f, g.degree(i)), bracket_right(i, dbasis[j]));
      if (lhs != rhs)
        witness = "d[" + sp.label(i) + "," + sp.label(j) + "] = " + format_vector(sp, lhs) + " but [d" + sp.label(i) +
                  "," + sp.label(j) + "] ± [" + sp.label(i) + ",d" + sp.label(j) + "] = " + format_vector(sp, rhs);
    }
  report.add("leibniz", witness.empty(), witness);

  witness.clear();
  if (!g.is_abelian()) {
    std::vector<std::vector<bool>> nonzero(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) nonzero[i][j] = !g.basis_bracket_sparse(i, j).empty();
    for (std::size_t a = 0; a < n && witness.empty(); ++a)
      for (std::size_t b = 0; b < n && witness.empty(); ++b)
        for (std::size_t c = 0; c < n && witness.empty(); ++c) {
          if (!nonzero[b][c] && !nonzero[a][b] && !nonzero[a][c]) continue;
          Vec lhs = bracket_right(a, g.basis_bracket(b, c));
          Vec rhs = bracket_left(g.basis_bracket(a, b), c);
          axpy(rhs, sign(f, static_cast<long>(g.degree(a)) * g.degree(b)), bracket_right(b, g.basis_bracket(a, c)));
          if (lhs != rhs)
            witness = "[" + sp.label(a) + ",[" + sp.label(b) + "," + sp.label(c) + "]] = " + format_vector(sp, lhs) +
                      " but [[" + sp.label(a) + "," + sp.label(b) + "]," + sp.label(c) + "] ± [" + sp.label(b) +
                      ",[" + sp.label(a) + "," + sp.label(c) + "]] = " + format_vector(sp, rhs);
        }
  }
  report.add("jacobi", witness.empty(), witness);
  return report;
}

CheckList DglaMorphism::check(const Dgla& source, const Dgla& target, const Matrix& m) {
  CheckList report;
  if (m.rows() != target.size() || m.cols() != source.size() ||
      (m.rows() * m.cols() > 0 && !(m.field() == target.field())) || !(source.field() == target.field())) {
    report.fail("shape", "matrix must be " + std::to_string(target.size()) + "×" + std::to_string(source.size()) +
                             " over " + target.field().name());
    return report;
  }
  report.pass("shape");
  std::string witness;
  if (auto bad = degree_violation(m, target.space(), source.space(), 0))
    witness = source.space().label(bad->second) + " maps onto " + target.space().label(bad->first) +
              " of a different degree";
  report.add("degree", witness.empty(), witness);

  witness.clear();
  const Matrix lhs = m * source.differential();
  const Matrix rhs = target.differential() * m;
  for (std::size_t c = 0; c < source.size() && witness.empty(); ++c)
    if (lhs.column(c) != rhs.column(c)) witness = "φ(d " + source.space().label(c) + ") ≠ d φ(" +
                                                  source.space().label(c) + ")";
  report.add("differential", witness.empty(), witness);

  witness.clear();
  if (source.is_abelian() && target.is_abelian()) {
    report.pass("bracket");
    return report;
  }
  std::vector<Vec> images(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) images[i] = m.column(i);
  for (std::size_t i = 0; i < source.size() && witness.empty(); ++i)
    for (std::size_t j = i; j < source.size() && witness.empty(); ++j) {
      Vec a = m.apply(source.basis_bracket(i, j));
      Vec b = target.bracket(images[i], images[j]);
      if (a != b)
        witness = "φ[" + source.space().label(i) + "," + source.space().label(j) + "] = " +
                  format_vector(target.space(), a) + " but [φ,φ] = " + format_vector(target.space(), b);
    }
  report.add("bracket", witness.empty(), witness);
  return report;
}

DglaMorphism::DglaMorphism(DglaPtr source, DglaPtr target, Matrix m)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(m)) {
  if (!source_ || !target_) throw StructureError("morphism needs a source and target");
  if (m_.rows() == 0 && m_.cols() == 0) m_ = Matrix(target_->field(), target_->size(), source_->size());
  CheckList report = check(*source_, *target_, m_);
  for (const auto& c : report.checks())
    if (!c.passed) throw StructureError("not a DGLA morphism (" + c.name + "): " + c.witness);
}

namespace {
bool same_dgla(const Dgla& a, const Dgla& b) {
  return &a == &b || (a.space() == b.space() && a.differential() == b.differential() &&
                      a.canonical_brackets().size() == b.canonical_brackets().size());
}
}  // namespace

PairDiagram::PairDiagram(DglaMorphism h, DglaMorphism g) : h_(std::move(h)), g_(std::move(g)) {
  if (!h_.target() || !g_.target()) throw StructureError("empty morphism in pair diagram");
  if (!same_dgla(*h_.target(), *g_.target())) throw StructureError("h and g must share the target M");
  for (int d : m().space().degrees())
    if (d < 0) throw StructureError("M must be concentrated in degrees >= 0");
}

PairCone PairDiagram::cone() const {
  return pair_cone(l().complex(), n().complex(), m().complex(), h_.matrix(), g_.matrix());
}

DiagramMorphism::DiagramMorphism(PairDiagram source, PairDiagram target, Matrix alpha_l, Matrix alpha_m,
                                 Matrix alpha_n)
    : source_(std::move(source)),
      target_(std::move(target)),
      alpha_l_(std::move(alpha_l)),
      alpha_m_(std::move(alpha_m)),
      alpha_n_(std::move(alpha_n)) {
  const std::pair<const char*, std::tuple<const Dgla*, const Dgla*, const Matrix*>> parts[] = {
      {"α'", {&source_.l(), &target_.l(), &alpha_l_}},
      {"α", {&source_.m(), &target_.m(), &alpha_m_}},
      {"α''", {&source_.n(), &target_.n(), &alpha_n_}}};
  for (const auto& [name, p] : parts) {
    auto [s, t, m] = p;
    for (const auto& c : DglaMorphism::check(*s, *t, *m).checks())
      if (!c.passed) throw StructureError(std::string(name) + " is not a DGLA morphism (" + c.name + "): " + c.witness);
  }
  if (target_.h().matrix() * alpha_l_ != alpha_m_ * source_.h().matrix())
    throw StructureError("square does not commute: η∘α' ≠ α∘h");
  if (target_.g().matrix() * alpha_n_ != alpha_m_ * source_.g().matrix())
    throw StructureError("square does not commute: μ∘α'' ≠ α∘g");
}

DiagramMorphism DiagramMorphism::identity(const PairDiagram& d) {
  const Field f = d.field();
  return DiagramMorphism(d, d, Matrix::identity(f, d.l().size()), Matrix::identity(f, d.m().size()),
                         Matrix::identity(f, d.n().size()));
}

DiagramMorphism DiagramMorphism::then(const DiagramMorphism& next) const {
  return DiagramMorphism(source_, next.target_, next.alpha_l_ * alpha_l_, next.alpha_m_ * alpha_m_,
                         next.alpha_n_ * alpha_n_);
}

ChainMap induced_cone_map(const DiagramMorphism& dm) {
  return cone_morphism(dm.source().cone(), dm.target().cone(), dm.alpha_l(), dm.alpha_n(), dm.alpha_m());
}

Matrix tensor_identity(const Matrix& m, std::size_t k) {
  Matrix out(m.field(), m.rows() * k, m.cols() * k);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (m(r, c).is_zero()) continue;
      for (std::size_t j = 0; j < k; ++j) out.set(r * k + j, c * k + j, m(r, c));
    }
  return out;
}

Dgla tensor_with_ideal(const Dgla& g, const ArtinAlgebra& a) {
  const Field f = g.field();
  if (!(a.field() == f)) throw FieldMismatch("DGLA and Artin algebra over different fields");
  const std::size_t n = g.size(), k = a.dim();
  std::vector<std::pair<std::string, int>> basis;
  basis.reserve(n * k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) basis.emplace_back(g.space().label(i) + "⊗" + a.monomials()[j], g.degree(i));
  std::vector<BracketEntry> entries;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      const auto& s = g.basis_bracket_sparse(i, i2);
      if (s.empty()) continue;
      for (std::size_t j = 0; j < k; ++j)
        for (std::size_t j2 = 0; j2 < k; ++j2) {
          const Vec& mu = a.product(j, j2);
          if (is_zero(mu)) continue;
          Vec value = zero_vec(f, n * k);
          for (const auto& [r, c] : s)
            for (std::size_t t = 0; t < k; ++t)
              if (!mu[t].is_zero()) value[r * k + t] = value[r * k + t] + c * mu[t];
          entries.push_back({i * k + j, i2 * k + j2, std::move(value)});
        }
    }
  std::string name = g.name().empty() ? std::string() : g.name() + "⊗m";
  return Dgla(f, GradedSpace(std::move(basis)), tensor_identity(g.differential(), k), entries, std::move(name));
}

}  // namespace dgdef

namespace dgdef {

QuotientDgla quotient_by_ideal(const Dgla& g, std::span<const Vec> ideal) {
  const Field f = g.field();
  const std::size_t n = g.size();
  std::vector<Vec> basis = span_basis(f, n, ideal);
  for (const auto& v : basis) {
    for (int deg : g.space().support()) {
      Vec part = zero_vec(f, n);
      for (std::size_t i : g.space().indices(deg)) part[i] = v[i];
      if (!in_span(f, basis, part)) throw StructureError("ideal is not a graded subspace");
    }
    if (!in_span(f, basis, g.d(v))) throw StructureError("ideal is not closed under d: " + format_vector(g.space(), v));
    for (std::size_t i = 0; i < n; ++i)
      if (!in_span(f, basis, g.bracket(unit_vec(f, n, i), v)))
        throw StructureError("not a bracket ideal: [" + g.space().label(i) + ", " + format_vector(g.space(), v) +
                             "] leaves it");
  }
  QuotientMap q(f, n, basis);
  std::vector<std::size_t> keep;
  for (const auto& r : q.representatives())
    for (std::size_t i = 0; i < n; ++i)
      if (!r[i].is_zero()) keep.push_back(i);
  std::vector<std::pair<std::string, int>> labels;
  for (std::size_t i : keep) labels.emplace_back(g.space().label(i), g.degree(i));
  const std::size_t k = keep.size();
  Matrix d(f, k, k);
  for (std::size_t c = 0; c < k; ++c) {
    Vec img = q.project(g.d(unit_vec(f, n, keep[c])));
    for (std::size_t r = 0; r < k; ++r) d.set(r, c, img[r]);
  }
  std::vector<BracketEntry> entries;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      const auto& s = g.basis_bracket_sparse(keep[a], keep[b]);
      if (s.empty()) continue;
      Vec img = q.project(g.basis_bracket(keep[a], keep[b]));
      if (!is_zero(img)) entries.push_back({a, b, std::move(img)});
    }
  auto quotient = std::make_shared<const Dgla>(f, GradedSpace(labels), d, entries, g.name().empty() ? "" : g.name() + "/I");
  return {quotient, q.matrix()};
}

SubDgla subalgebra(const Dgla& g, std::span<const Vec> span, std::string name) {
  const Field f = g.field();
  const std::size_t n = g.size();
  std::vector<Vec> basis;
  for (int deg : g.space().support()) {
    std::vector<Vec> parts;
    for (const auto& v : span) {
      Vec part = zero_vec(f, n);
      for (std::size_t i : g.space().indices(deg)) part[i] = v[i];
      if (!is_zero(part)) parts.push_back(std::move(part));
    }
    for (auto& b : span_basis(f, n, parts)) basis.push_back(std::move(b));
  }
  SubspaceCoords coords(f, n, basis);
  for (const auto& v : span)
    if (!coords.coords(v)) throw StructureError("subspace is not graded: " + format_vector(g.space(), v));
  const std::size_t k = basis.size();
  std::vector<std::pair<std::string, int>> labels;
  for (const auto& b : basis) {
    std::optional<std::size_t> only;
    std::size_t nonzero = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (!b[i].is_zero()) {
        ++nonzero;
        only = i;
      }
    const int deg = *g.homogeneous_degree(b);
    if (nonzero == 1 && b[*only] == Scalar::one(f))
      labels.emplace_back(g.space().label(*only), deg);
    else
      labels.emplace_back("(" + format_vector(g.space(), b) + ")", deg);
  }
  Matrix d(f, k, k);
  for (std::size_t c = 0; c < k; ++c) {
    auto img = coords.coords(g.d(basis[c]));
    if (!img) throw StructureError("subspace is not closed under d: " + format_vector(g.space(), basis[c]));
    for (std::size_t r = 0; r < k; ++r) d.set(r, c, (*img)[r]);
  }
  std::vector<BracketEntry> entries;
  if (!g.is_abelian())
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = a; b < k; ++b) {
        Vec br = g.bracket(basis[a], basis[b]);
        if (is_zero(br)) continue;
        auto img = coords.coords(br);
        if (!img)
          throw StructureError("subspace is not closed under the bracket: [" + format_vector(g.space(), basis[a]) + ", " +
                               format_vector(g.space(), basis[b]) + "]");
        entries.push_back({a, b, std::move(*img)});
      }
  auto sub = std::make_shared<const Dgla>(f, GradedSpace(labels), d, entries, std::move(name));
  return {sub, Matrix::from_columns(f, n, basis)};
}

}  // namespace dgdef
