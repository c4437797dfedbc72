#include "dgdef/bicomplex.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <stdexcept>

namespace dgdef {

namespace {

Scalar koszul(Field f, long a, long b) { return (a * b) % 2 == 0 ? Scalar::one(f) : Scalar(f, -1); }

Bidegree operator+(Bidegree a, Bidegree b) { return {a.p + b.p, a.q + b.q}; }

/// Indices of v's nonzero coordinates.
std::vector<std::size_t> support_of(std::span<const Scalar> v) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) out.push_back(i);
  return out;
}

Matrix columns_of(const Matrix& m, const std::vector<std::size_t>& cols) {
  Matrix out(m.field(), m.rows(), cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) out.set(r, c, m(r, cols[c]));
  return out;
}

/// Kernel of `d` restricted to the span of the given basis indices, embedded.
std::vector<Vec> kernel_on(const Matrix& d, const std::vector<std::size_t>& idx) {
  std::vector<Vec> out;
  for (const auto& k : kernel_basis(columns_of(d, idx))) {
    Vec v = zero_vec(d.field(), d.cols());
    for (std::size_t c = 0; c < idx.size(); ++c) v[idx[c]] = k[c];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> all_columns(const Matrix& m) {
  std::vector<Vec> out;
  for (std::size_t c = 0; c < m.cols(); ++c) out.push_back(m.column(c));
  return out;
}

}  // namespace

std::string to_string(Bidegree b) { return "(" + std::to_string(b.p) + "," + std::to_string(b.q) + ")"; }

BigradedAlgebra::BigradedAlgebra(Field f, std::vector<BiBasis> basis, const std::vector<ProductEntry>& products,
                                 Matrix del, Matrix delbar, std::string name)
    : field_(f), name_(std::move(name)), basis_(std::move(basis)), del_(std::move(del)), delbar_(std::move(delbar)) {
  const std::size_t n = basis_.size();
  std::vector<std::pair<std::string, int>> labels;
  for (const auto& b : basis_) labels.emplace_back(b.label, b.bidegree.total());
  space_ = GradedSpace(labels);
  for (const Matrix* m : {&del_, &delbar_}) {
    if (m->rows() != n || m->cols() != n) throw StructureError("differential must be " + std::to_string(n) + "x" + std::to_string(n));
    if (!(m->field() == f)) throw FieldMismatch("differential over a different field");
  }
  table_.assign(n * n, zero_vec(f, n));
  std::set<std::pair<std::size_t, std::size_t>> given;
  for (const auto& e : products) {
    if (e.left >= n || e.right >= n) throw StructureError("product entry index out of range");
    if (e.value.size() != n) throw StructureError("product value has the wrong length");
    for (const auto& s : e.value)
      if (!(s.field() == f)) throw FieldMismatch("product value over a different field");
    if (!given.insert({e.left, e.right}).second)
      throw StructureError("product " + label(e.left) + "·" + label(e.right) + " given twice");
    table_[e.left * n + e.right] = e.value;
  }
  for (const auto& [i, j] : given)
    if (i != j && !given.count({j, i}))
      table_[j * n + i] = scale(koszul(f, degree(i), degree(j)), table_[i * n + j]);
  for (std::size_t u = 0; u < n && !unit_; ++u) {
    if (!(bidegree(u) == Bidegree{0, 0})) continue;
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) {
      const Vec e = unit_vec(f, n, k);
      ok = table_[u * n + k] == e && table_[k * n + u] == e;
    }
    if (ok) unit_ = u;
  }
}

BigradedAlgebra BigradedAlgebra::square_zero(Field f, std::vector<BiBasis> v, const Matrix& del, const Matrix& delbar,
                                             std::string name) {
  const std::size_t k = v.size();
  if (del.rows() != k || del.cols() != k || delbar.rows() != k || delbar.cols() != k)
    throw StructureError("square-zero differentials must be " + std::to_string(k) + "x" + std::to_string(k));
  std::vector<BiBasis> basis{{"1", {0, 0}}};
  basis.insert(basis.end(), v.begin(), v.end());
  Matrix d(f, k + 1, k + 1), db(f, k + 1, k + 1);
  d.set_block(1, 1, del);
  db.set_block(1, 1, delbar);
  std::vector<ProductEntry> products;
  for (std::size_t i = 0; i <= k; ++i) products.push_back({0, i, unit_vec(f, k + 1, i)});
  return BigradedAlgebra(f, std::move(basis), products, d, db, std::move(name));
}

BigradedAlgebra BigradedAlgebra::point(Field f) {
  return BigradedAlgebra(f, {{"1", {0, 0}}}, {{0, 0, unit_vec(f, 1, 0)}}, Matrix(f, 1, 1), Matrix(f, 1, 1), "point");
}

std::vector<std::size_t> BigradedAlgebra::indices(Bidegree b) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (bidegree(i) == b) out.push_back(i);
  return out;
}

std::vector<Bidegree> BigradedAlgebra::bidegrees() const {
  std::set<Bidegree> s;
  for (const auto& b : basis_) s.insert(b.bidegree);
  return {s.begin(), s.end()};
}

std::optional<Bidegree> BigradedAlgebra::homogeneous_bidegree(std::span<const Scalar> v) const {
  std::optional<Bidegree> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (out && !(*out == bidegree(i))) return std::nullopt;
    out = bidegree(i);
  }
  return out;
}

Vec BigradedAlgebra::multiply(std::span<const Scalar> x, std::span<const Scalar> y) const {
  const std::size_t n = size();
  Vec out = zero();
  const auto sx = support_of(x), sy = support_of(y);
  for (std::size_t i : sx)
    for (std::size_t j : sy) {
      const Vec& p = table_[i * n + j];
      if (is_zero(p)) continue;
      axpy(out, x[i] * y[j], p);
    }
  return out;
}

std::vector<ProductEntry> BigradedAlgebra::canonical_products() const {
  std::vector<ProductEntry> out;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!is_zero(table_[i * n + j])) out.push_back({i, j, table_[i * n + j]});
  return out;
}

std::string format_element(const BigradedAlgebra& a, std::span<const Scalar> v) { return format_vector(a.space(), v); }

CheckList validate_bicomplex(const BigradedAlgebra& a) {
  CheckList report;
  const Field f = a.field();
  const std::size_t n = a.size();
  auto lab = [&](std::size_t i) { return a.label(i); };
  auto fmt = [&](const Vec& v) { return format_element(a, v); };

  std::string witness;
  auto check_shift = [&](const Matrix& d, Bidegree shift, const char* name) {
    for (std::size_t c = 0; c < n && witness.empty(); ++c)
      for (std::size_t r = 0; r < n; ++r)
        if (!d(r, c).is_zero() && !(a.bidegree(r) == a.bidegree(c) + shift)) {
          witness = std::string(name) + "(" + lab(c) + ") has a component on " + lab(r) + " of bidegree " +
                    to_string(a.bidegree(r));
          break;
        }
  };
  check_shift(a.del(), {1, 0}, "∂");
  check_shift(a.delbar(), {0, 1}, "∂̄");
  for (std::size_t i = 0; i < n && witness.empty(); ++i)
    for (std::size_t j = 0; j < n && witness.empty(); ++j) {
      const Vec& p = a.basis_product(i, j);
      for (std::size_t r = 0; r < n; ++r)
        if (!p[r].is_zero() && !(a.bidegree(r) == a.bidegree(i) + a.bidegree(j))) {
          witness = lab(i) + "·" + lab(j) + " has a component on " + lab(r) + " of bidegree " + to_string(a.bidegree(r));
          break;
        }
    }
  report.add("bidegrees", witness.empty(), witness);

  auto square_check = [&](const Matrix& m, const char* name, const char* expr) {
    std::string w;
    for (std::size_t c = 0; c < n && w.empty(); ++c) {
      Vec v = m.column(c);
      if (!is_zero(v)) w = std::string(expr) + "(" + lab(c) + ") = " + fmt(v);
    }
    report.add(name, w.empty(), w);
  };
  square_check(a.del() * a.del(), "del^2=0", "∂∂");
  square_check(a.delbar() * a.delbar(), "delbar^2=0", "∂̄∂̄");
  square_check(a.del() * a.delbar() + a.delbar() * a.del(), "anticommute", "(∂∂̄ + ∂̄∂)");

  witness.clear();
  for (std::size_t i = 0; i < n && witness.empty(); ++i)
    for (std::size_t j = 0; j < n && witness.empty(); ++j) {
      const Vec bi = unit_vec(f, n, i), bj = unit_vec(f, n, j);
      const Vec& prod = a.basis_product(i, j);
      for (int which = 0; which < 2 && witness.empty(); ++which) {
        const Matrix& d = which == 0 ? a.del() : a.delbar();
        Vec lhs = d.apply(prod);
        Vec rhs = a.multiply(d.column(i), bj);
        axpy(rhs, koszul(f, a.degree(i), 1), a.multiply(bi, d.column(j)));
        if (!(lhs == rhs))
          witness = std::string(which == 0 ? "∂" : "∂̄") + "(" + lab(i) + "·" + lab(j) + ") = " + fmt(lhs) +
                    " but the Leibniz rule gives " + fmt(rhs);
      }
    }
  report.add("leibniz", witness.empty(), witness);

  witness.clear();
  for (std::size_t i = 0; i < n && witness.empty(); ++i)
    for (std::size_t j = i + 1; j < n && witness.empty(); ++j) {
      Vec expected = scale(koszul(f, a.degree(i), a.degree(j)), a.basis_product(j, i));
      if (!(a.basis_product(i, j) == expected))
        witness = lab(i) + "·" + lab(j) + " = " + fmt(a.basis_product(i, j)) + " but ±" + lab(j) + "·" + lab(i) +
                  " = " + fmt(expected);
    }
  report.add("commutative", witness.empty(), witness);

  witness.clear();
  for (std::size_t i = 0; i < n && witness.empty(); ++i)
    for (std::size_t j = 0; j < n && witness.empty(); ++j) {
      const Vec& ij = a.basis_product(i, j);
      for (std::size_t k = 0; k < n && witness.empty(); ++k) {
        const Vec bk = unit_vec(f, n, k);
        Vec left = a.multiply(ij, bk);
        Vec right = a.multiply(unit_vec(f, n, i), a.basis_product(j, k));
        if (!(left == right))
          witness = "(" + lab(i) + "·" + lab(j) + ")·" + lab(k) + " = " + fmt(left) + " but " + lab(i) + "·(" +
                    lab(j) + "·" + lab(k) + ") = " + fmt(right);
      }
    }
  report.add("associative", witness.empty(), witness);
  return report;
}

ProductModel tensor_model(const BigradedAlgebra& x, const BigradedAlgebra& y) {
  if (!(x.field() == y.field())) throw FieldMismatch("tensor_model: different fields");
  if (!x.unit() || !y.unit()) throw StructureError("tensor_model: both factors need a unit");
  const Field f = x.field();
  const std::size_t nx = x.size(), ny = y.size(), n = nx * ny;
  const std::size_t ux = *x.unit(), uy = *y.unit();
  auto idx = [&](std::size_t i, std::size_t j) { return i * ny + j; };

  std::set<std::string> xl, yl;
  for (const auto& b : x.basis()) xl.insert(b.label);
  for (const auto& b : y.basis()) yl.insert(b.label);
  bool disjoint = true;
  for (const auto& l : xl)
    if (l != x.label(ux) && yl.count(l)) disjoint = false;
  std::vector<BiBasis> basis;
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) {
      std::string label;
      if (nx == 1)
        label = y.label(j);
      else if (ny == 1)
        label = x.label(i);
      else if (disjoint && i == ux && j == uy)
        label = "1";
      else if (disjoint && j == uy)
        label = x.label(i);
      else if (disjoint && i == ux)
        label = y.label(j);
      else
        label = x.label(i) + "⊗" + y.label(j);
      basis.push_back({label, x.bidegree(i) + y.bidegree(j)});
    }

  std::vector<ProductEntry> products;
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < ny; ++b)
      for (std::size_t c = 0; c < nx; ++c)
        for (std::size_t d = 0; d < ny; ++d) {
          if (idx(a, b) > idx(c, d)) continue;
          const Vec& ac = x.basis_product(a, c);
          const Vec& bd = y.basis_product(b, d);
          if (is_zero(ac) || is_zero(bd)) continue;
          const Scalar s = koszul(f, y.degree(b), x.degree(c));
          Vec v = zero_vec(f, n);
          for (std::size_t i : support_of(ac))
            for (std::size_t j : support_of(bd)) v[idx(i, j)] = s * ac[i] * bd[j];
          products.push_back({idx(a, b), idx(c, d), std::move(v)});
        }
  Matrix del(f, n, n), delbar(f, n, n);
  for (std::size_t a = 0; a < nx; ++a)
    for (std::size_t b = 0; b < ny; ++b) {
      const std::size_t col = idx(a, b);
      const Scalar s = koszul(f, x.degree(a), 1);
      for (int which = 0; which < 2; ++which) {
        Matrix& out = which == 0 ? del : delbar;
        const Matrix& dx = which == 0 ? x.del() : x.delbar();
        const Matrix& dy = which == 0 ? y.del() : y.delbar();
        for (std::size_t i = 0; i < nx; ++i)
          if (!dx(i, a).is_zero()) out.add_to(idx(i, b), col, dx(i, a));
        for (std::size_t j = 0; j < ny; ++j)
          if (!dy(j, b).is_zero()) out.add_to(idx(a, j), col, s * dy(j, b));
      }
    }
  std::string name = x.name().empty() || y.name().empty() ? std::string{} : x.name() + "×" + y.name();
  ProductModel out{BigradedAlgebra(f, std::move(basis), products, del, delbar, std::move(name)), Matrix(f, n, nx),
                   Matrix(f, n, ny)};
  for (std::size_t i = 0; i < nx; ++i) out.p_star.set(idx(i, uy), i, Scalar::one(f));
  for (std::size_t j = 0; j < ny; ++j) out.q_star.set(idx(ux, j), j, Scalar::one(f));
  return out;
}

CheckList validate_model_map(const BigradedAlgebra& source, const BigradedAlgebra& target, const Matrix& m) {
  CheckList report;
  const std::size_t ns = source.size(), nt = target.size();
  if (m.rows() != nt || m.cols() != ns) {
    report.fail("shape", "expected " + std::to_string(nt) + "x" + std::to_string(ns));
    return report;
  }
  report.pass("shape");
  const Field f = source.field();
  std::string w;
  for (std::size_t c = 0; c < ns && w.empty(); ++c)
    for (std::size_t r = 0; r < nt; ++r)
      if (!m(r, c).is_zero() && !(target.bidegree(r) == source.bidegree(c))) {
        w = source.label(c) + " maps onto " + target.label(r) + " of bidegree " + to_string(target.bidegree(r));
        break;
      }
  report.add("bidegree", w.empty(), w);
  w.clear();
  if (source.unit() && target.unit() && !(m.column(*source.unit()) == unit_vec(f, nt, *target.unit())))
    w = "1 maps to " + format_element(target, m.column(*source.unit()));
  report.add("unit", w.empty(), w);
  w.clear();
  for (std::size_t i = 0; i < ns && w.empty(); ++i)
    for (std::size_t j = 0; j < ns && w.empty(); ++j) {
      Vec lhs = m.apply(source.basis_product(i, j));
      Vec rhs = target.multiply(m.column(i), m.column(j));
      if (!(lhs == rhs)) w = "f(" + source.label(i) + "·" + source.label(j) + ") = " + format_element(target, lhs) +
                             " but f(" + source.label(i) + ")·f(" + source.label(j) + ") = " + format_element(target, rhs);
    }
  report.add("product", w.empty(), w);
  for (int which = 0; which < 2; ++which) {
    const Matrix lhs = m * (which == 0 ? source.del() : source.delbar());
    const Matrix rhs = (which == 0 ? target.del() : target.delbar()) * m;
    w.clear();
    for (std::size_t c = 0; c < ns && w.empty(); ++c)
      if (!(lhs.column(c) == rhs.column(c))) w = "fails on " + source.label(c);
    report.add(which == 0 ? "del" : "delbar", w.empty(), w);
  }
  return report;
}

std::vector<Vec> del_image(const BigradedAlgebra& a) {
  std::vector<Vec> out;
  for (Bidegree b : a.bidegrees()) {
    const auto idx = a.indices(b);
    for (auto& v : span_basis(a.field(), a.size(), all_columns(columns_of(a.del(), idx)))) out.push_back(std::move(v));
  }
  return out;
}

std::vector<Vec> del_kernel(const BigradedAlgebra& a) {
  std::vector<Vec> out;
  for (Bidegree b : a.bidegrees())
    for (auto& v : kernel_on(a.del(), a.indices(b))) out.push_back(std::move(v));
  return out;
}

DelDelbarResult del_delbar_predicate(const BigradedAlgebra& a) {
  DelDelbarResult result;
  const Field f = a.field();
  const std::size_t n = a.size();
  const Matrix dd = a.del() * a.delbar();
  for (Bidegree b : a.bidegrees()) {
    const auto here = a.indices(b);
    const auto closed = intersect(f, n, kernel_on(a.del(), here), kernel_on(a.delbar(), here));
    std::vector<Vec> exact;
    for (const auto& v : all_columns(columns_of(a.del(), a.indices({b.p - 1, b.q})))) exact.push_back(v);
    for (const auto& v : all_columns(columns_of(a.delbar(), a.indices({b.p, b.q - 1})))) exact.push_back(v);
    const auto lhs = intersect(f, n, closed, exact);
    const auto rhs = span_basis(f, n, all_columns(columns_of(dd, a.indices({b.p - 1, b.q - 1}))));
    result.closed_exact_dim += lhs.size();
    result.del_delbar_exact_dim += rhs.size();
    if (result.holds && lhs.size() != rhs.size())
      for (const auto& v : lhs)
        if (!in_span(f, rhs, v)) {
          result.holds = false;
          result.witness = v;
          break;
        }
  }
  return result;
}

bool subcomplex_acyclic(const BigradedAlgebra& a, std::span<const Vec> sub) {
  const Field f = a.field();
  const auto basis = span_basis(f, a.size(), sub);
  std::vector<Vec> images;
  for (const auto& v : basis) {
    Vec img = a.delbar(v);
    if (!in_span(f, basis, img))
      throw std::invalid_argument("subspace is not ∂̄-closed: ∂̄(" + format_element(a, v) + ") = " + format_element(a, img));
    images.push_back(std::move(img));
  }
  if (basis.empty()) return true;
  return 2 * rank(Matrix::from_columns(f, a.size(), images)) == basis.size();
}

namespace {

std::string element_label(const BigradedAlgebra& a, std::span<const Scalar> v) {
  const auto sup = support_of(v);
  if (sup.size() == 1 && v[sup[0]].is_one()) return a.label(sup[0]);
  return "(" + format_element(a, v) + ")";
}

}  // namespace

HtpDgla::HtpDgla(const BigradedAlgebra& a) : algebra_(a) {
  const Field f = a.field();
  const std::size_t n = a.size();
  closed_ = SubspaceCoords(f, n, del_kernel(a));
  coexact_ = QuotientMap(f, n, del_image(a));
  const std::size_t nv = closed_dim(), nw = coexact_dim();
  const auto& reps = coexact_.representatives();
  const auto& vs = closed_.basis();

  std::vector<std::size_t> w_index(nw);
  for (std::size_t t = 0; t < nw; ++t) w_index[t] = support_of(reps[t]).front();
  std::vector<int> v_deg(nv);
  for (std::size_t s = 0; s < nv; ++s) v_deg[s] = a.homogeneous_bidegree(vs[s])->total();

  std::vector<std::pair<std::string, int>> labels;
  for (std::size_t t = 0; t < nw; ++t)
    for (std::size_t s = 0; s < nv; ++s)
      labels.emplace_back(element_label(a, vs[s]) + "↦" + a.label(w_index[t]), a.degree(w_index[t]) - v_deg[s] + 1);
  const std::size_t total = nv * nw;
  auto deg = [&](std::size_t i) { return labels[i].second; };

  // ∂: A/∂A -> ker ∂, and ∂̄ on both.
  std::vector<Vec> del_w(nw), delbar_w(nw), delbar_v(nv);
  for (std::size_t t = 0; t < nw; ++t) {
    del_w[t] = *closed_.coords(a.del(reps[t]));
    delbar_w[t] = coexact_.project(a.delbar(reps[t]));
  }
  for (std::size_t s = 0; s < nv; ++s) {
    auto c = closed_.coords(a.delbar(vs[s]));
    if (!c) throw StructureError("∂̄ does not preserve ker ∂; is the algebra a bicomplex?");
    delbar_v[s] = std::move(*c);
  }

  Matrix d(f, total, total);
  for (std::size_t t = 0; t < nw; ++t)
    for (std::size_t s = 0; s < nv; ++s) {
      const std::size_t col = index(t, s);
      const Scalar sign = koszul(f, deg(col), 1);
      for (std::size_t t2 = 0; t2 < nw; ++t2)
        if (!delbar_w[t][t2].is_zero()) d.add_to(index(t2, s), col, -delbar_w[t][t2]);
      // (f∂̄)(v_σ) = f(∂̄ v_σ) picks the v_s coordinate of ∂̄ v_σ.
      for (std::size_t sigma = 0; sigma < nv; ++sigma)
        if (!delbar_v[sigma][s].is_zero()) d.add_to(index(t, sigma), col, -(sign * delbar_v[sigma][s]));
    }

  // E_{ts} ∂ E_{t's'} = P[s][t'] E_{ts'} with P[s][t'] the v_s coordinate of ∂w_{t'}.
  // {x, y} = x⋆y − (−1)^{|x||y|} y⋆x, stored for x <= y.
  std::map<std::pair<std::size_t, std::size_t>, Vec> acc;
  auto add_product = [&](std::size_t x, std::size_t y, std::size_t target, const Scalar& c) {
    const Scalar eps = koszul(f, deg(x), deg(y));
    const auto key = x <= y ? std::make_pair(x, y) : std::make_pair(y, x);
    auto [it, fresh] = acc.try_emplace(key, Vec{});
    if (fresh) it->second = zero_vec(f, total);
    if (x == y)
      it->second[target] += c - eps * c;
    else
      it->second[target] += x < y ? c : -(eps * c);
  };
  for (std::size_t tp = 0; tp < nw; ++tp)
    for (std::size_t s = 0; s < nv; ++s) {
      const Scalar& ps = del_w[tp][s];
      if (ps.is_zero()) continue;
      for (std::size_t t = 0; t < nw; ++t)
        for (std::size_t sp = 0; sp < nv; ++sp) add_product(index(t, s), index(tp, sp), index(t, sp), ps);
    }
  std::vector<BracketEntry> entries;
  for (auto& [key, v] : acc)
    if (!is_zero(v)) entries.push_back({key.first, key.second, std::move(v)});
  dgla_ = std::make_shared<const Dgla>(f, GradedSpace(labels), d, entries,
                                       a.name().empty() ? "Htp" : "Htp(" + a.name() + ")");
}

Bidegree HtpDgla::shift(std::size_t i) const {
  const std::size_t t = i / closed_dim(), s = i % closed_dim();
  const Bidegree w = *algebra_.homogeneous_bidegree(coexact_.representatives()[t]);
  const Bidegree v = *algebra_.homogeneous_bidegree(closed_.basis()[s]);
  return {w.p - v.p, w.q - v.q};
}

Vec HtpDgla::evaluate(std::span<const Scalar> f, std::span<const Scalar> v) const {
  auto c = closed_.coords(v);
  if (!c) throw std::invalid_argument("evaluate: argument is not ∂-closed");
  Vec out = zero_vec(algebra_.field(), coexact_dim());
  for (std::size_t t = 0; t < coexact_dim(); ++t)
    for (std::size_t s = 0; s < closed_dim(); ++s)
      if (!f[index(t, s)].is_zero() && !(*c)[s].is_zero()) out[t] += f[index(t, s)] * (*c)[s];
  return out;
}

Vec HtpDgla::evaluate_lifted(std::span<const Scalar> f, std::span<const Scalar> v) const {
  const Vec w = evaluate(f, v);
  Vec out = algebra_.zero();
  for (std::size_t t = 0; t < w.size(); ++t)
    if (!w[t].is_zero()) axpy(out, w[t], coexact_.representatives()[t]);
  return out;
}

Vec HtpDgla::from_operator(const Matrix& op) const {
  Vec out = zero_vec(algebra_.field(), dgla_->size());
  for (std::size_t s = 0; s < closed_dim(); ++s) {
    const Vec w = coexact_.project(op.apply(closed_.basis()[s]));
    for (std::size_t t = 0; t < w.size(); ++t) out[index(t, s)] = w[t];
  }
  return out;
}

std::vector<Vec> HtpDgla::maps_into(std::span<const Vec> domain, std::span<const Vec> target,
                                    std::span<const Vec> within) const {
  const Field f = algebra_.field();
  const std::size_t total = dgla_->size();
  std::vector<Vec> gens;
  if (within.empty() && total > 0) {
    for (std::size_t i = 0; i < total; ++i) gens.push_back(unit_vec(f, total, i));
    within = gens;
  }
  std::vector<Vec> target_w;
  for (const auto& t : target) target_w.push_back(coexact_.project(t));
  const QuotientMap mod(f, coexact_dim(), target_w);
  const auto dom = span_basis(f, algebra_.size(), domain);
  std::vector<Vec> rows;
  for (const auto& u : dom) {
    std::vector<Vec> images;  // per generator, the class of f(u) modulo the target
    for (const auto& g : within) images.push_back(mod.project(evaluate(g, u)));
    for (std::size_t r = 0; r < mod.quotient_dim(); ++r) {
      Vec row = zero_vec(f, within.size());
      for (std::size_t c = 0; c < within.size(); ++c) row[c] = images[c][r];
      rows.push_back(std::move(row));
    }
  }
  std::vector<Vec> out;
  if (rows.empty()) return span_basis(f, total, within);
  for (const auto& k : kernel_basis(Matrix::from_rows(f, within.size(), rows))) {
    Vec v = zero_vec(f, total);
    for (std::size_t c = 0; c < within.size(); ++c)
      if (!k[c].is_zero()) axpy(v, k[c], within[c]);
    out.push_back(std::move(v));
  }
  return out;
}

HtpDgla build_htp_dgla(const BigradedAlgebra& a) { return HtpDgla(a); }

SubDgla contraction_part(const HtpDgla& htp) {
  const std::size_t total = htp.dgla()->size();
  std::vector<Vec> span;
  for (std::size_t i = 0; i < total; ++i) {
    const Bidegree b = htp.shift(i);
    if (b.p == -1 && b.q >= 0) span.push_back(unit_vec(htp.algebra().field(), total, i));
  }
  return subalgebra(*htp.dgla(), span, htp.dgla()->name() + "₋₁");
}

Matrix ContractionAction::operator_of(std::span<const Scalar> a) const {
  if (operators.empty()) throw std::invalid_argument("contraction action without operators");
  Matrix out(operators.front().field(), operators.front().rows(), operators.front().cols());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) out = out + operators.at(i).scaled(a[i]);
  return out;
}

Vec ContractionAction::contract(std::span<const Scalar> a, std::span<const Scalar> omega) const {
  Vec out = zero_vec(operators.front().field(), operators.front().rows());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) axpy(out, a[i], operators.at(i).apply(omega));
  return out;
}

Check contraction_bidegree_check(const ContractionAction& ca, const BigradedAlgebra& a) {
  const Dgla& l = *ca.algebra;
  if (ca.operators.size() != l.size()) return {"bidegree contract", false, "one operator per basis element of L expected"};
  for (std::size_t i = 0; i < l.size(); ++i) {
    const Matrix& op = ca.operators[i];
    if (op.rows() != a.size() || op.cols() != a.size())
      return {"bidegree contract", false, "operator of " + l.space().label(i) + " has the wrong shape"};
    for (std::size_t c = 0; c < a.size(); ++c)
      for (std::size_t r = 0; r < a.size(); ++r)
        if (!op(r, c).is_zero() && !(a.bidegree(r) == a.bidegree(c) + Bidegree{-1, l.degree(i)}))
          return {"bidegree contract", false,
                  l.space().label(i) + "⌟" + a.label(c) + " has a component on " + a.label(r) + " of bidegree " +
                      to_string(a.bidegree(r))};
  }
  return {"bidegree contract", true, {}};
}

namespace {

Matrix contraction_matrix(const ContractionAction& ca, const HtpDgla& htp) {
  const Check c = contraction_bidegree_check(ca, htp.algebra());
  if (!c.passed) throw std::invalid_argument("bidegree contract violated: " + c.witness);
  std::vector<Vec> cols;
  for (const auto& op : ca.operators) cols.push_back(htp.from_operator(op));
  return Matrix::from_columns(htp.algebra().field(), htp.dgla()->size(), cols);
}

DglaMorphism checked_contraction(const DglaPtr& source, const DglaPtr& target, const Matrix& m) {
  const CheckList report = DglaMorphism::check(*source, *target, m);
  for (const auto& c : report.checks())
    if (!c.passed) throw StructureError("not a valid contraction (" + c.name + "): " + c.witness);
  return DglaMorphism(source, target, m);
}

}  // namespace

DglaMorphism contraction_morphism(const ContractionAction& ca, const HtpDgla& htp) {
  return checked_contraction(ca.algebra, htp.dgla(), contraction_matrix(ca, htp));
}

DglaMorphism contraction_morphism(const ContractionAction& ca, const HtpDgla& htp, const SubDgla& target) {
  const Matrix full = contraction_matrix(ca, htp);
  const Field f = htp.algebra().field();
  SubspaceCoords coords(f, full.rows(), all_columns(target.inclusion));
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < full.cols(); ++c) {
    auto v = coords.coords(full.column(c));
    if (!v) throw std::invalid_argument("ι(" + ca.algebra->space().label(c) + ") leaves " + target.dgla->name());
    cols.push_back(std::move(*v));
  }
  return checked_contraction(ca.algebra, target.dgla, Matrix::from_columns(f, target.dgla->size(), cols));
}

bool verify_pullback_contraction(const BigradedAlgebra& y, const BigradedAlgebra& x, const Matrix& f_star,
                                 const Matrix& chi, const Matrix& eta, std::span<const Scalar> omega) {
  if (f_star.rows() != x.size() || f_star.cols() != y.size() || chi.rows() != y.size() || chi.cols() != y.size() ||
      eta.rows() != x.size() || eta.cols() != x.size() || omega.size() != y.size())
    throw std::invalid_argument("verify_pullback_contraction: shape mismatch");
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y.bidegree(i) == Bidegree{1, 0})) continue;
    const Vec theta = unit_vec(y.field(), y.size(), i);
    if (!(f_star.apply(chi.apply(theta)) == eta.apply(f_star.apply(theta))))
      throw std::invalid_argument("hypothesis f*χ = f_*η fails on " + y.label(i));
  }
  return f_star.apply(chi.apply(omega)) == eta.apply(f_star.apply(omega));
}

namespace {

/// Witness of the first failure of `closed(v)` over the basis of `span`, or empty.
std::string closure_witness(const BigradedAlgebra& a, const std::vector<Vec>& basis, bool product_with_ambient,
                            bool product_within) {
  const Field f = a.field();
  const std::size_t n = a.size();
  for (const auto& v : basis) {
    if (!in_span(f, basis, a.del(v))) return "∂(" + format_element(a, v) + ") leaves it";
    if (!in_span(f, basis, a.delbar(v))) return "∂̄(" + format_element(a, v) + ") leaves it";
    if (product_with_ambient)
      for (std::size_t i = 0; i < n; ++i)
        if (!in_span(f, basis, a.multiply(unit_vec(f, n, i), v)))
          return a.label(i) + "·(" + format_element(a, v) + ") leaves it";
    if (product_within)
      for (const auto& u : basis)
        if (!in_span(f, basis, a.multiply(u, v)))
          return "(" + format_element(a, u) + ")·(" + format_element(a, v) + ") leaves it";
  }
  return {};
}

std::vector<Vec> bihomogeneous_basis(const BigradedAlgebra& a, std::span<const Vec> span) {
  std::vector<Vec> out;
  for (Bidegree b : a.bidegrees()) {
    const auto idx = a.indices(b);
    std::vector<Vec> parts;
    for (const auto& v : span) {
      Vec part = a.zero();
      for (std::size_t i : idx) part[i] = v[i];
      if (!is_zero(part)) parts.push_back(std::move(part));
    }
    for (auto& v : span_basis(a.field(), a.size(), parts)) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

CheckList validate_configuration(const ModelConfiguration& mc) {
  CheckList report;
  const BigradedAlgebra& a = mc.ambient;
  const Field f = a.field();
  auto graded = [&](const std::vector<Vec>& span) {
    const auto basis = span_basis(f, a.size(), span);
    for (const auto& v : bihomogeneous_basis(a, span))
      if (!in_span(f, basis, v)) return std::string("not a bigraded subspace");
    return std::string{};
  };
  std::string w = graded(mc.ideal);
  if (w.empty()) w = closure_witness(a, span_basis(f, a.size(), mc.ideal), true, false);
  report.add("ideal", w.empty(), w);
  for (int which = 0; which < 2; ++which) {
    const auto& span = which == 0 ? mc.y_pullback : mc.x_pullback;
    w = graded(span);
    const auto basis = span_basis(f, a.size(), span);
    if (w.empty()) w = closure_witness(a, basis, false, true);
    if (w.empty() && a.unit() && !in_span(f, basis, unit_vec(f, a.size(), *a.unit()))) w = "does not contain 1";
    report.add(which == 0 ? "y subalgebra" : "x subalgebra", w.empty(), w);
  }
  return report;
}

GraphQuotient graph_quotient(const ModelConfiguration& mc) {
  const BigradedAlgebra& a = mc.ambient;
  const Field f = a.field();
  const QuotientMap q(f, a.size(), bihomogeneous_basis(a, mc.ideal));
  std::vector<std::size_t> keep;
  for (const auto& r : q.representatives()) keep.push_back(support_of(r).front());
  const std::size_t k = keep.size();
  std::vector<BiBasis> basis;
  for (std::size_t i : keep) basis.push_back(a.basis()[i]);
  std::vector<ProductEntry> products;
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = x; y < k; ++y) {
      Vec v = q.project(a.basis_product(keep[x], keep[y]));
      if (!is_zero(v)) products.push_back({x, y, std::move(v)});
    }
  Matrix del(f, k, k), delbar(f, k, k);
  for (std::size_t c = 0; c < k; ++c) {
    const Vec d1 = q.project(a.del().column(keep[c])), d2 = q.project(a.delbar().column(keep[c]));
    for (std::size_t r = 0; r < k; ++r) {
      del.set(r, c, d1[r]);
      delbar.set(r, c, d2[r]);
    }
  }
  return {BigradedAlgebra(f, std::move(basis), products, del, delbar, a.name().empty() ? "A_Γ" : a.name() + "/I"),
          q.matrix()};
}

AcyclicityReport acyclicity_report(const ModelConfiguration& mc) {
  const BigradedAlgebra& a = mc.ambient;
  const Field f = a.field();
  const GraphQuotient g = graph_quotient(mc);
  AcyclicityReport r;
  r.ambient = del_delbar_predicate(a);
  r.graph = del_delbar_predicate(g.algebra);
  const auto img = del_image(a);
  r.del_ambient = subcomplex_acyclic(a, img);
  r.del_graph = subcomplex_acyclic(g.algebra, del_image(g.algebra));
  r.del_y = subcomplex_acyclic(a, intersect(f, a.size(), img, mc.y_pullback));
  r.del_x = subcomplex_acyclic(a, intersect(f, a.size(), img, mc.x_pullback));
  return r;
}

namespace {

/// Elements a of M whose contraction sends `domain` into `target`.
std::vector<Vec> contraction_preimage(const BigradedAlgebra& a, const ContractionAction& m,
                                      std::span<const Vec> domain, std::span<const Vec> target) {
  const Field f = a.field();
  const std::size_t dim = m.algebra->size();
  const QuotientMap mod(f, a.size(), target);
  std::vector<Vec> rows;
  for (const auto& v : span_basis(f, a.size(), domain)) {
    std::vector<Vec> images;
    for (const auto& op : m.operators) images.push_back(mod.project(op.apply(v)));
    for (std::size_t r = 0; r < mod.quotient_dim(); ++r) {
      Vec row = zero_vec(f, dim);
      for (std::size_t c = 0; c < dim; ++c) row[c] = images[c][r];
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) {
    std::vector<Vec> all;
    for (std::size_t i = 0; i < dim; ++i) all.push_back(unit_vec(f, dim, i));
    return all;
  }
  return kernel_basis(Matrix::from_rows(f, dim, rows));
}

std::string contraction_violation(const BigradedAlgebra& a, const ContractionAction& m, std::span<const Vec> elements,
                                  std::span<const Vec> domain, std::span<const Vec> target, const char* what) {
  const Field f = a.field();
  const auto tb = span_basis(f, a.size(), target);
  for (const auto& x : elements)
    for (const auto& v : span_basis(f, a.size(), domain)) {
      Vec img = m.contract(x, v);
      if (!in_span(f, tb, img))
        return "ι_a(ω) = " + format_element(a, img) + " leaves " + what + " for a = " +
               format_vector(m.algebra->space(), x) + ", ω = " + format_element(a, v);
    }
  return {};
}

/// Columns of `m` re-expressed in the coordinates of `sub` (an inclusion).
Matrix restrict_to(const Matrix& m, const Matrix& sub, const std::string& what) {
  const Field f = m.field();
  SubspaceCoords coords(f, sub.rows(), all_columns(sub));
  std::vector<Vec> cols;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    auto v = coords.coords(m.column(c));
    if (!v) throw StructureError(what);
    cols.push_back(std::move(*v));
  }
  return Matrix::from_columns(f, sub.cols(), cols);
}

/// Vectors of `space` coordinates (ambient = htp) expressed in `sub` coordinates.
std::vector<Vec> coords_in(const Matrix& inclusion, std::span<const Vec> vs) {
  SubspaceCoords coords(inclusion.field(), inclusion.rows(), all_columns(inclusion));
  std::vector<Vec> out;
  for (const auto& v : vs) out.push_back(*coords.coords(v));
  return out;
}

}  // namespace

std::vector<Vec> log_subspace(const ModelConfiguration& mc, const ContractionAction& m) {
  return contraction_preimage(mc.ambient, m, mc.ideal, mc.ideal);
}

std::vector<Vec> factor_subspace(const ModelConfiguration& mc, const ContractionAction& m) {
  return contraction_preimage(mc.ambient, m, mc.y_pullback, {});
}

ThreeLevelDiagram build_three_level_diagram(const ModelConfiguration& mc, const ContractionAction& m,
                                            std::span<const Vec> l_span, std::span<const Vec> n_span) {
  const CheckList valid = validate_configuration(mc);
  for (const auto& c : valid.checks())
    if (!c.passed) throw StructureError("invalid model configuration (" + c.name + "): " + c.witness);
  const BigradedAlgebra& a = mc.ambient;
  const Field f = a.field();
  ThreeLevelDiagram d;
  d.configuration = mc;
  d.action = m;
  d.m = m.algebra;
  d.htp = HtpDgla(a);
  d.q = contraction_part(d.htp);
  const DglaMorphism iota = contraction_morphism(m, d.htp, d.q);

  std::vector<Vec> ls(l_span.begin(), l_span.end()), ns(n_span.begin(), n_span.end());
  if (ls.empty()) ls = log_subspace(mc, m);
  if (ns.empty()) ns = factor_subspace(mc, m);
  if (auto w = contraction_violation(a, m, ls, mc.ideal, mc.ideal, "I_Γ"); !w.empty())
    throw StructureError("L is not inside {a | ι_a(I_Γ) ⊂ I_Γ}: " + w);
  if (auto w = contraction_violation(a, m, ns, mc.y_pullback, {}, "zero"); !w.empty())
    throw StructureError("N is not inside {a | ι_a(q*A_Y) = 0}: " + w);
  d.l = subalgebra(*d.m, ls, "L");
  d.n = subalgebra(*d.m, ns, "N");

  // Subspaces of Htp (global coordinates), all inside the contraction part.
  const auto q_cols = all_columns(d.q.inclusion);
  const auto closed = del_kernel(a);
  const auto exact = del_image(a);
  const auto i_closed = intersect(f, a.size(), mc.ideal, closed);
  const auto y_closed = intersect(f, a.size(), mc.y_pullback, closed);
  const auto k_span = d.htp.maps_into(i_closed, mc.ideal, q_cols);
  const auto j_span = d.htp.maps_into(y_closed, {}, q_cols);
  const auto k0_span = d.htp.maps_into(exact, {}, k_span);
  const auto q0_span = d.htp.maps_into(exact, {}, q_cols);
  const auto j0_span = d.htp.maps_into(exact, {}, j_span);

  const Dgla& qd = *d.q.dgla;
  d.k = subalgebra(qd, coords_in(d.q.inclusion, k_span), "K");
  d.j = subalgebra(qd, coords_in(d.q.inclusion, j_span), "J");
  d.q0 = subalgebra(qd, coords_in(d.q.inclusion, q0_span), "Q0");
  const Matrix k_in_htp = d.q.inclusion * d.k.inclusion, j_in_htp = d.q.inclusion * d.j.inclusion;
  d.k0 = subalgebra(*d.k.dgla, coords_in(k_in_htp, k0_span), "K0");
  d.j0 = subalgebra(*d.j.dgla, coords_in(j_in_htp, j0_span), "J0");

  d.source = PairDiagram(DglaMorphism(d.l.dgla, d.m, d.l.inclusion), DglaMorphism(d.n.dgla, d.m, d.n.inclusion));
  d.target = PairDiagram(DglaMorphism(d.k.dgla, d.q.dgla, d.k.inclusion), DglaMorphism(d.j.dgla, d.q.dgla, d.j.inclusion));
  const Matrix iota_l = restrict_to(iota.matrix() * d.l.inclusion, d.k.inclusion, "ι(L) is not inside K");
  const Matrix iota_n = restrict_to(iota.matrix() * d.n.inclusion, d.j.inclusion, "ι(N) is not inside J");
  d.iota = DiagramMorphism(d.source, d.target, iota_l, iota.matrix(), iota_n);

  const Matrix eta0 = restrict_to(d.k.inclusion * d.k0.inclusion, d.q0.inclusion, "K0 is not inside Q0");
  const Matrix mu0 = restrict_to(d.j.inclusion * d.j0.inclusion, d.q0.inclusion, "J0 is not inside Q0");
  d.abelian_pair = PairDiagram(DglaMorphism(d.k0.dgla, d.q0.dgla, eta0), DglaMorphism(d.j0.dgla, d.q0.dgla, mu0));
  d.abelian_model = DiagramMorphism(d.abelian_pair, d.target, d.k0.inclusion, d.q0.inclusion, d.j0.inclusion);
  d.graph = graph_quotient(mc);
  return d;
}

bool admissible_harmonic(const ThreeLevelDiagram& d, std::span<const Scalar> omega) {
  const BigradedAlgebra& a = d.configuration.ambient;
  const Field f = a.field();
  if (omega.size() != a.size()) return false;
  return in_span(f, span_basis(f, a.size(), d.configuration.ideal), omega) &&
         in_span(f, span_basis(f, a.size(), d.configuration.y_pullback), omega) && is_zero(a.del(omega)) &&
         is_zero(a.delbar(omega));
}

namespace {

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
  Scalar out = Scalar::zero(a.empty() ? Field{} : a[0].field());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && !b[i].is_zero()) out += a[i] * b[i];
  return out;
}

}  // namespace

Scalar semiregularity_pairing(const ThreeLevelDiagram& d, std::span<const Scalar> cls, std::span<const Scalar> omega,
                              std::span<const Scalar> trace) {
  const BigradedAlgebra& a = d.configuration.ambient;
  const BigradedAlgebra& g = d.graph.algebra;
  const Field f = a.field();
  if (!admissible_harmonic(d, omega)) throw std::invalid_argument("ω is not in I_Γ ∩ ker ∂̄ ∩ ker ∂ ∩ q*A_Y");
  if (trace.size() != g.size()) throw std::invalid_argument("trace has the wrong length");
  std::optional<Bidegree> top;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!trace[i].is_zero()) {
      if (top && !(*top == g.bidegree(i))) throw std::invalid_argument("trace is not supported on one bidegree");
      top = g.bidegree(i);
    }
  for (const Matrix* dm : {&g.del(), &g.delbar()})
    for (std::size_t c = 0; c < g.size(); ++c)
      if (!dot(trace, dm->column(c)).is_zero())
        throw std::invalid_argument("trace does not vanish on exact elements: " + g.label(c));

  const PairCone cone = d.source.cone();
  const CochainComplex& cc = cone.complex;
  if (cls.size() != cc.size() || !is_homogeneous(cc.space(), cls, 2))
    throw std::invalid_argument("class representative must be a degree-2 element of the pair cone");
  if (!is_zero(cc.differential().apply(cls))) throw std::invalid_argument("class representative is not D-closed");

  auto value = [&](std::span<const Scalar> rep) {
    const Vec m = cone.m_part(rep);
    return dot(trace, d.graph.projection.apply(d.action.contract(m, omega)));
  };
  const Scalar result = value(cls);
  for (std::size_t c : cc.space().indices(1))
    if (!value(cc.differential().column(c)).is_zero())
      throw std::logic_error("semiregularity pairing depends on the representative: D(" + cc.space().label(c) + ")");

  const Vec image = induced_cone_map(d.iota).apply(cls);
  const Vec q_part = d.target.cone().m_part(image);
  const Vec f_htp = d.q.inclusion.apply(q_part);
  const Scalar through_target = dot(trace, d.graph.projection.apply(d.htp.evaluate_lifted(f_htp, omega)));
  if (!(through_target == result))
    throw std::logic_error("semiregularity pairing does not factor through H²(C(η,μ))");
  (void)f;
  return result;
}

BigradedAlgebra random_bicomplex(Field f, std::mt19937_64& rng, std::size_t max_dim) {
  if (max_dim < 1) throw std::invalid_argument("random_bicomplex: max_dim must be at least 1");
  const std::size_t budget = max_dim - 1;
  const std::size_t target = budget == 0 ? 0 : rng() % (budget + 1);
  // Elementary pieces: cells and signed ∂ / ∂̄ edges (from, to, sign).
  struct Edge {
    std::size_t from, to;
    int sign;
  };
  struct Piece {
    std::vector<Bidegree> cells;
    std::vector<Edge> del, delbar;
  };
  const std::vector<Piece> pieces = {
      {{{0, 0}}, {}, {}},
      {{{0, 0}, {1, 0}}, {{0, 1, 1}}, {}},
      {{{0, 0}, {0, 1}}, {}, {{0, 1, 1}}},
      // u, ∂u, ∂̄u, ∂∂̄u with ∂̄∂u = −∂∂̄u.
      {{{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {{0, 1, 1}, {2, 3, 1}}, {{0, 2, 1}, {1, 3, -1}}},
      // ∂y = z, ∂̄x = z.
      {{{1, 0}, {0, 1}, {1, 1}}, {{1, 2, 1}}, {{0, 2, 1}}},
      // ∂̄a = b, ∂a = c.
      {{{0, 0}, {0, 1}, {1, 0}}, {{0, 2, 1}}, {{0, 1, 1}}},
  };
  std::vector<BiBasis> cells;
  std::vector<Edge> del_edges, delbar_edges;
  while (cells.size() < target) {
    const Piece& p = pieces[rng() % pieces.size()];
    if (cells.size() + p.cells.size() > target) continue;
    const Bidegree base{static_cast<int>(rng() % 3), static_cast<int>(rng() % 3)};
    const std::size_t off = cells.size();
    for (Bidegree c : p.cells) cells.push_back({"", {base.p + c.p, base.q + c.q}});
    for (const Edge& e : p.del) del_edges.push_back({off + e.from, off + e.to, e.sign});
    for (const Edge& e : p.delbar) delbar_edges.push_back({off + e.from, off + e.to, e.sign});
  }
  const std::size_t k = cells.size();
  Matrix del(f, k, k), delbar(f, k, k);
  for (const Edge& e : del_edges) del.set(e.to, e.from, Scalar(f, e.sign));
  for (const Edge& e : delbar_edges) delbar.set(e.to, e.from, Scalar(f, e.sign));
  // Random change of basis inside each bidegree.
  std::map<Bidegree, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < k; ++i) groups[cells[i].bidegree].push_back(i);
  auto rand_scalar = [&]() {
    const long span = f.is_rational() ? 7 : static_cast<long>(std::min<std::uint32_t>(f.characteristic(), 1000));
    const long c = static_cast<long>(rng() % static_cast<std::uint64_t>(span));
    return Scalar(f, f.is_rational() ? c - 3 : c);
  };
  Matrix s = Matrix::identity(f, k);
  for (const auto& [b, idx] : groups) {
    if (idx.size() < 2) continue;
    for (int attempt = 0; attempt < 16; ++attempt) {
      Matrix block(f, idx.size(), idx.size());
      for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) block.set(r, c, rand_scalar());
      if (rank(block) != idx.size()) continue;
      for (std::size_t r = 0; r < idx.size(); ++r)
        for (std::size_t c = 0; c < idx.size(); ++c) s.set(idx[r], idx[c], block(r, c));
      break;
    }
  }
  std::vector<Vec> inv_cols;
  for (std::size_t i = 0; i < k; ++i) inv_cols.push_back(solve(s, unit_vec(f, k, i))->particular);
  const Matrix s_inv = Matrix::from_columns(f, k, inv_cols);
  for (std::size_t i = 0; i < k; ++i) cells[i].label = "v" + std::to_string(i);
  return BigradedAlgebra::square_zero(f, cells, s * del * s_inv, s * delbar * s_inv, "random");
}

BigradedAlgebra exterior_model(Field f, const std::vector<BiBasis>& generators, std::string name) {
  const std::size_t k = generators.size();
  if (k > 10) throw std::invalid_argument("exterior_model: at most 10 generators");
  for (const auto& g : generators)
    if (g.bidegree.total() % 2 == 0) throw std::invalid_argument("exterior_model: generator " + g.label + " is not odd");
  const std::size_t n = std::size_t{1} << k;
  std::vector<BiBasis> basis;
  for (std::size_t mask = 0; mask < n; ++mask) {
    std::string label;
    Bidegree b;
    for (std::size_t i = 0; i < k; ++i)
      if (mask >> i & 1) {
        label += (label.empty() ? "" : "∧") + generators[i].label;
        b = b + generators[i].bidegree;
      }
    basis.push_back({label.empty() ? "1" : label, b});
  }
  std::vector<ProductEntry> products;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) {
      if (a & b) continue;
      // Moving each generator of b past the larger generators of a.
      std::size_t swaps = 0;
      for (std::size_t i = 0; i < k; ++i)
        if (b >> i & 1)
          for (std::size_t j = i + 1; j < k; ++j) swaps += a >> j & 1;
      products.push_back({a, b, scale(Scalar(f, swaps % 2 ? -1 : 1), unit_vec(f, n, a | b))});
    }
  return BigradedAlgebra(f, std::move(basis), products, Matrix(f, n, n), Matrix(f, n, n), std::move(name));
}

Matrix generator_contraction(const BigradedAlgebra& ext, std::size_t generator) {
  const Field f = ext.field();
  const std::size_t n = ext.size();
  Matrix out(f, n, n);
  for (std::size_t mask = 0; mask < n; ++mask) {
    if (!(mask >> generator & 1)) continue;
    const std::size_t before = static_cast<std::size_t>(std::popcount(mask & ((std::size_t{1} << generator) - 1)));
    out.set(mask & ~(std::size_t{1} << generator), mask, Scalar(f, before % 2 ? -1 : 1));
  }
  return out;
}

Matrix exterior_map(const BigradedAlgebra& ext, const BigradedAlgebra& target, std::span<const Vec> images) {
  const Field f = ext.field();
  const std::size_t n = ext.size();
  Matrix out(f, target.size(), n);
  for (std::size_t mask = 0; mask < n; ++mask) {
    Vec v = unit_vec(f, target.size(), *target.unit());
    for (std::size_t i = 0; i < images.size(); ++i)
      if (mask >> i & 1) v = target.multiply(v, images[i]);
    for (std::size_t r = 0; r < target.size(); ++r) out.set(r, mask, v[r]);
  }
  return out;
}

Matrix left_multiplication(const BigradedAlgebra& a, std::span<const Scalar> x) {
  std::vector<Vec> cols;
  for (std::size_t i = 0; i < a.size(); ++i) cols.push_back(a.multiply(x, unit_vec(a.field(), a.size(), i)));
  return Matrix::from_columns(a.field(), a.size(), cols);
}

ContractionAction tautological_action(const HtpDgla& htp, const SubDgla& sub) {
  const BigradedAlgebra& a = htp.algebra();
  const Field f = a.field();
  const std::size_t n = a.size();
  // Coordinates on A = ker ∂ ⊕ span(standard complement).
  const auto& closed = htp.closed_basis();
  const auto comp = quotient_representatives(f, closed, n);
  std::vector<Vec> basis = closed;
  basis.insert(basis.end(), comp.begin(), comp.end());
  const Matrix change = Matrix::from_columns(f, n, basis);
  std::vector<Vec> inv_cols;
  for (std::size_t i = 0; i < n; ++i) inv_cols.push_back(solve(change, unit_vec(f, n, i))->particular);
  const Matrix to_coords = Matrix::from_columns(f, n, inv_cols);
  ContractionAction out;
  out.algebra = sub.dgla;
  for (std::size_t c = 0; c < sub.inclusion.cols(); ++c) {
    const Vec elem = sub.inclusion.column(c);
    Matrix on_basis(f, n, n);  // columns indexed by the adapted basis
    for (std::size_t s = 0; s < htp.closed_dim(); ++s)
      for (std::size_t t = 0; t < htp.coexact_dim(); ++t) {
        const Scalar& x = elem[htp.index(t, s)];
        if (x.is_zero()) continue;
        const Vec& w = htp.coexact().representatives()[t];
        for (std::size_t r = 0; r < n; ++r)
          if (!w[r].is_zero()) on_basis.add_to(r, s, x * w[r]);
      }
    out.operators.push_back(on_basis * to_coords);
  }
  return out;
}

}  // namespace dgdef
