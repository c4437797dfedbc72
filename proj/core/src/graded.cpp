#include "dgdef/graded.hpp"

#include <algorithm>
#include <set>

namespace dgdef {

namespace {

const std::vector<std::size_t> kEmpty;

Matrix select(const Matrix& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
  Matrix out(m.field(), rows.size(), cols.size());
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) out.set(r, c, m(rows[r], cols[c]));
  return out;
}

Vec scatter(Field f, std::size_t total, const std::vector<std::size_t>& idx, std::span<const Scalar> local) {
  Vec v = zero_vec(f, total);
  for (std::size_t i = 0; i < idx.size(); ++i) v[idx[i]] = local[i];
  return v;
}

Vec gather(const std::vector<std::size_t>& idx, std::span<const Scalar> global) {
  Vec v;
  v.reserve(idx.size());
  for (auto i : idx) v.push_back(global[i]);
  return v;
}

}  // namespace

GradedSpace::GradedSpace(std::vector<std::pair<std::string, int>> basis) {
  for (auto& [label, deg] : basis) {
    if (deg < kMinDegree || deg > kMaxDegree)
      throw StructureError("degree " + std::to_string(deg) + " of '" + label + "' outside [-8, 8]");
    if (!lookup_.emplace(label, labels_.size()).second) throw StructureError("duplicate basis label '" + label + "'");
    by_degree_[deg].push_back(labels_.size());
    labels_.push_back(std::move(label));
    degrees_.push_back(deg);
  }
}

std::optional<std::size_t> GradedSpace::index_of(const std::string& label) const {
  auto it = lookup_.find(label);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::size_t>& GradedSpace::indices(int d) const {
  auto it = by_degree_.find(d);
  return it == by_degree_.end() ? kEmpty : it->second;
}

std::vector<int> GradedSpace::support() const {
  std::vector<int> out;
  for (const auto& [d, idx] : by_degree_) out.push_back(d);
  return out;
}

std::vector<std::pair<std::string, int>> GradedSpace::entries() const {
  std::vector<std::pair<std::string, int>> out;
  for (std::size_t i = 0; i < size(); ++i) out.emplace_back(labels_[i], degrees_[i]);
  return out;
}

std::string format_vector(const GradedSpace& s, std::span<const Scalar> v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (!v[i].is_one()) out += v[i].to_string() + "*";
    out += s.label(i);
  }
  return out.empty() ? "0" : out;
}

bool is_homogeneous(const GradedSpace& s, std::span<const Scalar> v, int d) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero() && s.degree(i) != d) return false;
  return true;
}

Matrix graded_block(const Matrix& m, const GradedSpace& target, int to, const GradedSpace& source, int from) {
  return select(m, target.indices(to), source.indices(from));
}

std::optional<std::pair<std::size_t, std::size_t>> degree_violation(const Matrix& m, const GradedSpace& target,
                                                                     const GradedSpace& source, int shift) {
  if (m.rows() != target.size() || m.cols() != source.size())
    throw StructureError("graded map has wrong dimensions");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m(r, c).is_zero() && target.degree(r) != source.degree(c) + shift) return std::pair{r, c};
  return std::nullopt;
}

CochainComplex::CochainComplex(Field f, GradedSpace space, Matrix d)
    : field_(f), space_(std::move(space)), d_(std::move(d)) {
  if (!(d_.field() == f) && d_.rows() > 0) throw FieldMismatch("differential over a different field");
  if (d_.rows() == 0 && d_.cols() == 0) d_ = Matrix(f, space_.size(), space_.size());
  if (auto bad = degree_violation(d_, space_, space_, 1))
    throw StructureError("differential entry " + space_.label(bad->second) + " -> " + space_.label(bad->first) +
                         " does not raise degree by one");
  Matrix dd = d_ * d_;
  for (std::size_t r = 0; r < dd.rows(); ++r)
    for (std::size_t c = 0; c < dd.cols(); ++c)
      if (!dd(r, c).is_zero())
        throw StructureError("d∘d ≠ 0 on basis element " + space_.label(c) + " (component " + space_.label(r) + ")");
}

CochainComplex CochainComplex::zero_differential(Field f, GradedSpace space) {
  std::size_t n = space.size();
  return CochainComplex(f, std::move(space), Matrix(f, n, n));
}

long CochainComplex::euler_characteristic() const {
  long chi = 0;
  for (int d : space_.degrees()) chi += (d % 2 == 0) ? 1 : -1;
  return chi;
}

ChainMap::ChainMap(CochainComplex source, CochainComplex target, Matrix m)
    : source_(std::move(source)), target_(std::move(target)), m_(std::move(m)) {
  if (m_.rows() != target_.size() || m_.cols() != source_.size())
    throw StructureError("chain map has wrong dimensions");
  if (auto bad = degree_violation(m_, target_.space(), source_.space(), 0))
    throw StructureError("chain map entry " + source_.space().label(bad->second) + " -> " +
                         target_.space().label(bad->first) + " is not of degree zero");
  Matrix lhs = target_.differential() * m_;
  Matrix rhs = m_ * source_.differential();
  for (std::size_t c = 0; c < m_.cols(); ++c)
    for (std::size_t r = 0; r < m_.rows(); ++r)
      if (lhs(r, c) != rhs(r, c))
        throw StructureError("map does not commute with differentials on " + source_.space().label(c));
}

ChainMap ChainMap::identity(const CochainComplex& c) {
  return ChainMap(c, c, Matrix::identity(c.field(), c.size()));
}

ChainMap ChainMap::zero(const CochainComplex& source, const CochainComplex& target) {
  return ChainMap(source, target, Matrix(source.field(), target.size(), source.size()));
}

ChainMap ChainMap::then(const ChainMap& next) const {
  if (!(next.source_.space() == target_.space())) throw StructureError("composing chain maps with mismatched spaces");
  return ChainMap(source_, next.target_, next.m_ * m_);
}

Cohomology::Cohomology(const CochainComplex& c, int degree)
    : field_(c.field()), degree_(degree), total_(c.size()), local_(c.space().indices(degree)) {
  const Field f = field_;
  const std::size_t n = local_.size();
  d_here_ = c.block(degree);
  cocycles_ = kernel_basis(d_here_);
  if (d_here_.rows() == 0) {
    cocycles_.clear();
    for (std::size_t i = 0; i < n; ++i) cocycles_.push_back(unit_vec(f, n, i));
  }
  cocycle_coords_ = SubspaceCoords(f, n, cocycles_);
  Matrix d_before = c.block(degree - 1);
  std::vector<Vec> boundaries_z;
  for (std::size_t j = 0; j < d_before.cols(); ++j) {
    Vec b = d_before.column(j);
    if (is_zero(b)) continue;
    auto z = cocycle_coords_.coords(b);
    if (!z) throw StructureError("coboundary is not a cocycle");
    boundaries_z.push_back(std::move(*z));
  }
  quotient_ = QuotientMap(f, cocycles_.size(), boundaries_z);
  boundary_rank_ = quotient_.sub_basis().size();
  for (const auto& rep : quotient_.representatives())
    reps_.push_back(scatter(f, total_, local_, cocycle_coords_.embed(rep)));
}

bool Cohomology::is_cocycle(std::span<const Scalar> v) const {
  if (v.size() != total_) throw StructureError("vector has wrong dimension for this complex");
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero() && std::find(local_.begin(), local_.end(), i) == local_.end()) return false;
  Vec local = gather(local_, v);
  return local.empty() || d_here_.rows() == 0 || is_zero(d_here_.apply(local));
}

Vec Cohomology::class_of(std::span<const Scalar> cocycle) const {
  if (!is_cocycle(cocycle)) throw StructureError("class_of: vector is not a cocycle in degree " + std::to_string(degree_));
  auto z = cocycle_coords_.coords(gather(local_, cocycle));
  return quotient_.project(*z);
}

Cohomology cohomology(const CochainComplex& c, int degree) { return Cohomology(c, degree); }

Matrix induced_on_cohomology(const ChainMap& f, int degree) {
  Cohomology hs(f.source(), degree), ht(f.target(), degree);
  Matrix out(f.source().field(), ht.dim(), hs.dim());
  for (std::size_t j = 0; j < hs.dim(); ++j) {
    Vec img = ht.class_of(f.apply(hs.representatives()[j]));
    for (std::size_t i = 0; i < ht.dim(); ++i) out.set(i, j, img[i]);
  }
  return out;
}

CochainComplex mapping_cone(const ChainMap& f) {
  const auto& s = f.source();
  const auto& t = f.target();
  const Field fld = s.field();
  std::vector<std::pair<std::string, int>> basis;
  for (std::size_t i = 0; i < s.size(); ++i) basis.emplace_back("s." + s.space().label(i), s.space().degree(i));
  for (std::size_t i = 0; i < t.size(); ++i) basis.emplace_back("t." + t.space().label(i), t.space().degree(i) + 1);
  const std::size_t ns = s.size(), nt = t.size();
  Matrix d(fld, ns + nt, ns + nt);
  d.set_block(0, 0, s.differential());
  d.set_block(ns, 0, f.matrix());
  d.set_block(ns, ns, t.differential().scaled(Scalar(fld, -1)));
  return CochainComplex(fld, GradedSpace(std::move(basis)), std::move(d));
}

QuasiIsoCertificate is_quasi_isomorphism(const ChainMap& f) {
  std::set<int> degrees;
  for (int d : f.source().space().support()) degrees.insert({d - 1, d, d + 1});
  for (int d : f.target().space().support()) degrees.insert({d - 1, d, d + 1});
  QuasiIsoCertificate cert;
  for (int d : degrees) {
    Matrix h = induced_on_cohomology(f, d);
    DegreeCertificate dc{d, h.cols(), h.rows(), rank(h)};
    if (dc.source_dim == 0 && dc.target_dim == 0) continue;
    cert.quasi_isomorphism = cert.quasi_isomorphism && dc.bijective();
    cert.degrees.push_back(dc);
  }
  return cert;
}

Vec PairCone::assemble(std::span<const Scalar> l, std::span<const Scalar> n, std::span<const Scalar> m) const {
  if (l.size() != l_size || n.size() != n_size || m.size() != m_size)
    throw StructureError("pair-cone component has wrong dimension");
  Vec v;
  v.reserve(l_size + n_size + m_size);
  v.insert(v.end(), l.begin(), l.end());
  v.insert(v.end(), n.begin(), n.end());
  v.insert(v.end(), m.begin(), m.end());
  return v;
}

Vec PairCone::l_part(std::span<const Scalar> v) const { return Vec(v.begin(), v.begin() + l_size); }
Vec PairCone::n_part(std::span<const Scalar> v) const {
  return Vec(v.begin() + l_size, v.begin() + l_size + n_size);
}
Vec PairCone::m_part(std::span<const Scalar> v) const { return Vec(v.begin() + l_size + n_size, v.end()); }

PairCone pair_cone(const CochainComplex& l, const CochainComplex& n, const CochainComplex& m, const Matrix& h,
                   const Matrix& g) {
  const Field f = m.field();
  if (!(l.field() == f) || !(n.field() == f)) throw FieldMismatch("pair cone over mixed fields");
  // Both constructors verify the chain-map property.
  try {
    ChainMap(l, m, h);
  } catch (const StructureError& e) {
    throw StructureError(std::string("h is not a chain map: ") + e.what());
  }
  try {
    ChainMap(n, m, g);
  } catch (const StructureError& e) {
    throw StructureError(std::string("g is not a chain map: ") + e.what());
  }
  std::vector<std::pair<std::string, int>> basis;
  for (std::size_t i = 0; i < l.size(); ++i) basis.emplace_back("L." + l.space().label(i), l.space().degree(i));
  for (std::size_t i = 0; i < n.size(); ++i) basis.emplace_back("N." + n.space().label(i), n.space().degree(i));
  for (std::size_t i = 0; i < m.size(); ++i) basis.emplace_back("M." + m.space().label(i), m.space().degree(i) + 1);
  const std::size_t nl = l.size(), nn = n.size(), nm = m.size();
  Matrix d(f, nl + nn + nm, nl + nn + nm);
  const Scalar minus_one(f, -1);
  d.set_block(0, 0, l.differential());
  d.set_block(nl, nl, n.differential());
  d.set_block(nl + nn, nl + nn, m.differential().scaled(minus_one));
  d.set_block(nl + nn, nl, g.scaled(minus_one));
  d.set_block(nl + nn, 0, h);
  return PairCone{CochainComplex(f, GradedSpace(std::move(basis)), std::move(d)), nl, nn, nm};
}

ChainMap cone_morphism(const PairCone& source, const PairCone& target, const Matrix& alpha_l, const Matrix& alpha_n,
                       const Matrix& alpha_m) {
  const Field f = source.complex.field();
  if (alpha_l.rows() != target.l_size || alpha_l.cols() != source.l_size || alpha_n.rows() != target.n_size ||
      alpha_n.cols() != source.n_size || alpha_m.rows() != target.m_size || alpha_m.cols() != source.m_size)
    throw StructureError("diagram morphism components have wrong dimensions");
  Matrix phi(f, target.complex.size(), source.complex.size());
  phi.set_block(target.l_offset(), source.l_offset(), alpha_l);
  phi.set_block(target.n_offset(), source.n_offset(), alpha_n);
  phi.set_block(target.m_offset(), source.m_offset(), alpha_m);
  return ChainMap(source.complex, target.complex, std::move(phi));
}

InjectiveReduction reduce_injective_pair(const PairCone& cone, const CochainComplex& l, const CochainComplex& n,
                                         const CochainComplex& m, const Matrix& h, const Matrix& g) {
  const Field f = m.field();
  for (int d : l.space().support()) {
    Matrix block = graded_block(h, m.space(), d, l.space(), d);
    if (rank(block) != block.cols())
      throw StructureError("h is not injective in degree " + std::to_string(d));
  }
  std::vector<Vec> image;
  for (std::size_t j = 0; j < h.cols(); ++j) image.push_back(h.column(j));
  QuotientMap q(f, m.size(), image);
  std::vector<std::pair<std::string, int>> qbasis;
  std::vector<std::size_t> rep_index;
  for (const auto& rep : q.representatives()) {
    std::size_t i = static_cast<std::size_t>(std::find_if(rep.begin(), rep.end(), [](const Scalar& s) {
                                                return !s.is_zero();
                                              }) - rep.begin());
    rep_index.push_back(i);
    qbasis.emplace_back(m.space().label(i), m.space().degree(i));
  }
  const Matrix& proj = q.matrix();
  Matrix lift(f, m.size(), q.quotient_dim());
  for (std::size_t k = 0; k < rep_index.size(); ++k) lift.set(rep_index[k], k, Scalar::one(f));
  CochainComplex quotient(f, GradedSpace(qbasis), proj * m.differential() * lift);
  ChainMap composite(n, quotient, proj * g);
  CochainComplex target = mapping_cone(composite);

  Matrix w(f, target.size(), cone.complex.size());
  w.set_block(0, cone.n_offset(), Matrix::identity(f, n.size()));
  w.set_block(n.size(), cone.m_offset(), proj.scaled(Scalar(f, -1)));
  ChainMap witness(cone.complex, target, std::move(w));
  auto cert = is_quasi_isomorphism(witness);
  return InjectiveReduction{std::move(quotient), proj, std::move(target), std::move(witness), std::move(cert)};
}

}  // namespace dgdef
