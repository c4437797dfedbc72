#include "dgdef/obstruction.hpp"

#include <map>
#include <functional>
#include <random>
#include <unordered_map>

namespace dgdef {

namespace {

/// (I_n ⊗ s) v for v indexed i*k_from + a.
Vec lift_vec(const Vec& v, std::size_t n, const Matrix& s) {
  const std::size_t ka = s.cols(), kb = s.rows();
  Vec out = zero_vec(s.field(), n * kb);
  for (std::size_t i = 0; i < n; ++i) {
    Vec c(v.begin() + static_cast<std::ptrdiff_t>(i * ka), v.begin() + static_cast<std::ptrdiff_t>((i + 1) * ka));
    if (is_zero(c)) continue;
    Vec img = s.apply(c);
    for (std::size_t b = 0; b < kb; ++b) out[i * kb + b] = img[b];
  }
  return out;
}

/// Splits v ∈ V ⊗ m_B, known to lie in V ⊗ J, into its J components.
std::vector<Vec> split_over_j(const Vec& v, std::size_t n, std::size_t kb, const SubspaceCoords& j, Field f,
                              const char* what) {
  std::vector<Vec> parts(j.size(), zero_vec(f, n));
  for (std::size_t i = 0; i < n; ++i) {
    Vec c(v.begin() + static_cast<std::ptrdiff_t>(i * kb), v.begin() + static_cast<std::ptrdiff_t>((i + 1) * kb));
    if (is_zero(c)) continue;
    auto coords = j.coords(c);
    if (!coords) throw std::invalid_argument(std::string(what) + " of the lift lies outside V ⊗ J: ξ is not MC over A");
    for (std::size_t s = 0; s < j.size(); ++s) parts[s][i] = (*coords)[s];
  }
  return parts;
}

/// Σ_s parts[s] ⊗ j_s in V ⊗ m_B.
Vec join_over_j(const std::vector<Vec>& parts, std::size_t n, const std::vector<Vec>& j, Field f) {
  const std::size_t kb = j.empty() ? 0 : j.front().size();
  Vec out = zero_vec(f, n * kb);
  for (std::size_t s = 0; s < parts.size(); ++s)
    for (std::size_t i = 0; i < n; ++i) {
      if (parts[s][i].is_zero()) continue;
      for (std::size_t b = 0; b < kb; ++b) out[i * kb + b] = out[i * kb + b] + parts[s][i] * j[s][b];
    }
  return out;
}

McTriple add_triples(const McTriple& a, const McTriple& b) { return {add(a.x, b.x), add(a.y, b.y), add(a.p, b.p)}; }

struct LiftContext {
  const SmallExtension& e;
  const PairDiagram& pd;
  TensoredPair over_b;
  PairCone cone;
  Cohomology h2;
  SubspaceCoords j;
  Matrix section;

  LiftContext(const SmallExtension& ext, const PairDiagram& diagram)
      : e(ext),
        pd(diagram),
        over_b(diagram, ext.big),
        cone(diagram.cone()),
        h2(cone.complex, 2),
        j(ext.big.field(), ext.big.dim(), ext.kernel),
        section(ext.section()) {
    if (j.size() != ext.kernel.size()) throw std::invalid_argument("kernel basis of the extension is dependent");
  }

  McTriple lift(const McTriple& xi) const {
    return {lift_vec(xi.x, pd.l().size(), section), lift_vec(xi.y, pd.n().size(), section),
            lift_vec(xi.p, pd.m().size(), section)};
  }

  /// Defect components in Cil², one per J basis vector.
  std::vector<Vec> defect_parts(const McTriple& lifted) const {
    McTriple defect = lift_defect(lifted, over_b);
    const Field f = e.big.field();
    const std::size_t kb = e.big.dim();
    auto xs = split_over_j(defect.x, pd.l().size(), kb, j, f, "dx̃ + ½[x̃,x̃]");
    auto ys = split_over_j(defect.y, pd.n().size(), kb, j, f, "dỹ + ½[ỹ,ỹ]");
    auto ps = split_over_j(defect.p, pd.m().size(), kb, j, f, "e^p̃*h(x̃) − g(ỹ)");
    std::vector<Vec> out;
    for (std::size_t s = 0; s < j.size(); ++s) {
      Vec rep = cone.assemble(xs[s], ys[s], ps[s]);
      if (!is_zero(cone.complex.differential().apply(rep)))
        throw std::logic_error("obstruction representative is not D-closed: " +
                               format_vector(cone.complex.space(), rep));
      out.push_back(std::move(rep));
    }
    return out;
  }

  ObstructionClass classify(const McTriple& lifted) const {
    ObstructionClass cls;
    cls.representatives = defect_parts(lifted);
    for (const auto& r : cls.representatives) cls.coordinates.push_back(h2.class_of(r));
    for (const auto& r : h2.representatives()) cls.h2_basis.push_back(format_vector(cone.complex.space(), r));
    return cls;
  }

  /// Cil¹ element as a correction triple in B coordinates.
  McTriple correction(const std::vector<Vec>& cil1_parts) const {
    const Field f = e.big.field();
    std::vector<Vec> us, vs, ws;
    for (const auto& c : cil1_parts) {
      us.push_back(cone.l_part(c));
      vs.push_back(cone.n_part(c));
      ws.push_back(cone.m_part(c));
    }
    return {join_over_j(us, pd.l().size(), e.kernel, f), join_over_j(vs, pd.n().size(), e.kernel, f),
            join_over_j(ws, pd.m().size(), e.kernel, f)};
  }
};

}  // namespace

bool ObstructionClass::is_zero() const {
  for (const auto& c : coordinates)
    if (!dgdef::is_zero(c)) return false;
  return true;
}

Vec ObstructionClass::flattened() const {
  Vec out;
  for (const auto& c : coordinates) out.insert(out.end(), c.begin(), c.end());
  return out;
}

McTriple lift_triple(const McTriple& xi, const SmallExtension& e, const TensoredPair& over_b,
                     const McTriple* correction) {
  Matrix s = e.section();
  const auto& pd = over_b.diagram();
  McTriple out{lift_vec(xi.x, pd.l().size(), s), lift_vec(xi.y, pd.n().size(), s), lift_vec(xi.p, pd.m().size(), s)};
  if (correction) out = add_triples(out, *correction);
  return out;
}

McTriple lift_defect(const McTriple& lifted, const TensoredPair& t) {
  McTriple out;
  out.x = mc_residual(t.l(), lifted.x);
  out.y = mc_residual(t.n(), lifted.y);
  out.p = sub(gauge_act(t.m(), lifted.p, t.h().apply(lifted.x)), t.g().apply(lifted.y));
  return out;
}

ObstructionClass obstruction_class(const McTriple& xi, const SmallExtension& e, const PairDiagram& pd,
                                   const McTriple* lift) {
  LiftContext ctx(e, pd);
  return ctx.classify(lift ? *lift : ctx.lift(xi));
}

std::optional<McTriple> solve_lift(const McTriple& xi, const SmallExtension& e, const PairDiagram& pd,
                                   std::mt19937_64* kernel_choice) {
  LiftContext ctx(e, pd);
  McTriple lifted = ctx.lift(xi);
  auto parts = ctx.defect_parts(lifted);
  const Field f = e.big.field();
  const auto& space = ctx.cone.complex.space();
  const auto& c1 = space.indices(1);
  Matrix d1 = ctx.cone.complex.block(1);
  std::vector<Vec> corrections;
  for (const auto& rep : parts) {
    Vec rhs;
    for (std::size_t i : space.indices(2)) rhs.push_back(-rep[i]);
    auto sol = solve(d1, rhs);
    if (!sol) return std::nullopt;
    Vec local = sol->particular;
    if (kernel_choice) {
      for (const auto& k : sol->kernel) {
        long c = f.is_rational() ? static_cast<long>((*kernel_choice)() % 7) - 3
                                 : static_cast<long>((*kernel_choice)() % f.characteristic());
        axpy(local, Scalar(f, c), k);
      }
    }
    Vec global = zero_vec(f, space.size());
    for (std::size_t i = 0; i < c1.size(); ++i) global[c1[i]] = local[i];
    corrections.push_back(std::move(global));
  }
  McTriple out = add_triples(lifted, ctx.correction(corrections));
  if (!mc_triple_valid(out, ctx.over_b).all_passed()) throw std::logic_error("corrected lift is not Maurer–Cartan");
  return out;
}

bool lift_exists_bruteforce(const McTriple& xi, const SmallExtension& e, const PairDiagram& pd,
                            std::uint64_t limit) {
  LiftContext ctx(e, pd);
  const Field f = e.big.field();
  if (f.is_rational()) throw std::domain_error("brute-force lifting needs a prime field");
  const McTriple lifted = ctx.lift(xi);
  const auto& space = ctx.cone.complex.space();
  const std::size_t r = ctx.j.size();
  // Cil¹ = L¹ ⊕ N¹ ⊕ M⁰. The MC equations for x̃ and ỹ only see their own
  // block, so the search runs over x- and y-corrections separately and then
  // over every p-correction against each surviving pair.
  std::vector<std::size_t> blocks[3];
  for (std::size_t i : space.indices(1))
    blocks[i < ctx.cone.n_offset() ? 0 : i < ctx.cone.m_offset() ? 1 : 2].push_back(i);
  auto corrections = [&](int block, const std::function<void(const McTriple&)>& visit) {
    const auto& idx = blocks[block];
    const std::size_t dim = idx.size() * r;
    std::vector<std::size_t> support(dim);
    for (std::size_t i = 0; i < dim; ++i) support[i] = i;
    for_each_vector(f, dim, support, [&](const Vec& coeffs) {
      std::vector<Vec> parts(r, zero_vec(f, space.size()));
      for (std::size_t s = 0; s < r; ++s)
        for (std::size_t i = 0; i < idx.size(); ++i) parts[s][idx[i]] = coeffs[s * idx.size() + i];
      visit(add_triples(lifted, ctx.correction(parts)));
    }, limit);
  };
  std::vector<Vec> xs, ys;
  corrections(0, [&](const McTriple& c) {
    if (is_zero(mc_residual(ctx.over_b.l(), c.x))) xs.push_back(c.x);
  });
  corrections(1, [&](const McTriple& c) {
    if (is_zero(mc_residual(ctx.over_b.n(), c.y))) ys.push_back(c.y);
  });
  if (xs.empty() || ys.empty()) return false;
  std::vector<Vec> hx, gy;
  for (const auto& x : xs) hx.push_back(ctx.over_b.h().apply(x));
  for (const auto& y : ys) gy.push_back(ctx.over_b.g().apply(y));
  bool found = false;
  struct Stop {};
  try {
    corrections(2, [&](const McTriple& c) {
      for (std::size_t a = 0; a < xs.size(); ++a) {
        const Vec moved = gauge_act(ctx.over_b.m(), c.p, hx[a]);
        for (std::size_t b = 0; b < ys.size(); ++b)
          if (moved == gy[b] && mc_triple_valid({xs[a], ys[b], c.p}, ctx.over_b).all_passed()) {
            found = true;
            throw Stop{};
          }
      }
    });
  } catch (const Stop&) {
  }
  return found;
}

ProbeResult curvilinear_probe(const McTriple& xi1, const PairDiagram& pd, const ProbeOptions& opts) {
  if (opts.depth < 1 || opts.depth > 8) throw std::invalid_argument("probe depth must be in [1, 8]");
  const Field f = pd.field();
  if (!f.is_rational() && f.characteristic() < opts.depth + 1)
    throw std::domain_error("characteristic " + std::to_string(f.characteristic()) + " is too small for depth " +
                            std::to_string(opts.depth));
  TensoredPair first(pd, ArtinAlgebra::truncated_polynomial(f, 1, "t"));
  if (!mc_triple_valid(xi1, first).all_passed()) throw std::invalid_argument("ξ₁ is not an MC triple over k[t]/(t²)");
  ProbeResult result;
  result.depth = opts.depth;
  std::optional<std::mt19937_64> rng;
  if (opts.randomized_seed) rng.emplace(*opts.randomized_seed);
  McTriple current = xi1;
  for (unsigned n = 2; n <= opts.depth; ++n) {
    SmallExtension e = curvilinear(f, n, "t");
    ProbeStage stage;
    stage.order = n;
    stage.obstruction = obstruction_class(current, e, pd);
    stage.obstructed = !stage.obstruction.is_zero();
    result.stages.push_back(stage);
    if (stage.obstructed) {
      result.first_obstructed = n;
      break;
    }
    auto next = solve_lift(current, e, pd, rng ? &*rng : nullptr);
    if (!next) throw std::logic_error("zero obstruction class but no lift solves the defect");
    current = std::move(*next);
  }
  result.last_lift = current;
  return result;
}

bool FunctorIsoReport::all_bijective() const {
  for (const auto& a : algebras)
    if (!a.bijective()) return false;
  return true;
}

namespace {

std::string algebra_name(const ArtinAlgebra& a) {
  std::string s = "m_A = <";
  for (std::size_t i = 0; i < a.dim(); ++i) s += (i ? ", " : "") + a.monomials()[i];
  return s + ">";
}

std::string triple_key(const McTriple& t) { return to_string(t.x) + "|" + to_string(t.y) + "|" + to_string(t.p); }

std::size_t count_roots(const std::vector<std::size_t>& label) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < label.size(); ++i) n += label[i] == i;
  return n;
}

}  // namespace

FunctorIsoReport verify_functor_iso(const DiagramMorphism& dm, const std::vector<ArtinAlgebra>& family,
                                    std::uint64_t limit) {
  FunctorIsoReport report;
  report.quasi_iso = is_quasi_isomorphism(induced_cone_map(dm));
  for (const auto& alg : family) {
    AlgebraIsoReport ar;
    ar.algebra = algebra_name(alg);
    TensoredPair src(dm.source(), alg), tgt(dm.target(), alg);
    auto s_triples = enumerate_mc_triples(src, limit);
    auto t_triples = enumerate_mc_triples(tgt, limit);
    auto s_label = orbit_partition(s_triples, src);
    auto t_label = orbit_partition(t_triples, tgt);
    ar.source_triples = s_triples.size();
    ar.target_triples = t_triples.size();
    ar.source_orbits = count_roots(s_label);
    ar.target_orbits = count_roots(t_label);
    std::unordered_map<std::string, std::size_t> t_index;
    for (std::size_t i = 0; i < t_triples.size(); ++i) t_index.emplace(triple_key(t_triples[i]), i);
    const std::size_t k = alg.dim();
    Matrix al = tensor_identity(dm.alpha_l(), k), am = tensor_identity(dm.alpha_m(), k),
           an = tensor_identity(dm.alpha_n(), k);
    std::map<std::size_t, std::size_t> orbit_image;  // source root -> target root
    std::map<std::size_t, std::size_t> preimage;     // target root -> source root
    for (std::size_t i = 0; i < s_triples.size(); ++i) {
      McTriple img{al.apply(s_triples[i].x), an.apply(s_triples[i].y), am.apply(s_triples[i].p)};
      auto it = t_index.find(triple_key(img));
      if (it == t_index.end()) throw std::logic_error("diagram morphism does not preserve MC triples");
      const std::size_t troot = t_label[it->second];
      auto [pos, fresh] = orbit_image.emplace(s_label[i], troot);
      if (!fresh && pos->second != troot && ar.well_defined) {
        ar.well_defined = false;
        ar.witness = "source orbit of triple " + std::to_string(i) + " meets two target orbits";
      }
      auto [back, first] = preimage.emplace(troot, s_label[i]);
      if (!first && back->second != s_label[i] && ar.injective) {
        ar.injective = false;
        if (ar.witness.empty())
          ar.witness = "source orbits of triples " + std::to_string(back->second) + " and " +
                       std::to_string(s_label[i]) + " map to the same target orbit";
      }
    }
    for (std::size_t i = 0; i < t_triples.size(); ++i)
      if (t_label[i] == i && !preimage.count(i)) {
        ar.surjective = false;
        if (ar.witness.empty()) ar.witness = "target orbit of triple " + std::to_string(i) + " is not hit";
        break;
      }
    report.algebras.push_back(std::move(ar));
  }
  return report;
}

DiagramMorphism injective_reduction_morphism(const PairDiagram& pd) {
  const Field f = pd.field();
  const Matrix& h = pd.h().matrix();
  if (rank(h) != pd.l().size()) throw StructureError("h is not injective");
  std::vector<Vec> image;
  for (std::size_t c = 0; c < h.cols(); ++c) image.push_back(h.column(c));
  QuotientDgla q = quotient_by_ideal(pd.m(), image);
  auto zero = std::make_shared<const Dgla>(Dgla::abelian(f, GradedSpace{}));
  auto n = pd.g().source();
  PairDiagram target(DglaMorphism(zero, q.dgla, Matrix(f, q.dgla->size(), 0)),
                     DglaMorphism(n, q.dgla, q.projection * pd.g().matrix()));
  return DiagramMorphism(pd, target, Matrix(f, 0, pd.l().size()), q.projection, Matrix::identity(f, n->size()));
}

std::string to_string(SmoothnessCertificate c) {
  switch (c) {
    case SmoothnessCertificate::abelian: return "abelian";
    case SmoothnessCertificate::h2_vanishes: return "H2 vanishes";
    case SmoothnessCertificate::abelian_model: return "smooth map from an abelian pair";
    case SmoothnessCertificate::exhaustive: return "exhaustive";
    case SmoothnessCertificate::none: break;
  }
  return "none";
}

bool smooth_exhaustively(const PairDiagram& pd, const SmallExtension& e, std::uint64_t limit) {
  TensoredPair over_a(pd, e.small);
  for (const auto& xi : enumerate_mc_triples(over_a, limit))
    if (!lift_exists_bruteforce(xi, e, pd, limit)) return false;
  return true;
}

bool smooth_cone_map(const ChainMap& f) {
  const QuasiIsoCertificate cert = is_quasi_isomorphism(f);
  for (const auto& d : cert.degrees) {
    if (d.degree == 1 && d.rank != d.target_dim) return false;
    if (d.degree == 2 && d.rank != d.source_dim) return false;
  }
  return true;
}

SmoothnessCertificate certify_smooth(const PairDiagram& pd, const std::vector<SmallExtension>& extensions,
                                     std::uint64_t limit, const DiagramMorphism* model) {
  auto abelian = [](const PairDiagram& d) { return d.l().is_abelian() && d.m().is_abelian() && d.n().is_abelian(); };
  if (abelian(pd)) return SmoothnessCertificate::abelian;
  if (cohomology(pd.cone().complex, 2).dim() == 0) return SmoothnessCertificate::h2_vanishes;
  if (model) {
    const PairDiagram& t = model->target();
    const bool same = &t.l() == &pd.l() && &t.m() == &pd.m() && &t.n() == &pd.n();
    if (!same) throw std::invalid_argument("abelian model does not map into the certified pair");
    if (abelian(model->source()) && smooth_cone_map(induced_cone_map(*model)))
      return SmoothnessCertificate::abelian_model;
  }
  if (pd.field().is_rational()) return SmoothnessCertificate::none;
  try {
    for (const auto& e : extensions)
      if (!smooth_exhaustively(pd, e, limit)) return SmoothnessCertificate::none;
  } catch (const std::length_error&) {
    return SmoothnessCertificate::none;
  }
  return SmoothnessCertificate::exhaustive;
}

bool AnnihilationReport::all_annihilated() const {
  for (const auto& e : entries)
    if (!e.annihilated) return false;
  return true;
}

AnnihilationReport annihilation_check(const DiagramMorphism& dm, const std::vector<CorpusEntry>& corpus,
                                      std::uint64_t limit, const DiagramMorphism* target_model) {
  AnnihilationReport report;
  std::vector<SmallExtension> extensions;
  for (const auto& c : corpus) extensions.push_back(c.extension);
  report.certificate = certify_smooth(dm.target(), extensions, limit, target_model);
  if (report.certificate == SmoothnessCertificate::none)
    throw std::invalid_argument("target pair is not certified smooth");
  report.h2_map = induced_on_cohomology(induced_cone_map(dm), 2);
  for (const auto& c : corpus) {
    AnnihilationEntry entry;
    entry.name = c.name;
    entry.source_class = obstruction_class(c.xi, c.extension, dm.source());
    for (const auto& coords : entry.source_class.coordinates) {
      Vec img = report.h2_map.apply(coords);
      if (!is_zero(img)) entry.annihilated = false;
      entry.image.push_back(std::move(img));
    }
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace dgdef
