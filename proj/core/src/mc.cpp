#include "dgdef/mc.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include <gmpxx.h>

namespace dgdef {

namespace {

constexpr int kSeriesGuard = 64;

void require_degree(const Dgla& g, std::span<const Scalar> v, int degree, const char* what) {
  if (v.size() != g.size()) throw std::invalid_argument(std::string(what) + " has wrong length");
  auto deg = g.homogeneous_degree(v);
  if (deg && *deg != degree)
    throw std::invalid_argument(std::string(what) + " must have degree " + std::to_string(degree));
  if (!deg && !is_zero(v)) throw std::invalid_argument(std::string(what) + " is not homogeneous");
}

/// Dynkin coefficient of a right-nested word (bit i set = letter Y at
/// position i) of length k.
mpq_class dynkin_coefficient(std::uint32_t word, unsigned k) {
  mpq_class total = 0;
  // Each cut pattern splits the word into blocks X^r Y^s with r + s >= 1.
  for (std::uint32_t cuts = 0; cuts < (1u << (k - 1)); ++cuts) {
    mpz_class denom = k;
    unsigned blocks = 0;
    bool ok = true;
    unsigned start = 0;
    for (unsigned pos = 0; pos < k && ok; ++pos) {
      const bool end = pos == k - 1 || ((cuts >> pos) & 1u);
      if (!end) continue;
      unsigned r = 0, s = 0;
      bool seen_y = false;
      for (unsigned q = start; q <= pos; ++q) {
        const bool y = (word >> q) & 1u;
        if (y) {
          seen_y = true;
          ++s;
        } else if (seen_y) {
          ok = false;
          break;
        } else {
          ++r;
        }
      }
      mpz_class fr, fs;
      mpz_fac_ui(fr.get_mpz_t(), r);
      mpz_fac_ui(fs.get_mpz_t(), s);
      denom *= fr * fs;
      ++blocks;
      start = pos + 1;
    }
    if (!ok) continue;
    mpq_class term(1, 1);
    term /= mpq_class(denom * blocks);
    if (blocks % 2 == 0) term = -term;
    total += term;
  }
  return total;
}

mpq_class dynkin_cached(std::uint32_t word, unsigned k) {
  static std::map<std::pair<unsigned, std::uint32_t>, mpq_class> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto [it, fresh] = cache.try_emplace({k, word});
  if (fresh) it->second = dynkin_coefficient(word, k);
  return it->second;
}

Scalar to_field(Field f, const mpq_class& q) {
  if (f.is_rational()) return Scalar(f, q);
  mpz_class den = q.get_den();
  mpz_class num = q.get_num();
  const unsigned long p = f.characteristic();
  if (mpz_divisible_ui_p(den.get_mpz_t(), p))
    throw std::domain_error("series coefficient not invertible in characteristic " + std::to_string(p));
  mpz_class nr = num % static_cast<unsigned long>(p);
  if (nr < 0) nr += p;
  mpz_class dr = den % static_cast<unsigned long>(p);
  return Scalar(f, nr.get_si()) / Scalar(f, dr.get_si());
}

std::string key_of(std::span<const Scalar> v) { return to_string(v); }

std::string key_of(const McTriple& t) { return key_of(t.x) + "|" + key_of(t.y) + "|" + key_of(t.p); }

}  // namespace

Vec mc_residual(const Dgla& g, std::span<const Scalar> x) {
  require_degree(g, x, 1, "MC element");
  Vec r = g.d(x);
  Vec sq = g.bracket(x, x);
  if (!is_zero(sq)) axpy(r, Scalar(g.field(), 1, 2), sq);
  return r;
}

Vec gauge_act(const Dgla& g, std::span<const Scalar> a, std::span<const Scalar> x) {
  require_degree(g, a, 0, "gauge element");
  require_degree(g, x, 1, "MC element");
  Vec out(x.begin(), x.end());
  Vec term = sub(g.bracket(a, x), g.d(a));
  for (int n = 0; !is_zero(term); ++n) {
    if (n > kSeriesGuard) throw std::domain_error("gauge series does not terminate: element is not nilpotent");
    axpy(out, factorial(g.field(), n + 1).inverse(), term);
    term = g.bracket(a, term);
  }
  return out;
}

Vec bch(const Dgla& g, std::span<const Scalar> p, std::span<const Scalar> q) {
  require_degree(g, p, 0, "BCH argument");
  require_degree(g, q, 0, "BCH argument");
  const Field f = g.field();
  Vec out = add(p, q);
  // Nonzero right-nested words of the current length, with their values.
  std::vector<std::pair<std::uint32_t, Vec>> level;
  if (!is_zero(p)) level.emplace_back(0u, Vec(p.begin(), p.end()));
  if (!is_zero(q)) level.emplace_back(1u, Vec(q.begin(), q.end()));
  for (unsigned k = 2; !level.empty(); ++k) {
    if (k > 31) throw std::domain_error("BCH series does not terminate: arguments are not nilpotent");
    std::vector<std::pair<std::uint32_t, Vec>> next;
    for (const auto& [word, value] : level) {
      // Prepend X (bit 0) or Y (bit 1): positions shift up by one.
      for (std::uint32_t letter = 0; letter < 2; ++letter) {
        Vec v = g.bracket(letter ? q : p, value);
        if (is_zero(v)) continue;
        next.emplace_back((word << 1) | letter, std::move(v));
      }
    }
    if (next.empty()) break;
    for (const auto& [word, value] : next) {
      const mpq_class c = dynkin_cached(word, k);
      if (c != 0) axpy(out, to_field(f, c), value);
    }
    level = std::move(next);
  }
  return out;
}

TensoredPair::TensoredPair(PairDiagram diagram, ArtinAlgebra algebra)
    : diagram_(std::move(diagram)), algebra_(std::move(algebra)) {
  if (!(algebra_.field() == diagram_.field())) throw FieldMismatch("pair diagram and Artin algebra fields differ");
  require_exp_characteristic(algebra_);
  l_ = tensor_with_ideal(diagram_.l(), algebra_);
  m_ = tensor_with_ideal(diagram_.m(), algebra_);
  n_ = tensor_with_ideal(diagram_.n(), algebra_);
  h_ = tensor_identity(diagram_.h().matrix(), algebra_.dim());
  g_ = tensor_identity(diagram_.g().matrix(), algebra_.dim());
}

McTriple zero_triple(const TensoredPair& t) { return {t.l().zero(), t.n().zero(), t.m().zero()}; }

GaugePair zero_gauge(const TensoredPair& t) { return {t.l().zero(), t.n().zero()}; }

CheckList mc_triple_valid(const McTriple& xi, const TensoredPair& t) {
  CheckList report;
  std::string witness;
  auto degree_ok = [&](const Dgla& g, const Vec& v, int d, const char* name) {
    if (!witness.empty()) return;
    if (v.size() != g.size()) {
      witness = std::string(name) + " has wrong length";
      return;
    }
    auto deg = g.homogeneous_degree(v);
    if (deg && *deg != d) witness = std::string(name) + " has degree " + std::to_string(*deg);
    if (!deg && !is_zero(v)) witness = std::string(name) + " is not homogeneous";
  };
  degree_ok(t.l(), xi.x, 1, "x");
  degree_ok(t.n(), xi.y, 1, "y");
  degree_ok(t.m(), xi.p, 0, "p");
  report.add("degrees", witness.empty(), witness);
  if (!witness.empty()) return report;

  Vec rx = mc_residual(t.l(), xi.x);
  report.add("mc(x)", is_zero(rx), "dx + ½[x,x] = " + to_string(rx));
  Vec ry = mc_residual(t.n(), xi.y);
  report.add("mc(y)", is_zero(ry), "dy + ½[y,y] = " + to_string(ry));
  Vec lhs = t.g().apply(xi.y);
  Vec rhs = gauge_act(t.m(), xi.p, t.h().apply(xi.x));
  report.add("g(y)=e^p*h(x)", lhs == rhs, "g(y) = " + to_string(lhs) + " but e^p*h(x) = " + to_string(rhs));
  return report;
}

McTriple gauge_act_pair(const GaugePair& gp, const McTriple& xi, const TensoredPair& t) {
  McTriple out;
  out.x = gauge_act(t.l(), gp.a, xi.x);
  out.y = gauge_act(t.n(), gp.b, xi.y);
  Vec minus_ha = scale(Scalar(t.field(), -1), t.h().apply(gp.a));
  out.p = bch(t.m(), bch(t.m(), t.g().apply(gp.b), xi.p), minus_ha);
  return out;
}

GaugePair compose(const GaugePair& first, const GaugePair& second, const TensoredPair& t) {
  return {bch(t.l(), first.a, second.a), bch(t.n(), first.b, second.b)};
}

const std::vector<std::size_t>& degree_indices(const Dgla& g, int degree) { return g.space().indices(degree); }

namespace {

/// Linearized stage data: unknowns α ∈ L⁰⊗V_k, β ∈ N⁰⊗V_k with V_k a
/// complement of m^{k+1} in m^k; equations in (L¹, N¹, M⁰)⊗(m/m^{k+1}).
struct Stage {
  Matrix system;                 // equations × unknowns
  std::vector<GaugePair> columns;  // unknown -> correction
  QuotientMap quotient;          // m_A -> m_A / m^{k+1}
};

Vec project_tensor(const Vec& v, std::size_t rows, const QuotientMap& q, std::size_t k) {
  Vec out;
  out.reserve(rows * q.quotient_dim());
  for (std::size_t i = 0; i < rows; ++i) {
    Vec coeff(v.begin() + static_cast<std::ptrdiff_t>(i * k), v.begin() + static_cast<std::ptrdiff_t>((i + 1) * k));
    Vec p = q.project(coeff);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

Vec stage_equation(const McTriple& r, const TensoredPair& t, const QuotientMap& q) {
  const std::size_t k = t.algebra().dim();
  Vec out = project_tensor(r.x, t.diagram().l().size(), q, k);
  Vec y = project_tensor(r.y, t.diagram().n().size(), q, k);
  Vec p = project_tensor(r.p, t.diagram().m().size(), q, k);
  out.insert(out.end(), y.begin(), y.end());
  out.insert(out.end(), p.begin(), p.end());
  return out;
}

Stage build_stage(const TensoredPair& t, unsigned order) {
  const Field f = t.field();
  const ArtinAlgebra& alg = t.algebra();
  const std::size_t k = alg.dim();
  Stage st;
  std::vector<Vec> next = alg.power(order + 1);
  st.quotient = QuotientMap(f, k, next);
  std::vector<Vec> gens = next;
  const auto& here = alg.power(order);
  gens.insert(gens.end(), here.begin(), here.end());
  auto indep = independent_subset(f, k, gens);
  std::vector<Vec> complement(indep.begin() + static_cast<std::ptrdiff_t>(next.size()), indep.end());

  const Scalar minus = Scalar(f, -1);
  std::vector<Vec> cols;
  auto add_unknowns = [&](const Dgla& base, bool is_l) {
    for (std::size_t i : base.space().indices(0))
      for (const auto& c : complement) {
        Vec u = zero_vec(f, base.size() * k);
        for (std::size_t j = 0; j < k; ++j) u[i * k + j] = c[j];
        GaugePair gp = zero_gauge(t);
        McTriple lin = zero_triple(t);
        if (is_l) {
          gp.a = u;
          lin.x = scale(minus, t.l().d(u));
          lin.p = scale(minus, t.h().apply(u));
        } else {
          gp.b = u;
          lin.y = scale(minus, t.n().d(u));
          lin.p = t.g().apply(u);
        }
        st.columns.push_back(gp);
        cols.push_back(stage_equation(lin, t, st.quotient));
      }
  };
  add_unknowns(t.diagram().l(), true);
  add_unknowns(t.diagram().n(), false);
  const std::size_t rows = (t.diagram().l().size() + t.diagram().n().size() + t.diagram().m().size()) *
                           st.quotient.quotient_dim();
  st.system = Matrix::from_columns(f, rows, cols);
  return st;
}

McTriple difference(const McTriple& a, const McTriple& b) { return {sub(a.x, b.x), sub(a.y, b.y), sub(a.p, b.p)}; }

struct Search {
  const McTriple& from;
  const McTriple& to;
  const TensoredPair& t;
  std::vector<Stage> stages;
  std::uint64_t budget;

  std::optional<GaugePair> run(const GaugePair& current, unsigned order) {
    McTriple now = gauge_act_pair(current, from, t);
    if (order >= stages.size() + 1) {
      if (now == to) return current;
      return std::nullopt;
    }
    const Stage& st = stages[order - 1];
    Vec rhs = stage_equation(difference(to, now), t, st.quotient);
    auto sol = solve(st.system, rhs);
    if (!sol) return std::nullopt;
    const Field f = t.field();
    auto apply = [&](const Vec& coeffs) {
      GaugePair next = current;
      for (std::size_t c = 0; c < coeffs.size(); ++c) {
        if (coeffs[c].is_zero()) continue;
        axpy(next.a, coeffs[c], st.columns[c].a);
        axpy(next.b, coeffs[c], st.columns[c].b);
      }
      return next;
    };
    if (f.is_rational() || sol->kernel.empty()) return run(apply(sol->particular), order + 1);
    // Enumerate particular + kernel combinations over F_p.
    const std::uint32_t p = f.characteristic();
    std::vector<std::uint32_t> digits(sol->kernel.size(), 0);
    while (true) {
      if (budget == 0) return std::nullopt;
      --budget;
      Vec coeffs = sol->particular;
      for (std::size_t i = 0; i < digits.size(); ++i)
        if (digits[i]) axpy(coeffs, Scalar(f, digits[i]), sol->kernel[i]);
      if (auto found = run(apply(coeffs), order + 1)) return found;
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == p) digits[i++] = 0;
      if (i == digits.size()) break;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<GaugePair> gauge_equivalent(const McTriple& xi1, const McTriple& xi2, const TensoredPair& t,
                                          const GaugeSearchOptions& opts) {
  if (xi1 == xi2) return zero_gauge(t);
  Search s{xi1, xi2, t, {}, opts.max_branches};
  const unsigned top = t.algebra().nilpotency_index();
  for (unsigned order = 1; order + 1 <= top; ++order) s.stages.push_back(build_stage(t, order));
  return s.run(zero_gauge(t), 1);
}

void for_each_vector(Field f, std::size_t size, const std::vector<std::size_t>& support,
                     const std::function<void(const Vec&)>& visit, std::uint64_t limit) {
  if (f.is_rational()) throw std::domain_error("enumeration needs a prime field");
  const std::uint32_t p = f.characteristic();
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < support.size(); ++i) {
    count *= p;
    if (count > limit) throw std::length_error("enumeration exceeds " + std::to_string(limit) + " elements");
  }
  std::vector<std::uint32_t> digits(support.size(), 0);
  Vec v = zero_vec(f, size);
  while (true) {
    visit(v);
    std::size_t i = 0;
    while (i < digits.size()) {
      if (++digits[i] == p) {
        digits[i] = 0;
        v[support[i]] = Scalar(f);
        ++i;
      } else {
        v[support[i]] = Scalar(f, digits[i]);
        break;
      }
    }
    if (i == digits.size()) break;
  }
}

std::vector<McTriple> enumerate_mc_triples(const TensoredPair& t, std::uint64_t limit) {
  std::vector<McTriple> out;
  std::vector<Vec> xs, ys;
  for_each_vector(t.field(), t.l().size(), degree_indices(t.l(), 1), [&](const Vec& x) {
    if (is_zero(mc_residual(t.l(), x))) xs.push_back(x);
  }, limit);
  for_each_vector(t.field(), t.n().size(), degree_indices(t.n(), 1), [&](const Vec& y) {
    if (is_zero(mc_residual(t.n(), y))) ys.push_back(y);
  }, limit);
  std::vector<Vec> gys;
  for (const auto& y : ys) gys.push_back(t.g().apply(y));
  for_each_vector(t.field(), t.m().size(), degree_indices(t.m(), 0), [&](const Vec& p) {
    for (const auto& x : xs) {
      Vec moved = gauge_act(t.m(), p, t.h().apply(x));
      for (std::size_t j = 0; j < ys.size(); ++j)
        if (gys[j] == moved) out.push_back({x, ys[j], p});
    }
  }, limit);
  return out;
}

std::vector<GaugePair> enumerate_gauge_pairs(const TensoredPair& t, std::uint64_t limit) {
  std::vector<Vec> as, bs;
  for_each_vector(t.field(), t.l().size(), degree_indices(t.l(), 0), [&](const Vec& a) { as.push_back(a); }, limit);
  for_each_vector(t.field(), t.n().size(), degree_indices(t.n(), 0), [&](const Vec& b) { bs.push_back(b); }, limit);
  if (static_cast<std::uint64_t>(as.size()) * bs.size() > limit)
    throw std::length_error("gauge group exceeds " + std::to_string(limit) + " elements");
  std::vector<GaugePair> out;
  for (const auto& a : as)
    for (const auto& b : bs) out.push_back({a, b});
  return out;
}

namespace {

std::vector<std::size_t> orbit_components(const std::vector<McTriple>& triples, const TensoredPair& t,
                                          const std::vector<GaugePair>& group) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < triples.size(); ++i) index.emplace(key_of(triples[i]), i);
  std::vector<std::size_t> label(triples.size());
  for (std::size_t i = 0; i < triples.size(); ++i) label[i] = i;
  auto root = [&](std::size_t i) {
    while (label[i] != i) i = label[i] = label[label[i]];
    return i;
  };
  for (std::size_t i = 0; i < triples.size(); ++i)
    for (const auto& gp : group) {
      auto it = index.find(key_of(gauge_act_pair(gp, triples[i], t)));
      if (it == index.end()) throw std::logic_error("gauge action left the enumerated MC set");
      std::size_t a = root(i), b = root(it->second);
      if (a != b) label[std::max(a, b)] = std::min(a, b);
    }
  for (std::size_t i = 0; i < triples.size(); ++i) label[i] = root(i);
  return label;
}

}  // namespace

std::vector<GaugePair> gauge_generators(const TensoredPair& t) {
  std::vector<GaugePair> out;
  const Vec a0 = zero_vec(t.field(), t.l().size()), b0 = zero_vec(t.field(), t.n().size());
  for (std::size_t i : degree_indices(t.l(), 0)) out.push_back({unit_vec(t.field(), a0.size(), i), b0});
  for (std::size_t i : degree_indices(t.n(), 0)) out.push_back({a0, unit_vec(t.field(), b0.size(), i)});
  return out;
}

std::vector<std::size_t> orbit_partition(const std::vector<McTriple>& triples, const TensoredPair& t) {
  // Orbits of a group action are the connected components of the action
  // graph of any generating set.
  return orbit_components(triples, t, gauge_generators(t));
}

std::vector<std::size_t> orbit_partition_bruteforce(const std::vector<McTriple>& triples, const TensoredPair& t,
                                                    std::uint64_t limit) {
  auto group = enumerate_gauge_pairs(t, limit);
  if (static_cast<std::uint64_t>(group.size()) * triples.size() > 50 * limit)
    throw std::length_error("orbit computation too large");
  return orbit_components(triples, t, group);
}

}  // namespace dgdef
