#include "cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <thread>

namespace dgdef::cli {

namespace {

using io::Model;

std::string scalar_text(const Scalar& s) { return s.to_string(); }

Tree vec_tree(std::span<const Scalar> v) {
  Tree out = Tree::array();
  for (const auto& s : v) out.push_back(scalar_text(s));
  return out;
}

std::string format_tensor(const std::vector<std::string>& labels, const std::vector<std::string>& monos,
                          std::span<const Scalar> v) {
  std::string out;
  const std::size_t k = monos.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    if (!out.empty()) out += " + ";
    if (!v[i].is_one()) out += scalar_text(v[i]) + "*";
    out += labels[i / k] + "⊗" + monos[i % k];
  }
  return out.empty() ? "0" : out;
}

Tree triple_tree(const McTriple& xi, const PairDiagram& pd, const ArtinAlgebra& a) {
  Tree t;
  t["x"] = format_tensor(pd.l().space().labels(), a.monomials(), xi.x);
  t["y"] = format_tensor(pd.n().space().labels(), a.monomials(), xi.y);
  t["p"] = format_tensor(pd.m().space().labels(), a.monomials(), xi.p);
  return t;
}

struct Context {
  const Options& opts;
  const Model& model;
  bool ok = true;

  Tree checks(const CheckList& list) {
    Tree out = Tree::array();
    for (const auto& c : list.checks()) out.push_back(check(c.name, c.passed, c.witness));
    return out;
  }
  Tree check(const std::string& name, bool passed, const std::string& witness = {}) {
    ok = ok && passed;
    Tree t;
    t["check"] = name;
    t["verdict"] = passed ? "pass" : "fail";
    if (!passed && !witness.empty()) t["witness"] = witness;
    return t;
  }
  Tree item(const std::string& kind, const std::string& name) {
    Tree t;
    t["kind"] = kind;
    t["name"] = name;
    return t;
  }
  std::vector<ArtinAlgebra> family() const {
    std::vector<ArtinAlgebra> out;
    for (const auto& [kind, name] : model.order)
      if (kind == "artin") out.push_back(model.artins.at(name));
    if (out.empty())
      for (unsigned n = 1; n <= 2; ++n) out.push_back(ArtinAlgebra::truncated_polynomial(model.field, n, "t"));
    return out;
  }
  void require_prime(const std::string& what) const {
    if (!model.field.is_prime()) throw std::invalid_argument(what + " enumerates MC triples and needs a prime field");
  }
};

CheckList subspace_closure(const BigradedAlgebra& a, const std::vector<Vec>& span, bool ideal) {
  const Field f = a.field();
  CheckList out;
  std::string bad;
  for (const auto& v : span) {
    for (const Vec& w : {a.del(v), a.delbar(v)})
      if (bad.empty() && !in_span(f, span, w)) bad = "∂ or ∂̄ of " + format_element(a, v) + " leaves the span";
  }
  out.add("differentials", bad.empty(), bad);
  bad.clear();
  for (const auto& v : span) {
    if (ideal) {
      for (std::size_t i = 0; i < a.size() && bad.empty(); ++i)
        if (!in_span(f, span, a.multiply(unit_vec(f, a.size(), i), v)))
          bad = a.label(i) + "·(" + format_element(a, v) + ") leaves the ideal";
    } else {
      for (const auto& w : span)
        if (bad.empty() && !in_span(f, span, a.multiply(v, w)))
          bad = "(" + format_element(a, v) + ")·(" + format_element(a, w) + ") leaves the subalgebra";
    }
  }
  out.add(ideal ? "ideal" : "subalgebra", bad.empty(), bad);
  return out;
}

Tree cone_checks(Context& ctx, const PairDiagram& pd) {
  PairCone cone = pd.cone();
  const Matrix& d = cone.complex.differential();
  Tree out = Tree::array();
  out.push_back(ctx.check("D^2=0", (d * d).is_zero()));
  int chi_cone = 0, chi = 0;
  for (int i : cone.complex.space().support()) chi_cone += (i % 2 ? -1 : 1) * static_cast<int>(cohomology(cone.complex, i).dim());
  auto euler = [](const CochainComplex& c) {
    int x = 0;
    for (int i : c.space().support()) x += (i % 2 ? -1 : 1) * static_cast<int>(cohomology(c, i).dim());
    return x;
  };
  chi = euler(pd.l().complex()) + euler(pd.n().complex()) - euler(pd.m().complex());
  out.push_back(ctx.check("euler", chi_cone == chi,
                          "χ(cone) = " + std::to_string(chi_cone) + ", χ(L)+χ(N)−χ(M) = " + std::to_string(chi)));
  return out;
}

Outcome validate(Context& ctx) {
  Tree items = Tree::array();
  const Model& m = ctx.model;
  for (const auto& [kind, name] : m.order) {
    Tree it = ctx.item(kind, name);
    if (kind == "dgla") {
      it["checks"] = ctx.checks(validate_dgla(*m.dglas.at(name)));
    } else if (kind == "morphism") {
      it["checks"] = ctx.checks(m.morphisms.at(name).checks);
    } else if (kind == "pair") {
      it["checks"] = cone_checks(ctx, m.pairs.at(name));
    } else if (kind == "artin") {
      it["dim"] = m.artins.at(name).dim();
      it["nilpotency"] = m.artins.at(name).nilpotency_index();
    } else if (kind == "extension") {
      it["checks"] = ctx.checks(validate_small_extension(m.extensions.at(name)));
    } else if (kind == "bicomplex") {
      const auto& a = m.bicomplexes.at(name).algebra;
      it["dim"] = a.size();
      it["checks"] = ctx.checks(validate_bicomplex(a));
      DelDelbarResult dd = del_delbar_predicate(a);
      it["del_delbar"] = dd.holds;
      if (!dd.holds) it["del_delbar_witness"] = format_element(a, dd.witness);
    } else if (kind == "ideal" || kind == "subalgebra") {
      const auto& s = (kind == "ideal" ? m.ideals : m.subalgebras).at(name);
      it["dim"] = s.span.size();
      it["checks"] = ctx.checks(subspace_closure(m.bicomplexes.at(s.in).algebra, s.span, kind == "ideal"));
    } else if (kind == "harmonic") {
      it["dim"] = m.harmonics.at(name).span.size();
    } else if (kind == "contraction") {
      const auto& c = m.contractions.at(name);
      const auto& a = m.bicomplexes.at(c.algebra).algebra;
      Tree checks = Tree::array();
      Check bd = contraction_bidegree_check(c.action, a);
      checks.push_back(ctx.check(bd.name, bd.passed, bd.witness));
      if (bd.passed) {
        std::string why;
        try {
          contraction_morphism(c.action, HtpDgla(a));
        } catch (const std::exception& e) {
          why = e.what();
        }
        checks.push_back(ctx.check("morphism", why.empty(), why));
      }
      it["checks"] = checks;
    } else if (kind == "trace") {
      it["in"] = m.traces.at(name).in;
    } else if (kind == "diagram-morphism") {
      const auto& d = m.diagrams.at(name);
      QuasiIsoCertificate q = is_quasi_isomorphism(induced_cone_map(d.morphism));
      it["quasi_isomorphism"] = q.quasi_isomorphism;
      if (d.three_level) {
        const auto& tl = *d.three_level;
        Tree checks = ctx.checks(validate_configuration(tl.configuration));
        AcyclicityReport r = acyclicity_report(tl.configuration);
        it["del_delbar_ambient"] = r.ambient.holds;
        it["del_delbar_graph"] = r.graph.holds;
        if (r.ambient.holds && r.graph.holds) {
          checks.push_back(ctx.check("acyclic ∂A_Z", r.del_ambient));
          checks.push_back(ctx.check("acyclic ∂A_Γ", r.del_graph));
          checks.push_back(ctx.check("acyclic ∂A_Z∩q*A_Y", r.del_y));
          checks.push_back(ctx.check("acyclic ∂A_Z∩p*A_X", r.del_x));
        }
        it["checks"] = checks;
        Tree dims;
        dims["L"] = tl.l.dgla->size();
        dims["M"] = tl.m->size();
        dims["N"] = tl.n.dgla->size();
        dims["K"] = tl.k.dgla->size();
        dims["Q"] = tl.q.dgla->size();
        dims["J"] = tl.j.dgla->size();
        it["dims"] = dims;
      }
    } else if (kind == "corpus") {
      const auto& c = m.corpora.at(name);
      Tree entries = Tree::array();
      for (const auto& e : c.entries) {
        Tree en;
        en["entry"] = e.name;
        en["checks"] = ctx.checks(mc_triple_valid(e.xi, TensoredPair(c.pair, e.extension.small)));
        entries.push_back(en);
      }
      it["entries"] = entries;
    }
    items.push_back(it);
  }
  Tree r;
  r["items"] = items;
  return {r, 0};
}

Tree cohomology_tree(const Options& opts, const CochainComplex& c) {
  Tree out = Tree::array();
  for (int i : c.space().support()) {
    if (opts.degree && *opts.degree != i) continue;
    Cohomology h = cohomology(c, i);
    Tree t;
    t["degree"] = i;
    t["dim"] = h.dim();
    Tree reps = Tree::array();
    for (const auto& v : h.representatives()) reps.push_back(format_vector(c.space(), v));
    t["representatives"] = reps;
    out.push_back(t);
  }
  return out;
}

Outcome cohomology_cmd(Context& ctx) {
  Tree items = Tree::array();
  const Model& m = ctx.model;
  for (const auto& [kind, name] : m.order) {
    Tree it = ctx.item(kind, name);
    if (kind == "dgla") {
      it["cohomology"] = cohomology_tree(ctx.opts, m.dglas.at(name)->complex());
    } else if (kind == "pair") {
      it["cone"] = cohomology_tree(ctx.opts, m.pairs.at(name).cone().complex);
    } else if (kind == "diagram-morphism") {
      const auto& d = m.diagrams.at(name);
      it["source_cone"] = cohomology_tree(ctx.opts, d.morphism.source().cone().complex);
      it["target_cone"] = cohomology_tree(ctx.opts, d.morphism.target().cone().complex);
      QuasiIsoCertificate q = is_quasi_isomorphism(induced_cone_map(d.morphism));
      Tree degs = Tree::array();
      for (const auto& dc : q.degrees) {
        if (ctx.opts.degree && *ctx.opts.degree != dc.degree) continue;
        Tree t;
        t["degree"] = dc.degree;
        t["source_dim"] = dc.source_dim;
        t["target_dim"] = dc.target_dim;
        t["rank"] = dc.rank;
        degs.push_back(t);
      }
      it["induced"] = degs;
      it["quasi_isomorphism"] = q.quasi_isomorphism;
    } else if (kind == "bicomplex") {
      const auto& a = m.bicomplexes.at(name).algebra;
      DelDelbarResult dd = del_delbar_predicate(a);
      it["del_delbar"] = dd.holds;
      it["closed_exact_dim"] = dd.closed_exact_dim;
      it["del_delbar_exact_dim"] = dd.del_delbar_exact_dim;
      if (!dd.holds) it["witness"] = format_element(a, dd.witness);
    } else {
      continue;
    }
    items.push_back(it);
  }
  Tree r;
  r["items"] = items;
  return {r, 0};
}

/// Pairs named in the document plus the source and target of each diagram.
std::vector<std::pair<std::string, PairDiagram>> all_pairs(const Model& m) {
  std::vector<std::pair<std::string, PairDiagram>> out;
  for (const auto& [kind, name] : m.order) {
    if (kind == "pair") out.emplace_back(name, m.pairs.at(name));
    if (kind == "diagram-morphism") {
      out.emplace_back(name + ".source", m.diagrams.at(name).morphism.source());
      out.emplace_back(name + ".target", m.diagrams.at(name).morphism.target());
    }
  }
  return out;
}

Outcome mc_cmd(Context& ctx, bool orbits) {
  ctx.require_prime(orbits ? "orbit" : "mc");
  Tree items = Tree::array();
  for (const auto& [name, pd] : all_pairs(ctx.model))
    for (const auto& a : ctx.family()) {
      TensoredPair t(pd, a);
      std::vector<McTriple> triples = enumerate_mc_triples(t, ctx.opts.limit);
      Tree it;
      it["pair"] = name;
      Tree mono = Tree::array();
      for (const auto& s : a.monomials()) mono.push_back(s);
      it["algebra"] = mono;
      it["triples"] = triples.size();
      Tree list = Tree::array();
      if (orbits) {
        std::vector<std::size_t> part = orbit_partition(triples, t);
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < part.size(); ++i)
          if (part[i] == i) reps.push_back(i);
        it["orbits"] = reps.size();
        for (std::size_t r : reps) {
          Tree o = triple_tree(triples[r], pd, a);
          o["size"] = static_cast<std::size_t>(std::count(part.begin(), part.end(), r));
          list.push_back(o);
        }
        it["representatives"] = list;
      } else {
        for (const auto& xi : triples) list.push_back(triple_tree(xi, pd, a));
        it["list"] = list;
      }
      items.push_back(it);
    }
  Tree r;
  r["items"] = items;
  return {r, 0};
}

Tree class_tree(const ObstructionClass& c, const PairDiagram& pd) {
  Tree t;
  t["zero"] = c.is_zero();
  Tree basis = Tree::array();
  for (const auto& b : c.h2_basis) basis.push_back(b);
  t["h2_basis"] = basis;
  Tree coords = Tree::array();
  for (const auto& v : c.coordinates) coords.push_back(vec_tree(v));
  t["coordinates"] = coords;
  Tree reps = Tree::array();
  const PairCone cone = pd.cone();
  for (const auto& v : c.representatives) reps.push_back(format_vector(cone.complex.space(), v));
  t["representatives"] = reps;
  return t;
}

/// Random element of V^degree ⊗ J in B-coordinates.
Vec random_in_j(std::mt19937_64& rng, const Dgla& g, const SmallExtension& e, int degree) {
  const Field f = e.big.field();
  const std::size_t kb = e.big.dim();
  Vec out = zero_vec(f, g.size() * kb);
  std::uniform_int_distribution<long> small(-3, 3);
  for (std::size_t i : g.space().indices(degree))
    for (const auto& j : e.kernel) {
      const Scalar c = f.is_rational() ? Scalar(f, small(rng)) : Scalar(f, static_cast<long>(rng() % f.characteristic()));
      for (std::size_t b = 0; b < kb; ++b) out[i * kb + b] += c * j[b];
    }
  return out;
}

/// Number of random lift corrections that change the class.
std::size_t lift_trials(const Options& opts, const CorpusEntry& e, const PairDiagram& pd, const ObstructionClass& base) {
  if (opts.trials == 0) return 0;
  const TensoredPair over_b(pd, e.extension.big);
  const std::uint64_t seed = opts.seed.value_or(0);
  std::vector<char> changed(opts.trials, 0);
  auto work = [&](unsigned first, unsigned stride) {
    for (unsigned i = first; i < opts.trials; i += stride) {
      std::mt19937_64 rng(seed * 1000003u + i);
      McTriple corr{random_in_j(rng, pd.l(), e.extension, 1), random_in_j(rng, pd.n(), e.extension, 1),
                    random_in_j(rng, pd.m(), e.extension, 0)};
      McTriple lifted = lift_triple(e.xi, e.extension, over_b, &corr);
      changed[i] = obstruction_class(e.xi, e.extension, pd, &lifted).coordinates != base.coordinates;
    }
  };
  const unsigned threads = opts.parallel ? std::max(1u, std::thread::hardware_concurrency()) : 1u;
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  return static_cast<std::size_t>(std::count(changed.begin(), changed.end(), 1));
}

Outcome obstruct_cmd(Context& ctx) {
  Tree items = Tree::array();
  for (const auto& [kind, name] : ctx.model.order) {
    if (kind != "corpus") continue;
    const auto& set = ctx.model.corpora.at(name);
    for (const auto& e : set.entries) {
      Tree it;
      it["corpus"] = name;
      it["entry"] = e.name;
      ObstructionClass c = obstruction_class(e.xi, e.extension, set.pair);
      it["class"] = class_tree(c, set.pair);
      Tree checks = Tree::array();
      const std::size_t changed = lift_trials(ctx.opts, e, set.pair, c);
      checks.push_back(ctx.check("lift independence (" + std::to_string(ctx.opts.trials) + " trials)", changed == 0,
                                 std::to_string(changed) + " lifts changed the class"));
      if (ctx.model.field.is_prime()) {
        try {
          const bool exists = lift_exists_bruteforce(e.xi, e.extension, set.pair, ctx.opts.limit);
          checks.push_back(ctx.check("zero iff lift exists", exists == c.is_zero(),
                                     exists ? "a lift exists but the class is nonzero" : "no lift but the class is zero"));
        } catch (const std::length_error&) {
          it["oracle"] = "skipped: search space above limit";
        }
      }
      it["checks"] = checks;
      items.push_back(it);
    }
  }
  Tree r;
  r["items"] = items;
  return {r, 0};
}

Outcome probe_cmd(Context& ctx) {
  Tree items = Tree::array();
  for (const auto& [kind, name] : ctx.model.order) {
    if (kind != "corpus") continue;
    const auto& set = ctx.model.corpora.at(name);
    for (const auto& e : set.entries) {
      if (e.extension.small.dim() != 1) continue;  // probes start over k[t]/(t²)
      ProbeOptions po;
      po.depth = ctx.opts.depth;
      po.randomized_seed = ctx.opts.seed;
      ProbeResult pr = curvilinear_probe(e.xi, set.pair, po);
      Tree it;
      it["corpus"] = name;
      it["entry"] = e.name;
      it["depth"] = pr.depth;
      Tree stages = Tree::array();
      for (const auto& st : pr.stages) {
        Tree s;
        s["order"] = st.order;
        s["obstructed"] = st.obstructed;
        if (st.obstructed) s["class"] = class_tree(st.obstruction, set.pair);
        stages.push_back(s);
      }
      it["stages"] = stages;
      it["verdict"] = pr.first_obstructed ? "first obstruction at order " + std::to_string(*pr.first_obstructed)
                                          : "unobstructed to order " + std::to_string(pr.depth);
      items.push_back(it);
    }
  }
  Tree r;
  r["items"] = items;
  return {r, 0};
}

Outcome functor_iso_cmd(Context& ctx) {
  ctx.require_prime("functor-iso");
  Tree items = Tree::array();
  for (const auto& [kind, name] : ctx.model.order) {
    if (kind != "diagram-morphism") continue;
    FunctorIsoReport rep = verify_functor_iso(ctx.model.diagrams.at(name).morphism, ctx.family(), ctx.opts.limit);
    Tree it = ctx.item(kind, name);
    it["quasi_isomorphism"] = rep.quasi_iso.quasi_isomorphism;
    Tree algs = Tree::array();
    for (const auto& a : rep.algebras) {
      Tree t;
      t["algebra"] = a.algebra;
      t["source_triples"] = a.source_triples;
      t["target_triples"] = a.target_triples;
      t["source_orbits"] = a.source_orbits;
      t["target_orbits"] = a.target_orbits;
      t["well_defined"] = a.well_defined;
      t["injective"] = a.injective;
      t["surjective"] = a.surjective;
      t["check"] = ctx.check("bijective", a.bijective(), a.witness);
      algs.push_back(t);
    }
    it["algebras"] = algs;
    items.push_back(it);
  }
  Tree r;
  r["items"] = items;
  return {r, 0};
}

Outcome annihilate_cmd(Context& ctx) {
  Tree items = Tree::array();
  for (const auto& [kind, name] : ctx.model.order) {
    if (kind != "corpus") continue;
    const auto& set = ctx.model.corpora.at(name);
    if (set.diagram.empty()) continue;
    const auto& d = ctx.model.diagrams.at(set.diagram);
    Tree it;
    it["corpus"] = name;
    it["diagram"] = set.diagram;
    try {
      AnnihilationReport rep = annihilation_check(d.morphism, set.entries, ctx.opts.limit,
                                                  d.three_level ? &d.three_level->abelian_model : nullptr);
      it["certificate"] = to_string(rep.certificate);
      it["h2_map_rank"] = rank(rep.h2_map);
      Tree entries = Tree::array();
      for (const auto& e : rep.entries) {
        Tree t;
        t["entry"] = e.name;
        t["class"] = class_tree(e.source_class, d.morphism.source());
        Tree img = Tree::array();
        for (const auto& v : e.image) img.push_back(vec_tree(v));
        t["image"] = img;
        t["check"] = ctx.check("annihilated", e.annihilated);
        entries.push_back(t);
      }
      it["entries"] = entries;
    } catch (const std::invalid_argument& e) {
      it["check"] = ctx.check("target certified smooth", false, e.what());
    }
    items.push_back(it);
  }
  Tree r;
  r["items"] = items;
  return {r, 0};
}

Outcome semiregularity_cmd(Context& ctx) {
  Tree items = Tree::array();
  const Model& m = ctx.model;
  for (const auto& [kind, name] : m.order) {
    if (kind != "corpus") continue;
    const auto& set = m.corpora.at(name);
    if (set.diagram.empty()) continue;
    const auto& d = m.diagrams.at(set.diagram);
    if (!d.three_level || d.harmonic.empty() || d.trace.empty())
      throw std::invalid_argument("semiregularity: diagram '" + set.diagram + "' needs harmonic and trace");
    const auto& tl = *d.three_level;
    const auto& omegas = m.harmonics.at(d.harmonic).span;
    const Vec trace = io::graph_trace(m, d);
    Tree it;
    it["corpus"] = name;
    it["diagram"] = set.diagram;
    Tree entries = Tree::array();
    for (const auto& e : set.entries) {
      ObstructionClass c = obstruction_class(e.xi, e.extension, set.pair);
      Tree t;
      t["entry"] = e.name;
      t["zero_class"] = c.is_zero();
      Tree vals = Tree::array();
      bool all_zero = true;
      for (const auto& rep : c.representatives)
        for (const auto& w : omegas) {
          Scalar s = semiregularity_pairing(tl, rep, w, trace);
          all_zero = all_zero && s.is_zero();
          vals.push_back(scalar_text(s));
        }
      t["values"] = vals;
      t["check"] = ctx.check("σ vanishes", all_zero);
      entries.push_back(t);
    }
    it["entries"] = entries;
    Cohomology h2 = cohomology(tl.source.cone().complex, 2);
    Tree table = Tree::array();
    bool nonzero = false;
    for (const auto& rep : h2.representatives()) {
      Tree row;
      row["class"] = format_vector(tl.source.cone().complex.space(), rep);
      Tree vals = Tree::array();
      for (const auto& w : omegas) {
        Scalar s = semiregularity_pairing(tl, rep, w, trace);
        nonzero = nonzero || !s.is_zero();
        vals.push_back(scalar_text(s));
      }
      row["values"] = vals;
      table.push_back(row);
    }
    it["h2_pairing"] = table;
    it["check"] = ctx.check("pairing not identically zero", nonzero);
    items.push_back(it);
  }
  Tree r;
  r["items"] = items;
  return {r, 0};
}

void render(const Tree& t, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto scalar = [](const Tree& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  auto inline_array = [&](const Tree& a) {
    for (const auto& v : a)
      if (v.is_structured()) return false;
    return true;
  };
  if (t.is_object()) {
    for (const auto& [k, v] : t.items()) {
      if (v.is_object() || (v.is_array() && !inline_array(v) )) {
        out += pad + k + ":\n";
        render(v, indent + 2, out);
      } else if (v.is_array()) {
        std::string s;
        for (const auto& x : v) s += (s.empty() ? "" : ", ") + scalar(x);
        out += pad + k + ": [" + s + "]\n";
      } else {
        out += pad + k + ": " + scalar(v) + "\n";
      }
    }
  } else if (t.is_array()) {
    for (const auto& v : t) {
      if (v.is_structured()) {
        std::string inner;
        render(v, indent + 2, inner);
        inner.replace(static_cast<std::size_t>(indent), 2, "- ");
        out += inner;
      } else {
        out += pad + "- " + scalar(v) + "\n";
      }
    }
  } else {
    out += pad + scalar(t) + "\n";
  }
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"validate", "cohomology",   "mc",         "orbit",         "obstruct",
                                             "probe",    "functor-iso", "annihilate", "semiregularity"};
  return c;
}

Outcome run(const Options& opts, const io::Model& model) {
  const auto start = std::chrono::steady_clock::now();
  Context ctx{opts, model};
  Outcome o;
  const std::string& c = opts.command;
  if (c == "validate") o = validate(ctx);
  else if (c == "cohomology") o = cohomology_cmd(ctx);
  else if (c == "mc") o = mc_cmd(ctx, false);
  else if (c == "orbit") o = mc_cmd(ctx, true);
  else if (c == "obstruct") o = obstruct_cmd(ctx);
  else if (c == "probe") o = probe_cmd(ctx);
  else if (c == "functor-iso") o = functor_iso_cmd(ctx);
  else if (c == "annihilate") o = annihilate_cmd(ctx);
  else if (c == "semiregularity") o = semiregularity_cmd(ctx);
  else throw std::invalid_argument("unknown command '" + c + "'");
  Tree report;
  report["command"] = c;
  report["document"] = opts.file;
  report["field"] = model.field.name();
  if (opts.seed) report["seed"] = *opts.seed;
  report.update(o.report);
  report["verdict"] = ctx.ok ? "pass" : "fail";
  if (opts.timing)
    report["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  o.report = std::move(report);
  o.status = ctx.ok ? 0 : 1;
  return o;
}

std::string render_text(const Tree& t) {
  std::string out;
  render(t, 0, out);
  return out;
}

}  // namespace dgdef::cli
