#include "io/model.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace dgdef::io {

namespace {

Scalar parse_scalar(Field f, const std::string& text, std::size_t line) {
  try {
    return Scalar::parse(text, f);
  } catch (const std::invalid_argument& e) {
    throw ParseError(line, e.what());
  }
}

std::size_t label_index(const std::vector<std::string>& labels, const std::string& label, std::size_t line,
                        const std::string& what) {
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) return i;
  throw ParseError(line, "unknown " + what + " basis label '" + label + "'");
}

template <class Map>
const typename Map::mapped_type& lookup(const Map& map, const std::string& name, std::size_t line, const char* what) {
  auto it = map.find(name);
  if (it == map.end()) throw ParseError(line, std::string("unknown ") + what + " '" + name + "'");
  return it->second;
}

std::size_t value_line(const Section& s, std::string_view key) {
  const KeyValue* kv = s.find(key);
  return kv ? kv->line : s.line;
}

Bidegree parse_bidegree(const std::string& text, std::size_t line) {
  const auto comma = text.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("");
    return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ParseError(line, "bad bidegree '" + text + "', expected p,q");
  }
}

/// "label:spec" words.
std::vector<std::pair<std::string, std::string>> parse_basis(const std::string& text, std::size_t line) {
  std::vector<std::pair<std::string, std::string>> out;
  std::set<std::string> seen;
  for (const auto& w : split_words(text)) {
    const auto colon = w.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == w.size())
      throw ParseError(line, "basis entry '" + w + "' must be label:degree");
    std::string label = w.substr(0, colon);
    if (!seen.insert(label).second) throw ParseError(line, "duplicate basis label '" + label + "'");
    out.emplace_back(std::move(label), w.substr(colon + 1));
  }
  return out;
}

bool parse_bool(const Section& s, std::string_view key) {
  auto v = s.get(key);
  if (!v) return false;
  if (*v == "true" || *v == "yes") return true;
  if (*v == "false" || *v == "no") return false;
  throw ParseError(value_line(s, key), "expected true or false for '" + std::string(key) + "'");
}

/// "t^3" -> ("t", 3).
std::pair<std::string, unsigned> parse_power(const std::string& text, std::size_t line) {
  const auto caret = text.find('^');
  try {
    if (caret == std::string::npos || caret == 0) throw std::invalid_argument("");
    const int n = std::stoi(text.substr(caret + 1));
    if (n < 1) throw std::invalid_argument("");
    return {text.substr(0, caret), static_cast<unsigned>(n)};
  } catch (const std::exception&) {
    throw ParseError(line, "expected var^n with n >= 1, got '" + text + "'");
  }
}

std::vector<Vec> parse_elements(Field f, const std::vector<std::string>& labels, const std::string& text,
                                std::size_t line) {
  std::vector<Vec> out;
  for (const auto& item : split_list(text)) out.push_back(parse_element(f, labels, item, line));
  return out;
}

std::vector<std::string> labels_of(const BigradedAlgebra& a) {
  std::vector<std::string> out;
  for (const auto& b : a.basis()) out.push_back(b.label);
  return out;
}

/// Smallest subspace containing `gens` closed under multiplication by A
/// (ideal) or by its own elements and the unit (subalgebra).
std::vector<Vec> close_under_products(const BigradedAlgebra& a, std::vector<Vec> gens, bool ideal) {
  const Field f = a.field();
  std::vector<Vec> span = span_basis(f, a.size(), gens);
  if (!ideal && a.unit()) {
    span.push_back(unit_vec(f, a.size(), *a.unit()));
    span = span_basis(f, a.size(), span);
  }
  for (;;) {
    std::vector<Vec> next = span;
    if (ideal) {
      for (std::size_t i = 0; i < a.size(); ++i)
        for (const auto& v : span) next.push_back(a.multiply(unit_vec(f, a.size(), i), v));
    } else {
      for (const auto& u : span)
        for (const auto& v : span) next.push_back(a.multiply(u, v));
    }
    next = span_basis(f, a.size(), next);
    if (next.size() == span.size()) return span;
    span = std::move(next);
  }
}

class Resolver {
public:
  Resolver(const RawDocument& doc, std::optional<Field> override) {
    model_.raw = doc;
    std::size_t field_sections = 0;
    for (const auto& s : doc.sections)
      if (s.kind == "field") {
        ++field_sections;
        if (field_sections > 1) throw ParseError(s.line, "second [field] declaration");
        try {
          model_.field = Field::parse(s.name);
        } catch (const std::invalid_argument& e) {
          throw ParseError(s.line, e.what());
        }
      }
    if (!field_sections && !override) throw ParseError(0, "missing [field] declaration");
    if (override) model_.field = *override;
    f_ = model_.field;
    std::set<std::string> names;
    for (const auto& s : doc.sections) {
      if (s.kind == "field") continue;
      if (!names.insert(s.name).second) throw ParseError(s.line, "duplicate name '" + s.name + "'");
      model_.order.emplace_back(s.kind, s.name);
    }
  }

  Model run() {
    for (const auto& kind : section_kinds())
      for (const auto& s : model_.raw.sections)
        if (s.kind == kind) build(s);
    return std::move(model_);
  }

private:
  void build(const Section& s) {
    try {
      if (s.kind == "dgla") dgla(s);
      else if (s.kind == "morphism") morphism(s);
      else if (s.kind == "pair") pair(s);
      else if (s.kind == "artin") artin(s);
      else if (s.kind == "extension") extension(s);
      else if (s.kind == "bicomplex") bicomplex(s);
      else if (s.kind == "ideal" || s.kind == "subalgebra" || s.kind == "harmonic") subspace(s);
      else if (s.kind == "contraction") contraction(s);
      else if (s.kind == "trace") trace(s);
      else if (s.kind == "diagram-morphism") diagram(s);
      else if (s.kind == "corpus") corpus(s);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(s.line, "[" + s.kind + "] " + s.name + ": " + e.what());
    }
  }

  void dgla(const Section& s) {
    const std::size_t line = value_line(s, "basis");
    std::vector<std::pair<std::string, int>> basis;
    for (const auto& [label, deg] : parse_basis(s.require("basis"), line)) {
      try {
        basis.emplace_back(label, std::stoi(deg));
      } catch (const std::exception&) {
        throw ParseError(line, "bad degree '" + deg + "' for " + label);
      }
    }
    GradedSpace space(basis);
    const auto& labels = space.labels();
    const std::size_t n = labels.size();
    Matrix d(f_, n, n);
    std::map<std::pair<std::size_t, std::size_t>, Vec> brackets;
    for (const auto& a : s.arrows) {
      if (!a.op.empty() && a.op != "d") throw ParseError(a.line, "unknown operator '" + a.op + "' in [dgla]");
      const Scalar c = parse_scalar(f_, a.coeff, a.line);
      const std::size_t t = label_index(labels, a.target, a.line, "dgla");
      if (a.sources.size() == 1) {
        d.add_to(t, label_index(labels, a.sources[0], a.line, "dgla"), c);
      } else {
        auto key = std::make_pair(label_index(labels, a.sources[0], a.line, "dgla"),
                                  label_index(labels, a.sources[1], a.line, "dgla"));
        auto& v = brackets.try_emplace(key, zero_vec(f_, n)).first->second;
        v[t] += c;
      }
    }
    std::vector<BracketEntry> entries;
    for (auto& [k, v] : brackets) entries.push_back({k.first, k.second, v});
    model_.dglas[s.name] = std::make_shared<const Dgla>(f_, space, d, entries, s.name);
  }

  void morphism(const Section& s) {
    MorphismEntry m;
    m.source = lookup(model_.dglas, s.require("source"), value_line(s, "source"), "dgla");
    m.target = lookup(model_.dglas, s.require("target"), value_line(s, "target"), "dgla");
    m.matrix = Matrix(f_, m.target->size(), m.source->size());
    for (const auto& a : s.arrows) {
      if (a.sources.size() != 1 || !a.op.empty()) throw ParseError(a.line, "morphism entries are 'a -> b: c'");
      m.matrix.add_to(label_index(m.target->space().labels(), a.target, a.line, "target"),
                      label_index(m.source->space().labels(), a.sources[0], a.line, "source"),
                      parse_scalar(f_, a.coeff, a.line));
    }
    m.checks = DglaMorphism::check(*m.source, *m.target, m.matrix);
    if (m.checks.all_passed()) m.morphism = DglaMorphism(m.source, m.target, m.matrix);
    model_.morphisms[s.name] = std::move(m);
  }

  const DglaMorphism& valid_morphism(const Section& s, const std::string& key) {
    const std::string name = s.require(key);
    const MorphismEntry& m = lookup(model_.morphisms, name, value_line(s, key), "morphism");
    if (!m.morphism) {
      std::string why;
      for (const auto& c : m.checks.checks())
        if (!c.passed) why = c.name + ": " + c.witness;
      throw ParseError(value_line(s, key), "morphism '" + name + "' is not a DGLA morphism (" + why + ")");
    }
    return *m.morphism;
  }

  void pair(const Section& s) {
    try {
      model_.pairs[s.name] = PairDiagram(valid_morphism(s, "h"), valid_morphism(s, "g"));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(s.line, e.what());
    }
  }

  void artin(const Section& s) {
    if (auto p = s.get("polynomial")) {
      auto [var, n] = parse_power(*p, value_line(s, "polynomial"));
      model_.artins[s.name] = ArtinAlgebra::truncated_polynomial(f_, n - 1, var);
      return;
    }
    if (parse_bool(s, "residue")) {
      model_.artins[s.name] = ArtinAlgebra::residue_field(f_);
      return;
    }
    std::vector<std::string> monomials = split_words(s.require("basis"));
    const std::size_t n = monomials.size();
    std::vector<std::vector<Vec>> table(n, std::vector<Vec>(n, zero_vec(f_, n)));
    std::set<std::pair<std::size_t, std::size_t>> given;
    for (const auto& a : s.arrows) {
      if (a.sources.size() != 2) throw ParseError(a.line, "artin entries are '(a,b) -> c: coeff'");
      const std::size_t i = label_index(monomials, a.sources[0], a.line, "monomial");
      const std::size_t j = label_index(monomials, a.sources[1], a.line, "monomial");
      const std::size_t t = label_index(monomials, a.target, a.line, "monomial");
      const Scalar c = parse_scalar(f_, a.coeff, a.line);
      table[i][j][t] += c;
      given.insert({i, j});
    }
    for (const auto& [i, j] : given)
      if (!given.count({j, i})) table[j][i] = table[i][j];
    model_.artins[s.name] = ArtinAlgebra(f_, monomials, table);
  }

  void extension(const Section& s) {
    if (auto c = s.get("curvilinear")) {
      auto [var, n] = parse_power(*c, value_line(s, "curvilinear"));
      if (n < 2) throw ParseError(value_line(s, "curvilinear"), "curvilinear extension needs var^n with n >= 2");
      model_.extensions[s.name] = curvilinear(f_, n - 1, var);
      return;
    }
    if (parse_bool(s, "two-variable")) {
      model_.extensions[s.name] = two_variable(f_);
      return;
    }
    SmallExtension e;
    e.big = lookup(model_.artins, s.require("big"), value_line(s, "big"), "artin");
    e.small = lookup(model_.artins, s.require("small"), value_line(s, "small"), "artin");
    e.projection = Matrix(f_, e.small.dim(), e.big.dim());
    for (const auto& a : s.arrows) {
      if (a.sources.size() != 1) throw ParseError(a.line, "projection entries are 'b -> a: coeff'");
      e.projection.add_to(label_index(e.small.monomials(), a.target, a.line, "small"),
                          label_index(e.big.monomials(), a.sources[0], a.line, "big"), parse_scalar(f_, a.coeff, a.line));
    }
    e.kernel = parse_elements(f_, e.big.monomials(), s.require("kernel"), value_line(s, "kernel"));
    CheckList r = validate_small_extension(e);
    for (const auto& c : r.checks())
      if (!c.passed) throw ParseError(s.line, "not a small extension (" + c.name + ": " + c.witness + ")");
    model_.extensions[s.name] = std::move(e);
  }

  void bicomplex(const Section& s) {
    BicomplexEntry entry;
    if (auto gens = s.get("exterior")) {
      std::vector<BiBasis> g;
      for (const auto& [label, bd] : parse_basis(*gens, value_line(s, "exterior")))
        g.push_back({label, parse_bidegree(bd, value_line(s, "exterior"))});
      entry.algebra = exterior_model(f_, g, s.name);
    } else if (auto t = s.get("tensor")) {
      auto parts = split_list(*t);
      if (parts.size() != 2) throw ParseError(value_line(s, "tensor"), "tensor = X, Y");
      const auto& x = lookup(model_.bicomplexes, parts[0], value_line(s, "tensor"), "bicomplex");
      const auto& y = lookup(model_.bicomplexes, parts[1], value_line(s, "tensor"), "bicomplex");
      entry.product = tensor_model(x.algebra, y.algebra);
      entry.algebra = entry.product->algebra;
    } else if (parse_bool(s, "point")) {
      entry.algebra = BigradedAlgebra::point(f_);
    } else {
      const bool square = parse_bool(s, "square-zero");
      std::vector<BiBasis> basis;
      const std::size_t line = value_line(s, "basis");
      for (const auto& [label, bd] : parse_basis(s.require("basis"), line)) basis.push_back({label, parse_bidegree(bd, line)});
      std::vector<std::string> labels;
      for (const auto& b : basis) labels.push_back(b.label);
      const std::size_t n = basis.size();
      Matrix del(f_, n, n), delbar(f_, n, n);
      std::map<std::pair<std::size_t, std::size_t>, Vec> products;
      for (const auto& a : s.arrows) {
        const Scalar c = parse_scalar(f_, a.coeff, a.line);
        const std::size_t t = label_index(labels, a.target, a.line, "bicomplex");
        if (a.sources.size() == 1) {
          const std::size_t src = label_index(labels, a.sources[0], a.line, "bicomplex");
          if (a.op == "del") del.add_to(t, src, c);
          else if (a.op == "delbar") delbar.add_to(t, src, c);
          else throw ParseError(a.line, "bicomplex differential entries are 'del a -> b' or 'delbar a -> b'");
        } else {
          if (square) throw ParseError(a.line, "square-zero models take no product entries");
          if (!a.op.empty()) throw ParseError(a.line, "product entries take no operator");
          auto key = std::make_pair(label_index(labels, a.sources[0], a.line, "bicomplex"),
                                    label_index(labels, a.sources[1], a.line, "bicomplex"));
          products.try_emplace(key, zero_vec(f_, n)).first->second[t] += c;
        }
      }
      if (square) {
        entry.algebra = BigradedAlgebra::square_zero(f_, basis, del, delbar, s.name);
      } else {
        for (std::size_t u = 0; u < n; ++u) {
          if (labels[u] != "1") continue;
          for (std::size_t k = 0; k < n; ++k) {
            products.try_emplace({u, k}, unit_vec(f_, n, k));
            if (k != u) products.try_emplace({k, u}, unit_vec(f_, n, k));
          }
        }
        std::vector<ProductEntry> entries;
        for (auto& [k, v] : products) entries.push_back({k.first, k.second, v});
        entry.algebra = BigradedAlgebra(f_, basis, entries, del, delbar, s.name);
      }
    }
    model_.bicomplexes[s.name] = std::move(entry);
  }

  void subspace(const Section& s) {
    SubspaceEntry e;
    e.in = s.require("in");
    const auto& b = lookup(model_.bicomplexes, e.in, value_line(s, "in"), "bicomplex");
    const auto labels = labels_of(b.algebra);
    if (s.kind == "harmonic") {
      e.span = parse_elements(f_, labels, s.require("elements"), value_line(s, "elements"));
      model_.harmonics[s.name] = std::move(e);
      return;
    }
    const bool ideal = s.kind == "ideal";
    if (auto fac = s.get("factor")) {
      if (ideal) throw ParseError(value_line(s, "factor"), "'factor' applies to [subalgebra]");
      if (!b.product) throw ParseError(value_line(s, "factor"), "'factor' needs a tensor bicomplex");
      const Matrix* m = *fac == "left" ? &b.product->p_star : *fac == "right" ? &b.product->q_star : nullptr;
      if (!m) throw ParseError(value_line(s, "factor"), "factor = left or right");
      for (std::size_t c = 0; c < m->cols(); ++c) e.span.push_back(m->column(c));
    } else if (auto g = s.get("generators")) {
      e.span = close_under_products(b.algebra, parse_elements(f_, labels, *g, value_line(s, "generators")), ideal);
    } else {
      e.span = span_basis(f_, b.algebra.size(), parse_elements(f_, labels, s.require("span"), value_line(s, "span")));
    }
    (ideal ? model_.ideals : model_.subalgebras)[s.name] = std::move(e);
  }

  void contraction(const Section& s) {
    ContractionEntry e;
    e.algebra = s.require("algebra");
    const auto& b = lookup(model_.bicomplexes, e.algebra, value_line(s, "algebra"), "bicomplex");
    const std::size_t n = b.algebra.size();
    if (auto t = s.get("tautological")) {
      if (*t != "contraction-part") throw ParseError(value_line(s, "tautological"), "tautological = contraction-part");
      HtpDgla htp(b.algebra);
      e.action = tautological_action(htp, contraction_part(htp));
      model_.contractions[s.name] = std::move(e);
      return;
    }
    e.action.algebra = lookup(model_.dglas, s.require("dgla"), value_line(s, "dgla"), "dgla");
    const auto& m = *e.action.algebra;
    e.action.operators.assign(m.size(), Matrix(f_, n, n));
    const auto labels = labels_of(b.algebra);
    for (const auto& a : s.arrows) {
      if (a.sources.size() != 2) throw ParseError(a.line, "contraction entries are '(a, ω) -> η: coeff'");
      e.action.operators[label_index(m.space().labels(), a.sources[0], a.line, "dgla")].add_to(
          label_index(labels, a.target, a.line, "bicomplex"), label_index(labels, a.sources[1], a.line, "bicomplex"),
          parse_scalar(f_, a.coeff, a.line));
    }
    model_.contractions[s.name] = std::move(e);
  }

  void trace(const Section& s) {
    TraceEntry e;
    e.in = s.require("in");
    const auto& b = lookup(model_.bicomplexes, e.in, value_line(s, "in"), "bicomplex");
    e.weights = parse_element(f_, labels_of(b.algebra), s.require("weights"), value_line(s, "weights"));
    model_.traces[s.name] = std::move(e);
  }

  const std::vector<Vec>& subspace_in(const std::map<std::string, SubspaceEntry>& map, const Section& s,
                                      const std::string& key, const std::string& ambient, const char* what) {
    const auto& e = lookup(map, s.require(key), value_line(s, key), what);
    if (e.in != ambient)
      throw ParseError(value_line(s, key), std::string(what) + " '" + s.require(key) + "' is not in " + ambient);
    return e.span;
  }

  void diagram(const Section& s) {
    DiagramEntry e;
    if (auto r = s.get("reduce")) {
      e.morphism = injective_reduction_morphism(lookup(model_.pairs, *r, value_line(s, "reduce"), "pair"));
    } else if (auto amb = s.get("ambient")) {
      ModelConfiguration mc;
      mc.ambient = lookup(model_.bicomplexes, *amb, value_line(s, "ambient"), "bicomplex").algebra;
      mc.ideal = subspace_in(model_.ideals, s, "ideal", *amb, "ideal");
      mc.y_pullback = subspace_in(model_.subalgebras, s, "y", *amb, "subalgebra");
      mc.x_pullback = subspace_in(model_.subalgebras, s, "x", *amb, "subalgebra");
      const auto& c = lookup(model_.contractions, s.require("action"), value_line(s, "action"), "contraction");
      if (c.algebra != *amb) throw ParseError(value_line(s, "action"), "contraction acts on " + c.algebra);
      const auto& m_labels = c.action.algebra->space().labels();
      std::vector<Vec> l_span, n_span;
      if (auto l = s.get("l")) l_span = parse_elements(f_, m_labels, *l, value_line(s, "l"));
      if (auto nn = s.get("n")) n_span = parse_elements(f_, m_labels, *nn, value_line(s, "n"));
      e.three_level = build_three_level_diagram(mc, c.action, l_span, n_span);
      e.morphism = e.three_level->iota;
      if (auto h = s.get("harmonic")) {
        subspace_in(model_.harmonics, s, "harmonic", *amb, "harmonic");
        e.harmonic = *h;
      }
      if (auto t = s.get("trace")) {
        const auto& tr = lookup(model_.traces, *t, value_line(s, "trace"), "trace");
        if (tr.in != *amb) throw ParseError(value_line(s, "trace"), "trace '" + *t + "' is not on " + *amb);
        e.trace = *t;
      }
    } else {
      const auto& src = lookup(model_.pairs, s.require("source"), value_line(s, "source"), "pair");
      const auto& tgt = lookup(model_.pairs, s.require("target"), value_line(s, "target"), "pair");
      auto mat = [&](const char* key) {
        return lookup(model_.morphisms, s.require(key), value_line(s, key), "morphism").matrix;
      };
      e.morphism = DiagramMorphism(src, tgt, mat("alpha_l"), mat("alpha_m"), mat("alpha_n"));
    }
    model_.diagrams[s.name] = std::move(e);
  }

  void corpus(const Section& s) {
    CorpusSet set;
    const bool from_diagram = s.get("diagram").has_value();
    set.source = from_diagram ? s.require("diagram") : s.require("pair");
    bool ambient_labels = false;
    const ThreeLevelDiagram* tl = nullptr;
    if (from_diagram) {
      const auto& d = lookup(model_.diagrams, set.source, value_line(s, "diagram"), "diagram-morphism");
      set.pair = d.morphism.source();
      set.diagram = set.source;
      if (d.three_level) {
        tl = &*d.three_level;
        ambient_labels = true;
      }
    } else {
      set.pair = lookup(model_.pairs, set.source, value_line(s, "pair"), "pair");
    }
    std::optional<std::string> default_ext = s.get("extension");
    std::vector<std::string> names;
    std::map<std::string, std::map<std::string, const KeyValue*>> fields;
    for (const auto& kv : s.values) {
      const auto dot = kv.key.rfind('.');
      if (dot == std::string::npos) {
        if (kv.key != "pair" && kv.key != "diagram" && kv.key != "extension")
          throw ParseError(kv.line, "unknown corpus key '" + kv.key + "'");
        continue;
      }
      const std::string entry = kv.key.substr(0, dot), field = kv.key.substr(dot + 1);
      if (field != "x" && field != "y" && field != "p" && field != "extension")
        throw ParseError(kv.line, "corpus entry fields are x, y, p and extension");
      if (!fields.count(entry)) names.push_back(entry);
      if (!fields[entry].emplace(field, &kv).second) throw ParseError(kv.line, "repeated key '" + kv.key + "'");
    }
    for (const auto& name : names) {
      auto& fl = fields[name];
      std::size_t line = fl.begin()->second->line;
      std::string ext_name;
      if (fl.count("extension")) ext_name = fl["extension"]->value;
      else if (default_ext) ext_name = *default_ext;
      else throw ParseError(line, "corpus entry '" + name + "' has no extension");
      const SmallExtension& ext = lookup(model_.extensions, ext_name, line, "extension");
      const std::size_t k = ext.small.dim();
      auto tensor = [&](const char* field, const Dgla& g, const SubDgla* sub) {
        Vec out = zero_vec(f_, g.size() * k);
        if (!fl.count(field)) return out;
        const KeyValue* kv = fl[field];
        const Dgla& coords = sub ? *tl->m : g;
        for (const auto& term : parse_combination(kv->value, kv->line)) {
          const auto split = term.label.rfind("⊗");
          if (split == std::string::npos) throw ParseError(kv->line, "corpus terms are label⊗monomial");
          const std::string label = term.label.substr(0, split), mono = term.label.substr(split + std::string("⊗").size());
          Vec v = zero_vec(f_, coords.size());
          v[label_index(coords.space().labels(), label, kv->line, "dgla")] = parse_scalar(f_, term.coeff, kv->line);
          if (sub) {
            std::vector<Vec> cols;
            for (std::size_t c = 0; c < sub->inclusion.cols(); ++c) cols.push_back(sub->inclusion.column(c));
            auto c = SubspaceCoords(f_, coords.size(), cols).coords(v);
            if (!c) throw ParseError(kv->line, "'" + label + "' is not in the subalgebra");
            v = *c;
          }
          const std::size_t j = label_index(ext.small.monomials(), mono, kv->line, "monomial");
          for (std::size_t i = 0; i < v.size(); ++i) out[i * k + j] += v[i];
        }
        return out;
      };
      CorpusEntry c;
      c.name = name;
      c.extension = ext;
      c.xi.x = tensor("x", set.pair.l(), ambient_labels ? &tl->l : nullptr);
      c.xi.y = tensor("y", set.pair.n(), ambient_labels ? &tl->n : nullptr);
      c.xi.p = tensor("p", set.pair.m(), nullptr);
      set.entries.push_back(std::move(c));
    }
    model_.corpora[s.name] = std::move(set);
  }

  Model model_;
  Field f_;
};

}  // namespace

Vec parse_element(Field f, const std::vector<std::string>& labels, std::string_view text, std::size_t line) {
  Vec v = zero_vec(f, labels.size());
  const std::string t = trim(text);
  if (t == "0") return v;
  for (const auto& term : parse_combination(t, line))
    v[label_index(labels, term.label, line, "element")] += parse_scalar(f, term.coeff, line);
  return v;
}

Model resolve(const RawDocument& doc, std::optional<Field> field_override) {
  return Resolver(doc, field_override).run();
}

Model load_text(std::string_view text, std::optional<Field> field_override) {
  return resolve(parse_text(text), field_override);
}

Model load_file(const std::string& path, std::optional<Field> field_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_text(ss.str(), field_override);
}

Vec graph_trace(const Model& m, const DiagramEntry& d) {
  if (!d.three_level || d.trace.empty()) throw std::invalid_argument("diagram has no trace");
  const auto& tl = *d.three_level;
  const auto z_labels = labels_of(tl.configuration.ambient);
  const Vec& weights = m.traces.at(d.trace).weights;
  Vec trace = zero_vec(m.field, tl.graph.algebra.size());
  for (std::size_t i = 0; i < trace.size(); ++i) {
    auto it = std::find(z_labels.begin(), z_labels.end(), tl.graph.algebra.label(i));
    if (it != z_labels.end()) trace[i] = weights[static_cast<std::size_t>(it - z_labels.begin())];
  }
  return trace;
}

}  // namespace dgdef::io
