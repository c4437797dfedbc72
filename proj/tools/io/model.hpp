#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dgdef/bicomplex.hpp"
#include "dgdef/obstruction.hpp"
#include "io/text.hpp"

namespace dgdef::io {

struct MorphismEntry {
  DglaPtr source, target;
  Matrix matrix;
  std::optional<DglaMorphism> morphism;  // set when the map is a DGLA morphism
  CheckList checks;
};

struct BicomplexEntry {
  BigradedAlgebra algebra;
  std::optional<ProductModel> product;  // for tensor = X, Y
};

/// A subspace of a bicomplex (ideal, subalgebra or harmonic elements).
struct SubspaceEntry {
  std::string in;
  std::vector<Vec> span;
};

struct ContractionEntry {
  std::string algebra;
  ContractionAction action;
};

struct TraceEntry {
  std::string in;
  Vec weights;  // functional on A_Z; read on the representatives of A_Γ
};

struct DiagramEntry {
  DiagramMorphism morphism;
  std::optional<ThreeLevelDiagram> three_level;
  std::string harmonic, trace;  // names, possibly empty
};

struct CorpusSet {
  std::string source;  // pair or diagram name
  PairDiagram pair;
  std::string diagram;  // set when the source is a diagram-morphism
  std::vector<CorpusEntry> entries;
};

/// A resolved document: every section built into core objects.
struct Model {
  Field field;
  RawDocument raw;
  std::map<std::string, DglaPtr> dglas;
  std::map<std::string, MorphismEntry> morphisms;
  std::map<std::string, PairDiagram> pairs;
  std::map<std::string, ArtinAlgebra> artins;
  std::map<std::string, SmallExtension> extensions;
  std::map<std::string, BicomplexEntry> bicomplexes;
  std::map<std::string, SubspaceEntry> ideals, subalgebras, harmonics;
  std::map<std::string, ContractionEntry> contractions;
  std::map<std::string, TraceEntry> traces;
  std::map<std::string, DiagramEntry> diagrams;
  std::map<std::string, CorpusSet> corpora;

  /// (kind, name) in document order, [field] excluded.
  std::vector<std::pair<std::string, std::string>> order;
};

/// Builds every section. `field_override` replaces the [field] declaration.
/// Throws ParseError (line-numbered) on any input problem.
Model resolve(const RawDocument& doc, std::optional<Field> field_override = {});
Model load_text(std::string_view text, std::optional<Field> field_override = {});
Model load_file(const std::string& path, std::optional<Field> field_override = {});

/// The diagram's trace read on the representatives of A_Γ: each basis
/// element of A_Γ takes the weight of the A_Z basis element with its label.
Vec graph_trace(const Model& m, const DiagramEntry& d);

/// Linear combination over `labels`.
Vec parse_element(Field f, const std::vector<std::string>& labels, std::string_view text, std::size_t line);

}  // namespace dgdef::io
