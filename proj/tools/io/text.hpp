#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dgdef::io {

/// Input error carrying the 1-based line it refers to (0 when unknown).
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }
  const std::string& message() const { return message_; }

private:
  std::size_t line_;
  std::string message_;
};

/// "key = value"
struct KeyValue {
  std::string key, value;
  std::size_t line = 0;
};

/// "[op] a -> b: c" or "(a,b) -> c: coeff". `op` is an optional leading word
/// such as "del"; `coeff` defaults to "1".
struct Arrow {
  std::string op;
  std::vector<std::string> sources;  // one or two
  std::string target;
  std::string coeff = "1";
  std::size_t line = 0;
};

struct Section {
  std::string kind, name;
  std::size_t line = 0;
  std::vector<KeyValue> values;
  std::vector<Arrow> arrows;

  /// Value of `key`, or std::nullopt. Throws ParseError when repeated.
  std::optional<std::string> get(std::string_view key) const;
  std::string require(std::string_view key) const;
  const KeyValue* find(std::string_view key) const;
};

struct RawDocument {
  std::vector<Section> sections;
};

/// Section kinds in resolution order.
const std::vector<std::string>& section_kinds();

RawDocument parse_text(std::string_view text);

/// Canonical rendering: sections and keys in input order (corpus entries
/// keep theirs), arrows sorted, single spaces, no comments.
std::string serialize(const RawDocument& doc);

/// Splits "a, b ,c" at top-level commas (parentheses nest).
std::vector<std::string> split_list(std::string_view s);
/// Splits at whitespace.
std::vector<std::string> split_words(std::string_view s);
std::string trim(std::string_view s);

/// Term of a linear combination: coefficient text and label.
struct Term {
  std::string coeff;  // "1", "-2", "3/4"
  std::string label;
};
/// Parses "2*a - b + 1/2*c" or "-a". Terms and signs are whitespace
/// separated; a coefficient attaches with '*'.
std::vector<Term> parse_combination(std::string_view s, std::size_t line);

}  // namespace dgdef::io
