#include "io/text.hpp"

#include <algorithm>
#include <sstream>

namespace dgdef::io {

namespace {

std::string line_prefix(std::size_t line) { return line ? "line " + std::to_string(line) + ": " : std::string(); }

bool has_kind(const std::string& k) {
  const auto& kinds = section_kinds();
  return std::find(kinds.begin(), kinds.end(), k) != kinds.end();
}

Arrow parse_arrow(const std::string& body, std::size_t line) {
  const auto arrow = body.find("->");
  std::string left = trim(std::string_view(body).substr(0, arrow));
  std::string right = trim(std::string_view(body).substr(arrow + 2));
  Arrow a;
  a.line = line;
  if (const auto colon = right.rfind(':'); colon != std::string::npos) {
    a.coeff = trim(std::string_view(right).substr(colon + 1));
    right = trim(std::string_view(right).substr(0, colon));
    if (a.coeff.empty()) throw ParseError(line, "missing coefficient after ':'");
  }
  if (right.empty()) throw ParseError(line, "missing arrow target");
  a.target = right;
  if (const auto paren = left.find('('); paren != std::string::npos && left.back() == ')') {
    a.op = trim(std::string_view(left).substr(0, paren));
    const std::string inner = left.substr(paren + 1, left.size() - paren - 2);
    a.sources = split_list(inner);
    if (a.sources.size() == 1) a.sources = {left.substr(paren)};
    if (a.sources.size() > 2) throw ParseError(line, "at most two arrow sources");
  } else {
    auto words = split_words(left);
    if (words.size() == 2) {
      a.op = words[0];
      a.sources = {words[1]};
    } else if (words.size() == 1) {
      a.sources = {words[0]};
    } else {
      throw ParseError(line, "malformed arrow source '" + left + "'");
    }
  }
  for (const auto& s : a.sources)
    if (s.empty()) throw ParseError(line, "empty arrow source");
  if (a.op.find(' ') != std::string::npos) throw ParseError(line, "malformed arrow operator '" + a.op + "'");
  return a;
}

std::string render_arrow(const Arrow& a) {
  std::string out = a.op.empty() ? "" : a.op + " ";
  if (a.sources.size() == 2)
    out += "(" + a.sources[0] + "," + a.sources[1] + ")";
  else
    out += a.sources.at(0);
  return out + " -> " + a.target + ": " + a.coeff;
}

}  // namespace

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line_prefix(line) + message), line_(line), message_(message) {}

const std::vector<std::string>& section_kinds() {
  static const std::vector<std::string> kinds = {"field",       "dgla",     "morphism", "pair",     "artin",
                                                 "extension",   "bicomplex", "ideal",    "subalgebra", "contraction",
                                                 "harmonic",    "trace",    "diagram-morphism", "corpus"};
  return kinds;
}

const KeyValue* Section::find(std::string_view key) const {
  const KeyValue* found = nullptr;
  for (const auto& kv : values)
    if (kv.key == key) {
      if (found) throw ParseError(kv.line, "repeated key '" + kv.key + "' in [" + kind + "] " + name);
      found = &kv;
    }
  return found;
}

std::optional<std::string> Section::get(std::string_view key) const {
  if (const KeyValue* kv = find(key)) return kv->value;
  return std::nullopt;
}

std::string Section::require(std::string_view key) const {
  if (auto v = get(key)) return *v;
  throw ParseError(line, "[" + kind + "] " + name + " needs '" + std::string(key) + " = ...'");
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
  return out;
}

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

RawDocument parse_text(std::string_view text) {
  RawDocument doc;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      const auto close = line.find(']');
      if (close == std::string::npos) throw ParseError(line_no, "unterminated section header");
      Section s;
      s.kind = trim(std::string_view(line).substr(1, close - 1));
      s.name = trim(std::string_view(line).substr(close + 1));
      s.line = line_no;
      if (!has_kind(s.kind)) throw ParseError(line_no, "unknown section [" + s.kind + "]");
      if (s.name.empty()) throw ParseError(line_no, "section [" + s.kind + "] needs a name");
      doc.sections.push_back(std::move(s));
    } else if (doc.sections.empty()) {
      throw ParseError(line_no, "entry outside any section");
    } else if (line.find("->") != std::string::npos) {
      doc.sections.back().arrows.push_back(parse_arrow(line, line_no));
    } else if (const auto eq = line.find('='); eq != std::string::npos) {
      KeyValue kv{trim(std::string_view(line).substr(0, eq)), trim(std::string_view(line).substr(eq + 1)), line_no};
      if (kv.key.empty()) throw ParseError(line_no, "empty key");
      doc.sections.back().values.push_back(std::move(kv));
    } else {
      throw ParseError(line_no, "expected 'key = value' or an arrow entry, got '" + line + "'");
    }
    if (end == text.size()) break;
  }
  return doc;
}

std::string serialize(const RawDocument& doc) {
  std::string out;
  for (const auto& s : doc.sections) {
    if (!out.empty()) out += "\n";
    out += "[" + s.kind + "] " + s.name + "\n";
    for (const auto& kv : s.values) out += kv.key + " = " + kv.value + "\n";
    std::vector<std::string> arrows;
    for (const auto& a : s.arrows) arrows.push_back(render_arrow(a));
    std::sort(arrows.begin(), arrows.end());
    for (const auto& a : arrows) out += a + "\n";
  }
  return out;
}

std::vector<Term> parse_combination(std::string_view s, std::size_t line) {
  std::vector<Term> out;
  if (trim(s) == "0") return out;
  bool negate = false, expect_term = true;
  for (std::string w : split_words(s)) {
    if (w == "+" || w == "-") {
      if (!expect_term && !out.empty()) expect_term = true;
      else if (!out.empty() || w == "+") throw ParseError(line, "dangling sign in '" + std::string(s) + "'");
      negate = w == "-";
      continue;
    }
    if (!expect_term) throw ParseError(line, "missing sign between terms in '" + std::string(s) + "'");
    if (w.front() == '-' && w.size() > 1) {
      negate = !negate;
      w.erase(0, 1);
    }
    Term t{"1", w};
    if (const auto star = w.find('*'); star != std::string::npos) {
      t.coeff = w.substr(0, star);
      t.label = w.substr(star + 1);
      if (t.coeff.empty() || t.label.empty()) throw ParseError(line, "malformed term '" + w + "'");
    }
    if (negate) t.coeff = t.coeff.front() == '-' ? t.coeff.substr(1) : "-" + t.coeff;
    out.push_back(std::move(t));
    negate = false;
    expect_term = false;
  }
  if (expect_term && !out.empty()) throw ParseError(line, "trailing sign in '" + std::string(s) + "'");
  return out;
}

}  // namespace dgdef::io
