#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "io/model.hpp"
#include "json.hpp"

namespace dgdef::cli {

using Tree = nlohmann::ordered_json;

struct Options {
  std::string command;
  std::string file;
  std::optional<int> degree;
  unsigned depth = 4;
  std::optional<std::uint64_t> seed;
  unsigned trials = 100;
  bool parallel = false;
  bool timing = false;
  std::uint64_t limit = 1000000;
};

struct Outcome {
  Tree report;
  int status = 0;  // 0 all-pass, 1 some check failed
};

const std::vector<std::string>& commands();

/// Dispatches to the command. Throws io::ParseError or std::invalid_argument
/// on unusable input.
Outcome run(const Options& opts, const io::Model& model);

/// Indented key/value rendering of the same tree.
std::string render_text(const Tree& t);

}  // namespace dgdef::cli
