#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dgdef {

/// One verdict inside a validation report; `witness` explains a failure.
struct Check {
  std::string name;
  bool passed = true;
  std::string witness;
};

class CheckList {
public:
  void pass(std::string name) { checks_.push_back({std::move(name), true, {}}); }
  void fail(std::string name, std::string witness) { checks_.push_back({std::move(name), false, std::move(witness)}); }
  void add(std::string name, bool ok, std::string witness_if_failed) {
    if (ok)
      pass(std::move(name));
    else
      fail(std::move(name), std::move(witness_if_failed));
  }

  bool all_passed() const {
    for (const auto& c : checks_)
      if (!c.passed) return false;
    return true;
  }
  const std::vector<Check>& checks() const { return checks_; }
  /// First check with this name, or nullptr.
  const Check* find(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name) return &c;
    return nullptr;
  }

private:
  std::vector<Check> checks_;
};

}  // namespace dgdef
