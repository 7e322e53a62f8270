#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace icm {

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Ordered list of named pass/fail checks.
struct Report {
  std::vector<Check> checks;

  void add(std::string name, bool passed, std::string detail = {}) {
    checks.push_back({std::move(name), passed, std::move(detail)});
  }
  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
  const Check* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

}  // namespace icm
