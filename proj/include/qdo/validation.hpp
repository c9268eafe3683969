#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace qdo {

struct CheckResult {
  std::string name;
  bool passed = true;
  double value = 0.0;  // the quantity tested, e.g. Omega^2 or K_A
  std::string detail;
};

/// Named pass/fail checks. Failures here are soft: hard violations throw.
struct ValidationReport {
  std::vector<CheckResult> checks;

  void add(std::string name, bool passed, double value, std::string detail = {}) {
    checks.push_back({std::move(name), passed, value, std::move(detail)});
  }

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  }

  const CheckResult* find(const std::string& name) const {
    auto it = std::find_if(checks.begin(), checks.end(),
                           [&](const auto& c) { return c.name == name; });
    return it == checks.end() ? nullptr : &*it;
  }

  void append(const ValidationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
};

}  // namespace qdo
