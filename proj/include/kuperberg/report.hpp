#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

namespace kuperberg {

struct CheckResult {
  std::string name;
  bool passed = true;
  std::string witness;  // empty when passed
};

/// Named pass/fail checks; failures carry a witness describing the offending input.
class Report {
 public:
  void pass(std::string name) { checks_.push_back({std::move(name), true, {}}); }
  void fail(std::string name, std::string witness) {
    checks_.push_back({std::move(name), false, std::move(witness)});
  }
  void record(std::string name, bool ok, std::string witness) {
    if (ok)
      pass(std::move(name));
    else
      fail(std::move(name), std::move(witness));
  }
  void merge(const Report& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  }

  bool all_passed() const {
    return std::all_of(checks_.begin(), checks_.end(), [](const auto& c) { return c.passed; });
  }
  std::size_t failure_count() const {
    return static_cast<std::size_t>(
        std::count_if(checks_.begin(), checks_.end(), [](const auto& c) { return !c.passed; }));
  }
  const std::vector<CheckResult>& checks() const { return checks_; }
  std::vector<CheckResult> failures() const {
    std::vector<CheckResult> out;
    std::copy_if(checks_.begin(), checks_.end(), std::back_inserter(out), [](const auto& c) { return !c.passed; });
    return out;
  }
  bool passed(const std::string& name) const {
    for (const auto& c : checks_)
      if (c.name == name && !c.passed) return false;
    return true;
  }

 private:
  std::vector<CheckResult> checks_;
};

inline std::ostream& operator<<(std::ostream& os, const Report& r) {
  for (const auto& c : r.checks()) {
    os << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.passed) os << "  witness: " << c.witness;
    os << '\n';
  }
  return os;
}

}  // namespace kuperberg
