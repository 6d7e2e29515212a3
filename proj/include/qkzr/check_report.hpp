#pragma once

// Named pass/fail results with printable residuals. Every validate_* entry
// point returns a CheckReport; the CLI suites merge these and serialize them.

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "qkzr/scalar.hpp"

namespace qkzr {

struct CheckResult {
  std::string name;      // stable slash-separated identifier
  bool passed = false;
  std::string residual;  // exact rational or float magnitude; empty if n/a
  std::string detail;    // parameters used, counts, free-form notes
};

class CheckReport {
 public:
  void add(CheckResult r) { results_.push_back(std::move(r)); }

  void add(std::string name, bool passed, std::string residual = "",
           std::string detail = "") {
    results_.push_back({std::move(name), passed, std::move(residual), std::move(detail)});
  }

  void merge(const CheckReport& other) {
    results_.insert(results_.end(), other.results_.begin(), other.results_.end());
  }

  bool all_passed() const {
    for (const auto& r : results_)
      if (!r.passed) return false;
    return true;
  }

  size_t size() const { return results_.size(); }
  const std::vector<CheckResult>& results() const { return results_; }

 private:
  std::vector<CheckResult> results_;
};

inline std::string residual_str(const Rational& r) { return rational_str(r); }

inline std::string residual_str(double r) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", r);
  return buf;
}

}  // namespace qkzr
