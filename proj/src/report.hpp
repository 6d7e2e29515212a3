#pragma once

// JSON report assembly. Two runs with the same configuration and seed
// produce byte-identical output except for the timestamp field; per-check
// wall clock is therefore only emitted when the run asked for it.

#include <string>
#include <vector>

#include "runconfig.hpp"

namespace qkzr::cli {

struct ReportEntry {
  std::string name;
  bool passed = false;
  bool skipped = false;  // passed, but the check had nothing to act on
  std::string residual;
  std::string detail;
  double wall_ms = 0.0;
};

struct ReportDocument {
  RunConfig config;
  std::string timestamp;  // ISO 8601 UTC
  std::vector<ReportEntry> checks;

  int total() const { return static_cast<int>(checks.size()); }
  int passed() const;
  int failed() const;
  int skipped() const;
};

std::string current_timestamp_utc();
std::string render_report(const ReportDocument& doc);
std::string summary_line(const ReportDocument& doc);

}  // namespace qkzr::cli
