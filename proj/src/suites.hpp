#pragma once

// Composes the module-level validators into the named suites. Check
// failures and internal errors become failed report entries; this layer
// never throws for them. Returns the process exit code: 0 when every check
// passed, 1 otherwise.

#include "report.hpp"
#include "runconfig.hpp"

namespace qkzr::cli {

int run_suites(const RunConfig& cfg, ReportDocument& doc);

}  // namespace qkzr::cli
