#pragma once

#include "leibniz/config.hpp"
#include "leibniz/report.hpp"

namespace leibniz {

SuiteReport run_identities_suite(const RunConfig& config);
SuiteReport run_faa_suite(const RunConfig& config);
SuiteReport run_aichinger_suite(const RunConfig& config);
SuiteReport run_recover_suite(const RunConfig& config);
SuiteReport run_counterexample_suite(const RunConfig& config);

/// Runs the suites requested by the config, in the fixed canonical order.
RunReport run_all(const RunConfig& config);

/// Runs, serializes and writes the report (report_path, or stdout when
/// empty; the LEIBNIZ_REPORT environment variable overrides an empty path).
/// Returns the process exit status: 0 iff every case passed.
int run_and_write(const RunConfig& config);

} // namespace leibniz
