#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace leibniz {

/// One verified case. `expect` is "zero" for ordinary identity checks
/// (pass iff max_residual <= tolerance * scale) or "violation" for negative
/// controls and counterexample cases (pass iff the residual EXCEEDED the
/// threshold). max_residual and scale belong to the worst sample.
struct ReportCase {
    std::string name;
    std::string op;
    std::string functions;
    int sample_count = 0;
    double max_residual = 0.0;
    double scale = 1.0;
    double tolerance = 0.0;
    std::string expect = "zero";
    bool pass = false;
    std::optional<double> measured;  // extra recorded value, e.g. an empirical constant
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<ReportCase> cases;
    double wall_time_ms = 0.0;

    bool all_pass() const;
};

struct RunReport {
    int schema = 1;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    std::vector<SuiteReport> suites;

    bool all_pass() const;
};

/// JSON serialization; field order and number formatting are deterministic.
/// Timing fields are the only run-to-run varying content and can be omitted.
std::string report_to_json(const RunReport& report, bool include_timing = true);

/// CSV serialization: one row per case.
std::string report_to_csv(const RunReport& report, bool include_timing = true);

} // namespace leibniz
