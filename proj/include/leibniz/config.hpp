#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "leibniz/operators.hpp"

namespace leibniz {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// One operator block from the config: a family name plus its parameters.
/// Coefficient values are either numeric constants or one of the named
/// coefficient functions ("x", "x^2", "sin", "cos", "1+x^2").
struct OperatorConfig {
    std::string family;  // characterized | linear | second_only | log_polynomial | composition
    std::string name;    // optional display name
    std::map<std::string, std::string> params;
};

/// Flat key/value run configuration. File format: `key = value` lines,
/// `#` comments, and repeated `[operator]` sections, one nesting level only:
///
///   suites = identities, counterexample
///   corpus = const_one, square, exp
///   seed = 42
///
///   [operator]
///   family = characterized
///   c0 = 1.0
///   c1 = 2.0
///   c2 = 3.0
///   d00 = 4.0
struct RunConfig {
    std::vector<std::string> suites;
    std::vector<std::string> corpus;
    std::vector<OperatorConfig> operators;
    int points_per_check = 16;
    std::uint64_t seed = 42;
    double tolerance = 1e-9;
    std::string report_path;  // empty -> stdout
    std::string format = "json";
    int trials = 1000;                   // counterexample search budget
    double violation_threshold = 1e-6;   // counterexample detection threshold

    void validate() const;  // throws config_error

    /// Built-in configuration: the identities suite over the full corpus with
    /// the standard operator set (plain second derivative plus twelve
    /// characterized operators covering constant and non-constant
    /// coefficients and every order-degeneration variant).
    static RunConfig defaults();

    static RunConfig parse_file(const std::string& path);
    static RunConfig parse_string(const std::string& text);
};

/// Builds the operator described by one config block; throws config_error
/// for unknown families, unknown coefficient names, or family constraint
/// violations.
Operator build_operator(const OperatorConfig& oc);

/// Named coefficient functions accepted in configs.
CoeffFn parse_coefficient(const std::string& value);

/// True when the block describes an operator whose ground-truth coefficient
/// quadruple is known (used by the recovery suite).
bool has_known_coefficients(const OperatorConfig& oc);

/// Ground-truth (c0, c1, c2, d00) at a point for a characterized-family
/// config block.
std::array<double, 4> known_coefficients_at(const OperatorConfig& oc, double x);

} // namespace leibniz
