#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leibniz/domain.hpp"
#include "leibniz/jet.hpp"

namespace leibniz {

/// A named scalar map with an explicit domain. Used as the outer function of
/// composition operators and as the counterexample map d.
struct ScalarMap {
    std::string name;
    DomainSet domain = DomainSet::reals();
    std::function<double(double)> eval;

    double operator()(double x) const;  // checks domain
};

/// A C^k test function: jet evaluator on an explicit domain, an optional
/// closed-form derivative oracle, and the zeros the sampler should keep away
/// from. Immutable after construction; jet_at is safe for concurrent calls.
class FunctionSpec {
public:
    FunctionSpec(std::string name, DomainSet domain,
                 std::function<Jet(double, int)> jet,
                 std::function<double(double, int)> exact_derivs = {},
                 std::vector<double> zero_hints = {});

    const std::string& name() const { return name_; }
    const DomainSet& domain() const { return domain_; }
    const std::vector<double>& zero_hints() const { return zero_hints_; }

    /// Jet of this function at x, order <= kMaxJetOrder. Checks the domain.
    Jet jet_at(double x, int order) const;

    double value_at(double x) const { return jet_at(x, 0).value(); }

    bool has_exact_derivatives() const { return static_cast<bool>(exact_); }
    double exact_derivative(double x, int i) const;

private:
    std::string name_;
    DomainSet domain_;
    std::function<Jet(double, int)> jet_;
    std::function<double(double, int)> exact_;
    std::vector<double> zero_hints_;
};

/// Built-in test functions: constants, monomials, a polynomial with interior
/// zeros, exponentials, sin-based functions, 1/(1+x^2), 1/x on a split
/// domain, and strictly positive / strictly negative entries.
const std::vector<FunctionSpec>& builtin_corpus();

/// Lookup by name; throws std::invalid_argument for unknown names.
const FunctionSpec& corpus_lookup(std::string_view name);

/// The polynomial p(s) = sum v[i] (s - x0)^i / i!, whose jet at x0 is
/// exactly v. Realizes an arbitrary prescribed jet by a smooth function.
FunctionSpec prescribe_jet(double x0, std::span<const double> v);

inline constexpr double kDefaultSampleMargin = 1e-3;

/// n deterministic points inside the domain, each at distance >= margin from
/// finite interval endpoints and from every point of `avoid`. Unbounded
/// intervals are sampled within [-8, 8]. Throws if the margin leaves no room.
std::vector<double> sample_points(const DomainSet& domain, int n, std::uint64_t seed,
                                  double margin = kDefaultSampleMargin,
                                  std::span<const double> avoid = {});

// Algebraic combinators. Domains intersect where both factors are needed.
FunctionSpec product(const FunctionSpec& f, const FunctionSpec& g);
FunctionSpec sum(const FunctionSpec& f, const FunctionSpec& g);
FunctionSpec scale(const FunctionSpec& f, double s);
FunctionSpec exp_of(const FunctionSpec& f);
FunctionSpec power_of(const FunctionSpec& f, int n);

/// s -> f(s + h); the domain translates accordingly.
FunctionSpec shift_of(const FunctionSpec& f, double h);

/// d o f. Only order-0 jets are available (d is a black-box scalar map);
/// requesting a higher order throws.
FunctionSpec compose_scalar(const ScalarMap& d, const FunctionSpec& f);

/// Zero on [lo, hi], strictly positive outside, with C^infinity junctions
/// (exp(-1/t) ramps). Used to build pairs of functions that agree on an
/// interval but differ elsewhere.
FunctionSpec plateau_bump(double lo, double hi);

} // namespace leibniz
