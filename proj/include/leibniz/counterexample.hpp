#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

#include "leibniz/operators.hpp"

namespace leibniz {

/// A solution of psi(u + ln 3) = 3 psi(u + ln 2) - 3 psi(u) on [0, inf),
/// extended from an arbitrary seed on [0, ln 3) by backward recursion:
///
///   psi(u) = 3 psi(u - (ln 3 - ln 2)) - 3 psi(u - ln 3)   for u >= ln 3.
///
/// Both recursion arguments shrink by at least ln 3 - ln 2 ~ 0.405, so the
/// recursion bottoms out in the seed interval. ln 2 and ln 3 are
/// incommensurable, so no uniform grid is closed under the two shifts;
/// pointwise recursion with memoization evaluates the extension exactly at
/// every queried argument instead. In multiplicative coordinates
/// phi(t) = psi(ln t) solves phi(3t) = 3 phi(2t) - 3 phi(t) on (1, inf).
///
/// No smoothness matching is attempted at the junction u = ln 3: only
/// pointwise values are needed downstream.
class PsiSolution {
public:
    /// Default seed u -> u^3 (smooth on the seed interval and visibly not a
    /// quadratic once extended).
    explicit PsiSolution(std::function<double(double)> seed = {});

    /// psi(u) for u >= 0. Memoized; safe for concurrent callers.
    double eval(double u) const;

    /// phi(t) = psi(ln t) for t > 1.
    double phi(double t) const;

    /// psi(u + ln 3) - 3 psi(u + ln 2) + 3 psi(u); zero up to rounding by
    /// construction.
    double recurrence_residual(double u) const;

    static constexpr double kMaxArgument = 64.0;  // recursion depth cap

private:
    double eval_locked(double u) const;

    std::function<double(double)> seed_;
    mutable std::unordered_map<double, double> memo_;
    mutable std::mutex mutex_;
};

/// d(t) = t * phi(ln t) on (e, inf). Satisfies
/// d(t^3) = 3 t d(t^2) - 3 t^2 d(t) there, which makes the composition
/// operator f -> d o f a solution of the diagonal identity.
ScalarMap build_d(std::shared_ptr<const PsiSolution> sol);

/// d(f(x)^3) - 3 f(x) d(f(x)^2) + 3 f(x)^2 d(f(x)); requires f(x) > e.
Residual residual_powers_composition(const ScalarMap& d, const FunctionSpec& f, double x);

struct ViolationTriple {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double residual = 0.0;
};

struct no_violation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Searches seeded random triples in (e, 20)^3 for one where the seven-term
/// trilinear expression in d exceeds `threshold` in absolute value. Throws
/// no_violation_error when `trials` attempts find none (which signals a
/// degenerate psi seed, e.g. one extending to a quadratic phi).
ViolationTriple find_violation_triple(const ScalarMap& d, std::uint64_t seed, int trials,
                                      double threshold);

/// phi(a+b+c) - phi(a+b) - phi(a+c) - phi(b+c) + phi(a) + phi(b) + phi(c)
/// for a, b, c > 1. Nonzero values witness that phi is not a polynomial of
/// degree at most 2.
double cube_phi(const PsiSolution& sol, double a, double b, double c);

} // namespace leibniz
