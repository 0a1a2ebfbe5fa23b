#include "leibniz/counterexample.hpp"

#include <cmath>
#include <numbers>

#include "leibniz/rng.hpp"

namespace leibniz {

namespace {

const double kLn2 = std::numbers::ln2;
const double kLn3 = std::log(3.0);

} // namespace

PsiSolution::PsiSolution(std::function<double(double)> seed) : seed_(std::move(seed)) {
    if (!seed_) seed_ = [](double u) { return u * u * u; };
}

double PsiSolution::eval(double u) const {
    if (!(u >= 0.0)) throw std::domain_error("psi requires u >= 0");
    if (u > kMaxArgument) throw std::domain_error("psi argument beyond recursion cap");
    std::lock_guard<std::mutex> lock(mutex_);
    return eval_locked(u);
}

double PsiSolution::eval_locked(double u) const {
    if (u < kLn3) return seed_(u);
    auto it = memo_.find(u);
    if (it != memo_.end()) return it->second;
    double v = 3.0 * eval_locked(u - (kLn3 - kLn2)) - 3.0 * eval_locked(u - kLn3);
    memo_.emplace(u, v);
    return v;
}

double PsiSolution::phi(double t) const {
    if (!(t > 1.0)) throw std::domain_error("phi requires t > 1");
    return eval(std::log(t));
}

double PsiSolution::recurrence_residual(double u) const {
    return eval(u + kLn3) - 3.0 * eval(u + kLn2) + 3.0 * eval(u);
}

ScalarMap build_d(std::shared_ptr<const PsiSolution> sol) {
    if (!sol) throw std::invalid_argument("build_d: null solution");
    ScalarMap d;
    d.name = "d";
    d.domain = DomainSet::interval(std::numbers::e, kInf);
    d.eval = [sol](double t) { return t * sol->phi(std::log(t)); };
    return d;
}

Residual residual_powers_composition(const ScalarMap& d, const FunctionSpec& f, double x) {
    double F = f.value_at(x);
    if (!(F > std::numbers::e))
        throw std::domain_error("residual_powers_composition requires f(x) > e");

    double t0 = d(F * F * F);
    double t1 = -3.0 * F * d(F * F);
    double t2 = 3.0 * F * F * d(F);
    double scale = std::max({std::abs(t0), std::abs(t1), std::abs(t2)});
    return {t0 + t1 + t2, scale};
}

ViolationTriple find_violation_triple(const ScalarMap& d, std::uint64_t seed, int trials,
                                      double threshold) {
    if (trials < 1) throw std::invalid_argument("find_violation_triple: trials must be >= 1");
    if (!(threshold > 0.0))
        throw std::invalid_argument("find_violation_triple: threshold must be > 0");

    SplitMix64 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        double x = rng.uniform(std::numbers::e, 20.0);
        double y = rng.uniform(std::numbers::e, 20.0);
        double z = rng.uniform(std::numbers::e, 20.0);
        double r = d(x * y * z) - x * d(y * z) - y * d(x * z) - z * d(x * y) +
                   x * y * d(z) + x * z * d(y) + y * z * d(x);
        if (std::abs(r) > threshold) return {x, y, z, r};
    }
    throw no_violation_error("no trilinear violation found in " + std::to_string(trials) +
                             " trials (degenerate seed?)");
}

double cube_phi(const PsiSolution& sol, double a, double b, double c) {
    if (!(a > 1.0 && b > 1.0 && c > 1.0))
        throw std::domain_error("cube_phi requires arguments > 1");
    return sol.phi(a + b + c) - sol.phi(a + b) - sol.phi(a + c) - sol.phi(b + c) +
           sol.phi(a) + sol.phi(b) + sol.phi(c);
}

} // namespace leibniz
