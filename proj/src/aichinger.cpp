#include "leibniz/aichinger.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <bit>
#include <cmath>

#include "leibniz/rng.hpp"

namespace leibniz {

namespace {

std::vector<double> add(std::span<const double> a, std::span<const double> b) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

} // namespace

SymbolG::SymbolG(int dim, std::function<double(double, std::span<const double>)> eval)
    : dim_(dim), eval_(std::move(eval)) {
    if (dim_ < 1 || dim_ > kMaxJetOrder + 1)
        throw std::invalid_argument("SymbolG: dimension out of range");
    if (!eval_) throw std::invalid_argument("SymbolG requires an evaluator");
}

double SymbolG::operator()(double x, std::span<const double> v) const {
    if (static_cast<int>(v.size()) != dim_)
        throw std::invalid_argument("SymbolG: probe dimension mismatch");
    return eval_(x, v);
}

SymbolG SymbolG::induced(const Operator& D) {
    int dim = D.jet_order() + 1;
    auto eval = [D](double x, std::span<const double> v) {
        return conjugate_p(D, prescribe_jet(x, v), x);
    };
    return SymbolG(dim, eval);
}

double conjugate_p(const Operator& D, const FunctionSpec& f, double x) {
    double v0 = f.value_at(x);
    if (std::abs(v0) > 300.0)
        throw std::overflow_error("conjugate_p: |f(x)| too large for exp");
    return D.apply(exp_of(f), x) / std::exp(v0);
}

Residual cube_residual(const SymbolG& G, double x, std::span<const double> v1,
                       std::span<const double> v2, std::span<const double> v3) {
    if (v1.size() != v2.size() || v1.size() != v3.size())
        throw std::invalid_argument("cube_residual: dimension mismatch");

    double t0 = G(x, add(add(v1, v2), v3));
    double t1 = -G(x, add(v2, v3));
    double t2 = -G(x, add(v1, v3));
    double t3 = -G(x, add(v1, v2));
    double t4 = G(x, v1);
    double t5 = G(x, v2);
    double t6 = G(x, v3);

    double scale = 0.0;
    for (double t : {t0, t1, t2, t3, t4, t5, t6}) scale = std::max(scale, std::abs(t));
    return {t0 + t1 + t2 + t3 + t4 + t5 + t6, scale};
}

double QuadraticModel::coeff(int i, int j) const {
    int hi = std::max(i, j);
    int lo = std::min(i, j);
    return quad[static_cast<std::size_t>(hi)][static_cast<std::size_t>(lo)];
}

double QuadraticModel::evaluate(std::span<const double> v) const {
    double acc = constant;
    for (std::size_t i = 0; i < linear.size(); ++i) acc += linear[i] * v[i];
    for (std::size_t i = 0; i < linear.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) acc += quad[i][j] * v[i] * v[j];
    return acc;
}

QuadraticModel fit_quadratic(std::span<const FitSample> samples, int n) {
    if (n < 1) throw std::invalid_argument("fit_quadratic: n must be >= 1");
    const int m = 1 + n + n * (n + 1) / 2;
    if (static_cast<int>(samples.size()) < m)
        throw std::invalid_argument("fit_quadratic: need at least " + std::to_string(m) +
                                    " samples");

    Eigen::MatrixXd A(samples.size(), m);
    Eigen::VectorXd b(samples.size());
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& v = samples[s].first;
        if (static_cast<int>(v.size()) != n)
            throw std::invalid_argument("fit_quadratic: sample dimension mismatch");
        int col = 0;
        A(static_cast<Eigen::Index>(s), col++) = 1.0;
        for (int i = 0; i < n; ++i) A(static_cast<Eigen::Index>(s), col++) = v[i];
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) A(static_cast<Eigen::Index>(s), col++) = v[i] * v[j];
        b(static_cast<Eigen::Index>(s)) = samples[s].second;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smax = svd.singularValues()(0);
    double smin = svd.singularValues()(svd.singularValues().size() - 1);
    if (!(smin > smax * 1e-12))
        throw std::runtime_error("fit_quadratic: rank-deficient design matrix");
    Eigen::VectorXd coef = svd.solve(b);

    QuadraticModel model;
    model.condition = smax / smin;
    model.constant = coef(0);
    model.linear.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) model.linear[static_cast<std::size_t>(i)] = coef(1 + i);
    model.quad.assign(static_cast<std::size_t>(n), {});
    for (int i = 0; i < n; ++i)
        model.quad[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(i) + 1, 0.0);
    int col = 1 + n;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            model.quad[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = coef(col++);
    model.residual = (A * coef - b).cwiseAbs().maxCoeff();
    return model;
}

RecoveredCoefficients recover_coefficients(const Operator& D, double x, double verify_tol) {
    const int k = D.jet_order();
    if (k > 2)
        throw std::invalid_argument("recover_coefficients: operator order must be <= 2");
    const int n = k + 1;
    SymbolG G = SymbolG::induced(D);

    auto unit = [n](int i, double v) {
        std::vector<double> e(static_cast<std::size_t>(n), 0.0);
        e[static_cast<std::size_t>(i)] = v;
        return e;
    };

    RecoveredCoefficients r;
    try {
        double g_e0 = G(x, unit(0, 1.0));
        double g_2e0 = G(x, unit(0, 2.0));
        r.d00 = (g_2e0 - 2.0 * g_e0) / 2.0;
        r.c0 = g_e0 - r.d00;
        if (k >= 2) r.c2 = G(x, unit(2, 1.0));
        if (k >= 1) r.c1 = G(x, unit(1, 1.0)) - r.c2;
    } catch (const family_error&) {
        throw;
    } catch (const std::exception& e) {
        throw family_error(D.name() + " is not in the characterized family at x=" +
                           std::to_string(x) + " (probe failed: " + e.what() + ")");
    }

    // Redundant probes guard against operators whose symbol is not of the
    // characterized shape (they would still pass the four canonical probes).
    SplitMix64 rng(mix_seed(0x7ec04e5ULL, std::bit_cast<std::uint64_t>(x)));
    double scale = 1.0;
    for (int probe = 0; probe < 8; ++probe) {
        std::vector<double> v(static_cast<std::size_t>(n));
        for (auto& vi : v) vi = rng.uniform(-1.0, 1.0);
        double predicted = r.c0 * v[0] + r.d00 * v[0] * v[0];
        if (k >= 1) predicted += r.c1 * v[1] + r.c2 * v[1] * v[1];
        if (k >= 2) predicted += r.c2 * v[2];
        double actual;
        try {
            actual = G(x, v);
        } catch (const std::exception& e) {
            throw family_error(D.name() + " is not in the characterized family at x=" +
                               std::to_string(x) + " (probe failed: " + e.what() + ")");
        }
        r.verification_misfit = std::max(r.verification_misfit, std::abs(actual - predicted));
        scale = std::max(scale, std::abs(actual));
    }
    if (r.verification_misfit > verify_tol * scale)
        throw family_error(D.name() + " is not in the characterized family at x=" +
                           std::to_string(x) + " (verification misfit " +
                           std::to_string(r.verification_misfit) + ")");
    return r;
}

} // namespace leibniz
