#pragma once

#include <array>
#include <cstddef>
#include <span>

namespace leibniz {

inline constexpr int kMaxJetOrder = 8;

/// Truncated jet of a real function at a point.
///
/// Entry i holds the raw derivative value f^(i)(x), not the Taylor
/// coefficient f^(i)(x)/i!. With this convention the product rule is the
/// binomial convolution, and jet entries can be plugged directly into
/// operator formulas written in terms of f, f', f''.
///
/// All operations are total: they either return a jet with finite entries
/// or throw (std::domain_error for domain violations, std::invalid_argument
/// for order mismatches, std::overflow_error when a result is not finite).
class Jet {
public:
    Jet() : order_(0) { d_.fill(0.0); }

    /// Jet of the constant function v: [v, 0, ..., 0].
    static Jet constant(double v, int order);

    /// Jet of the identity function at x0: [x0, 1, 0, ..., 0].
    static Jet variable(double x0, int order);

    /// Jet with prescribed derivative values; order = derivs.size() - 1.
    static Jet from_values(std::span<const double> derivs);

    int order() const { return order_; }
    double value() const { return d_[0]; }

    double operator[](int i) const { return d_[static_cast<std::size_t>(i)]; }
    double& operator[](int i) { return d_[static_cast<std::size_t>(i)]; }

    std::span<const double> values() const {
        return {d_.data(), static_cast<std::size_t>(order_) + 1};
    }

private:
    std::array<double, kMaxJetOrder + 1> d_;
    int order_;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);  // binomial convolution
Jet operator*(const Jet& a, double s);
Jet operator*(double s, const Jet& a);
Jet operator/(const Jet& a, const Jet& b);  // b.value() != 0

/// exp o f from the jet of f, via (exp f)' = f' * exp f.
Jet exp(const Jet& a);

/// ln o f from the jet of f; requires a.value() > 0.
Jet log(const Jet& a);

/// ln|f|; requires a.value() != 0. Entries of index >= 1 agree with log().
Jet log_abs(const Jet& a);

/// f^n for integer n >= 0 (iterated product; n = 0 gives the constant 1).
Jet pow_i(const Jet& a, int n);

} // namespace leibniz
