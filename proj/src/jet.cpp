#include "leibniz/jet.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace leibniz {

namespace {

constexpr auto kBinomial = [] {
    std::array<std::array<double, kMaxJetOrder + 1>, kMaxJetOrder + 1> b{};
    for (int n = 0; n <= kMaxJetOrder; ++n) {
        b[n][0] = 1.0;
        for (int k = 1; k <= n; ++k)
            b[n][k] = b[n - 1][k - 1] + (k <= n - 1 ? b[n - 1][k] : 0.0);
    }
    return b;
}();

void check_order(int order) {
    if (order < 0 || order > kMaxJetOrder)
        throw std::invalid_argument("jet order must be in [0, " +
                                    std::to_string(kMaxJetOrder) + "], got " +
                                    std::to_string(order));
}

void check_same_order(const Jet& a, const Jet& b) {
    if (a.order() != b.order())
        throw std::invalid_argument("jet order mismatch: " + std::to_string(a.order()) +
                                    " vs " + std::to_string(b.order()));
}

Jet checked(Jet j, const char* op) {
    for (int i = 0; i <= j.order(); ++i)
        if (!std::isfinite(j[i]))
            throw std::overflow_error(std::string("non-finite jet entry from ") + op);
    return j;
}

} // namespace

Jet Jet::constant(double v, int order) {
    check_order(order);
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite jet value");
    Jet j;
    j.order_ = order;
    j.d_[0] = v;
    return j;
}

Jet Jet::variable(double x0, int order) {
    Jet j = constant(x0, order);
    if (order >= 1) j.d_[1] = 1.0;
    return j;
}

Jet Jet::from_values(std::span<const double> derivs) {
    if (derivs.empty()) throw std::invalid_argument("empty derivative list");
    check_order(static_cast<int>(derivs.size()) - 1);
    Jet j;
    j.order_ = static_cast<int>(derivs.size()) - 1;
    for (std::size_t i = 0; i < derivs.size(); ++i) {
        if (!std::isfinite(derivs[i])) throw std::invalid_argument("non-finite jet value");
        j.d_[i] = derivs[i];
    }
    return j;
}

Jet operator+(const Jet& a, const Jet& b) {
    check_same_order(a, b);
    Jet r = a;
    for (int i = 0; i <= a.order(); ++i) r[i] += b[i];
    return checked(r, "add");
}

Jet operator-(const Jet& a, const Jet& b) {
    check_same_order(a, b);
    Jet r = a;
    for (int i = 0; i <= a.order(); ++i) r[i] -= b[i];
    return checked(r, "sub");
}

Jet operator-(const Jet& a) {
    Jet r = a;
    for (int i = 0; i <= a.order(); ++i) r[i] = -r[i];
    return r;
}

Jet operator*(const Jet& a, double s) {
    Jet r = a;
    for (int i = 0; i <= a.order(); ++i) r[i] *= s;
    return checked(r, "scale");
}

Jet operator*(double s, const Jet& a) { return a * s; }

Jet operator*(const Jet& a, const Jet& b) {
    check_same_order(a, b);
    Jet r = Jet::constant(0.0, a.order());
    for (int n = 0; n <= a.order(); ++n) {
        double acc = 0.0;
        for (int i = 0; i <= n; ++i) acc += kBinomial[n][i] * a[i] * b[n - i];
        r[n] = acc;
    }
    return checked(r, "mul");
}

Jet operator/(const Jet& a, const Jet& b) {
    check_same_order(a, b);
    if (b.value() == 0.0) throw std::domain_error("jet division by zero value entry");
    // invert the binomial convolution: q[n] from a[n] = sum C(n,i) q[i] b[n-i]
    Jet q = Jet::constant(0.0, a.order());
    for (int n = 0; n <= a.order(); ++n) {
        double acc = a[n];
        for (int i = 0; i < n; ++i) acc -= kBinomial[n][i] * q[i] * b[n - i];
        q[n] = acc / b.value();
    }
    return checked(q, "div");
}

Jet exp(const Jet& a) {
    Jet e = Jet::constant(0.0, a.order());
    double v = std::exp(a.value());
    if (!std::isfinite(v)) throw std::overflow_error("exp overflow in jet");
    e[0] = v;
    // e^(n) = d^(n-1)/dx^(n-1) (f' e) = sum_j C(n-1,j) f^(j+1) e^(n-1-j)
    for (int n = 1; n <= a.order(); ++n) {
        double acc = 0.0;
        for (int j = 0; j <= n - 1; ++j) acc += kBinomial[n - 1][j] * a[j + 1] * e[n - 1 - j];
        e[n] = acc;
    }
    return checked(e, "exp");
}

namespace {

// shared recurrence for log/log_abs: f L' = f' differentiated n-1 times
Jet log_impl(const Jet& a, double value_entry) {
    Jet l = Jet::constant(0.0, a.order());
    l[0] = value_entry;
    for (int n = 1; n <= a.order(); ++n) {
        double acc = a[n];
        for (int j = 1; j <= n - 1; ++j) acc -= kBinomial[n - 1][j] * a[j] * l[n - j];
        l[n] = acc / a.value();
    }
    return checked(l, "log");
}

} // namespace

Jet log(const Jet& a) {
    if (!(a.value() > 0.0)) throw std::domain_error("jet log requires positive value entry");
    return log_impl(a, std::log(a.value()));
}

Jet log_abs(const Jet& a) {
    if (a.value() == 0.0) throw std::domain_error("jet log_abs requires nonzero value entry");
    return log_impl(a, std::log(std::abs(a.value())));
}

Jet pow_i(const Jet& a, int n) {
    if (n < 0) throw std::invalid_argument("pow_i requires n >= 0");
    Jet r = Jet::constant(1.0, a.order());
    for (int i = 0; i < n; ++i) r = r * a;
    return r;
}

} // namespace leibniz
