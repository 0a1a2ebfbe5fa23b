#include "leibniz/operators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <initializer_list>
#include <sstream>
#include <stdexcept>

namespace leibniz {

namespace {

double abs_max(std::initializer_list<double> terms) {
    double m = 0.0;
    for (double t : terms) m = std::max(m, std::abs(t));
    return m;
}

std::string coeff_list(std::initializer_list<const CoeffFn*> cs) {
    std::ostringstream os;
    bool first = true;
    for (const CoeffFn* c : cs) {
        if (!first) os << ",";
        os << c->label();
        first = false;
    }
    return os.str();
}

} // namespace

CoeffFn CoeffFn::constant(double v) {
    CoeffFn c;
    c.fn_ = [v](double) { return v; };
    std::ostringstream os;
    os << v;
    c.label_ = os.str();
    c.constant_ = true;
    c.value_ = v;
    return c;
}

CoeffFn CoeffFn::from_callable(std::string label, std::function<double(double)> fn) {
    if (!fn) throw std::invalid_argument("CoeffFn requires a callable");
    CoeffFn c;
    c.fn_ = std::move(fn);
    c.label_ = std::move(label);
    return c;
}

Operator::Operator(std::string name, int jet_order,
                   std::function<double(double, const Jet&)> eval)
    : name_(std::move(name)), order_(jet_order), eval_(std::move(eval)) {
    if (order_ < 0 || order_ > kMaxJetOrder)
        throw std::invalid_argument("operator jet order out of range");
    if (!eval_) throw std::invalid_argument("operator requires an evaluator");
}

double Operator::apply(const FunctionSpec& f, double x) const {
    return eval_(x, f.jet_at(x, order_));
}

double xlog_abs(double t) { return t == 0.0 ? 0.0 : t * std::log(std::abs(t)); }

double xlog_abs2(double t) {
    if (t == 0.0) return 0.0;
    double l = std::log(std::abs(t));
    return t * l * l;
}

Operator characterized(CoeffFn c0, CoeffFn c1, CoeffFn c2, CoeffFn d00, int k) {
    if (k < 0 || k > 2) throw std::invalid_argument("characterized: k must be 0, 1 or 2");
    if (k == 0 && !(c1.is_zero_constant() && c2.is_zero_constant()))
        throw std::invalid_argument("characterized: k=0 requires c1 = c2 = 0");
    if (k == 1 && !c2.is_zero_constant())
        throw std::invalid_argument("characterized: k=1 requires c2 = 0");

    std::string name = "characterized(" + coeff_list({&c0, &c1, &c2, &d00}) +
                       ";k=" + std::to_string(k) + ")";
    auto eval = [c0, c1, c2, d00, k](double x, const Jet& j) {
        double v = c0(x) * xlog_abs(j.value()) + d00(x) * xlog_abs2(j.value());
        if (k >= 1) v += c1(x) * j[1];
        if (k >= 2) v += c2(x) * j[2];
        return v;
    };
    return Operator(std::move(name), k, eval);
}

Operator log_polynomial(std::vector<CoeffFn> c, std::vector<std::vector<CoeffFn>> d) {
    if (c.empty() || c.size() > static_cast<std::size_t>(kMaxJetOrder) + 1)
        throw std::invalid_argument("log_polynomial: c must have length 1..k_max+1");
    if (d.size() != c.size())
        throw std::invalid_argument("log_polynomial: d must be (k+1) x (k+1)");
    for (const auto& row : d)
        if (row.size() != c.size())
            throw std::invalid_argument("log_polynomial: d must be (k+1) x (k+1)");

    int k = static_cast<int>(c.size()) - 1;
    auto eval = [c, d, k](double x, const Jet& j) {
        if (!(j.value() > 0.0))
            throw std::domain_error("log_polynomial operator requires a positive argument");
        Jet lf = log(j);
        double acc = 0.0;
        for (int i = 0; i <= k; ++i) acc += c[static_cast<std::size_t>(i)](x) * lf[i];
        for (int i = 0; i <= k; ++i)
            for (int l = 0; l <= k; ++l)
                acc += d[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)](x) *
                       lf[i] * lf[l];
        return j.value() * acc;
    };
    return Operator("log_polynomial(k=" + std::to_string(k) + ")", k, eval);
}

Operator linear_differential(CoeffFn c1, CoeffFn c2) {
    std::string name = "linear(" + coeff_list({&c1, &c2}) + ")";
    auto eval = [c1, c2](double x, const Jet& j) { return c1(x) * j[1] + c2(x) * j[2]; };
    return Operator(std::move(name), 2, eval);
}

Operator second_derivative_only(CoeffFn c2) {
    std::string name = "second_only(" + c2.label() + ")";
    auto eval = [c2](double x, const Jet& j) { return c2(x) * j[2]; };
    return Operator(std::move(name), 2, eval);
}

Operator composition(ScalarMap d) {
    std::string name = "composition(" + d.name + ")";
    auto eval = [d](double, const Jet& j) { return d(j.value()); };
    return Operator(std::move(name), 0, eval);
}

Operator black_box(std::string name, int jet_order,
                   std::function<double(double, const Jet&)> eval) {
    return Operator(std::move(name), jet_order, std::move(eval));
}

KMPair log_square_pair() {
    auto zero = CoeffFn::constant(0.0);
    auto one = CoeffFn::constant(1.0);
    return {characterized(zero, zero, zero, one, 2),
            characterized(one, zero, zero, zero, 2)};
}

KMPair km_corollary_pair(double c, double b) {
    // T(fg) - T(f)g - fT(g) contributes (c^2/2) * 2 f'g' = c^2 f'g', so the
    // 2 A(f) A(g) term matches exactly when A carries c/sqrt(2).
    auto T = linear_differential(CoeffFn::constant(b), CoeffFn::constant(0.5 * c * c));
    auto A = linear_differential(CoeffFn::constant(c / std::sqrt(2.0)),
                                 CoeffFn::constant(0.0));
    return {T, A};
}

Residual residual_id2(const Operator& D, const FunctionSpec& f, const FunctionSpec& g,
                      const FunctionSpec& h, double x) {
    FunctionSpec fg = product(f, g);
    FunctionSpec fh = product(f, h);
    FunctionSpec gh = product(g, h);
    FunctionSpec fgh = product(fg, h);

    double F = f.value_at(x);
    double G = g.value_at(x);
    double H = h.value_at(x);

    double t0 = D.apply(fgh, x);
    double t1 = -F * D.apply(gh, x);
    double t2 = -G * D.apply(fh, x);
    double t3 = -H * D.apply(fg, x);
    double t4 = F * G * D.apply(h, x);
    double t5 = F * H * D.apply(g, x);
    double t6 = G * H * D.apply(f, x);

    return {t0 + t1 + t2 + t3 + t4 + t5 + t6, abs_max({t0, t1, t2, t3, t4, t5, t6})};
}

Residual residual_powers(const Operator& D, const FunctionSpec& f, double x) {
    FunctionSpec f2 = power_of(f, 2);
    FunctionSpec f3 = power_of(f, 3);
    double F = f.value_at(x);

    double t0 = D.apply(f3, x);
    double t1 = -3.0 * F * D.apply(f2, x);
    double t2 = 3.0 * F * F * D.apply(f, x);
    return {t0 + t1 + t2, abs_max({t0, t1, t2})};
}

Residual residual_leibniz(const Operator& T, const FunctionSpec& f, const FunctionSpec& g,
                          double x) {
    FunctionSpec fg = product(f, g);
    double F = f.value_at(x);
    double G = g.value_at(x);

    double t0 = T.apply(fg, x);
    double t1 = -F * T.apply(g, x);
    double t2 = -G * T.apply(f, x);
    return {t0 + t1 + t2, abs_max({t0, t1, t2})};
}

Residual residual_second_leibniz(const KMPair& pair, const FunctionSpec& f,
                                 const FunctionSpec& g, double x) {
    FunctionSpec fg = product(f, g);
    double F = f.value_at(x);
    double G = g.value_at(x);

    double t0 = pair.T.apply(fg, x);
    double t1 = -G * pair.T.apply(f, x);
    double t2 = -F * pair.T.apply(g, x);
    double t3 = -2.0 * pair.A.apply(f, x) * pair.A.apply(g, x);
    return {t0 + t1 + t2 + t3, abs_max({t0, t1, t2, t3})};
}

Residual residual_eq_rem2(const KMPair& pair, const FunctionSpec& f, const FunctionSpec& g,
                          const FunctionSpec& h, double x) {
    Residual lhs = residual_id2(pair.T, f, g, h, x);

    FunctionSpec fg = product(f, g);
    double F = f.value_at(x);
    double G = g.value_at(x);
    double a_h = pair.A.apply(h, x);
    double a_fg = pair.A.apply(fg, x);
    double a_f = pair.A.apply(f, x);
    double a_g = pair.A.apply(g, x);
    double rhs = 2.0 * a_h * (a_fg - F * a_g - G * a_f);

    return {lhs.value - rhs, std::max(lhs.scale, std::abs(rhs))};
}

double difference_apply(const Operator& T, std::span<const FunctionSpec> hs,
                        const FunctionSpec& f, double x) {
    if (hs.size() > 20) throw std::invalid_argument("difference_apply: too many increments");
    const int n = static_cast<int>(hs.size());
    double acc = 0.0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        FunctionSpec arg = f;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) arg = sum(arg, hs[static_cast<std::size_t>(i)]);
        int sign = (n - std::popcount(mask)) % 2 == 0 ? 1 : -1;
        acc += sign * T.apply(arg, x);
    }
    return acc;
}

double shift_commutator(const Operator& D, double shift, const FunctionSpec& f, double x) {
    return D.apply(shift_of(f, shift), x) - D.apply(f, x + shift);
}

double km_nondegeneracy_det(double a, double b) {
    if (a == 0.0 || b == 0.0)
        throw std::domain_error("km_nondegeneracy_det requires nonzero arguments");
    return a * b * (std::log(std::abs(b)) - std::log(std::abs(a)));
}

LocalizationReport localization_check(const Operator& D, const FunctionSpec& f1,
                                      const FunctionSpec& f2, Interval J,
                                      std::span<const double> points) {
    LocalizationReport rep;
    rep.inputs_agree = true;
    for (double x : points) {
        if (!J.contains(x))
            throw std::domain_error("localization_check: sample point outside J");
        Jet j1 = f1.jet_at(x, D.jet_order());
        Jet j2 = f2.jet_at(x, D.jet_order());
        for (int i = 0; i <= D.jet_order(); ++i)
            rep.max_input_mismatch = std::max(rep.max_input_mismatch, std::abs(j1[i] - j2[i]));
    }
    if (rep.max_input_mismatch > 0.0) {
        rep.inputs_agree = false;
        return rep;  // precondition failure: the residual is not meaningful
    }
    for (double x : points)
        rep.max_residual = std::max(rep.max_residual,
                                    std::abs(D.apply(f1, x) - D.apply(f2, x)));
    return rep;
}

} // namespace leibniz
