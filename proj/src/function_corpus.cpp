#include "leibniz/function_corpus.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "leibniz/rng.hpp"

namespace leibniz {

namespace {

constexpr double kSampleWindow = 8.0;  // clamp for unbounded intervals

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

} // namespace

double ScalarMap::operator()(double x) const {
    if (!domain.contains(x))
        throw std::domain_error(name + ": argument " + std::to_string(x) + " outside domain");
    return eval(x);
}

FunctionSpec::FunctionSpec(std::string name, DomainSet domain,
                           std::function<Jet(double, int)> jet,
                           std::function<double(double, int)> exact_derivs,
                           std::vector<double> zero_hints)
    : name_(std::move(name)),
      domain_(std::move(domain)),
      jet_(std::move(jet)),
      exact_(std::move(exact_derivs)),
      zero_hints_(std::move(zero_hints)) {
    if (!jet_) throw std::invalid_argument("FunctionSpec requires a jet evaluator");
}

Jet FunctionSpec::jet_at(double x, int order) const {
    if (order < 0 || order > kMaxJetOrder)
        throw std::invalid_argument(name_ + ": jet order out of range");
    if (!domain_.contains(x))
        throw std::domain_error(name_ + ": point " + std::to_string(x) + " outside domain");
    return jet_(x, order);
}

double FunctionSpec::exact_derivative(double x, int i) const {
    if (!exact_) throw std::logic_error(name_ + ": no exact derivative oracle");
    return exact_(x, i);
}

FunctionSpec prescribe_jet(double x0, std::span<const double> v) {
    if (v.empty() || v.size() > static_cast<std::size_t>(kMaxJetOrder) + 1)
        throw std::invalid_argument("prescribe_jet: need 1.." +
                                    std::to_string(kMaxJetOrder + 1) + " values");
    std::vector<double> coeffs(v.begin(), v.end());
    auto deriv = [coeffs, x0](double x, int j) {
        // p^(j)(x) = sum_{i >= j} v[i] (x-x0)^{i-j} / (i-j)!
        double acc = 0.0;
        for (std::size_t i = static_cast<std::size_t>(j); i < coeffs.size(); ++i) {
            acc += coeffs[i] * std::pow(x - x0, static_cast<double>(i) - j) /
                   factorial(static_cast<int>(i) - j);
        }
        return acc;
    };
    auto jet = [deriv](double x, int k) {
        Jet j = Jet::constant(0.0, k);
        for (int i = 0; i <= k; ++i) j[i] = deriv(x, i);
        return j;
    };
    return FunctionSpec("prescribed_jet", DomainSet::reals(), jet, deriv);
}

std::vector<double> sample_points(const DomainSet& domain, int n, std::uint64_t seed,
                                  double margin, std::span<const double> avoid) {
    if (n < 1) throw std::invalid_argument("sample_points: n must be >= 1");
    if (margin < 0) throw std::invalid_argument("sample_points: margin must be >= 0");

    // feasible segments after clamping and margin shrink
    std::vector<Interval> feasible;
    double total = 0.0;
    for (const auto& p : domain.intervals()) {
        double lo = std::max(p.lo, -kSampleWindow);
        double hi = std::min(p.hi, kSampleWindow);
        lo += margin;
        hi -= margin;
        if (lo < hi) {
            feasible.push_back({lo, hi});
            total += hi - lo;
        }
    }
    if (feasible.empty() || total <= 0.0)
        throw std::runtime_error("sample_points: margin leaves no feasible region");

    SplitMix64 rng(seed);
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n));
    const int max_attempts = 10000 * n;
    int attempts = 0;
    while (static_cast<int>(out.size()) < n) {
        if (++attempts > max_attempts)
            throw std::runtime_error("sample_points: could not satisfy avoid/margin constraints");
        double t = rng.uniform01() * total;
        double x = feasible.back().hi;
        for (const auto& seg : feasible) {
            if (t <= seg.length()) {
                x = seg.lo + t;
                break;
            }
            t -= seg.length();
        }
        bool ok = true;
        for (double a : avoid) {
            if (std::abs(x - a) < margin) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(x);
    }
    return out;
}

// --- combinators -----------------------------------------------------------

FunctionSpec product(const FunctionSpec& f, const FunctionSpec& g) {
    std::vector<double> zeros = f.zero_hints();
    zeros.insert(zeros.end(), g.zero_hints().begin(), g.zero_hints().end());
    auto jet = [f, g](double x, int k) { return f.jet_at(x, k) * g.jet_at(x, k); };
    return FunctionSpec("(" + f.name() + "*" + g.name() + ")",
                        f.domain().intersect(g.domain()), jet, {}, std::move(zeros));
}

FunctionSpec sum(const FunctionSpec& f, const FunctionSpec& g) {
    auto jet = [f, g](double x, int k) { return f.jet_at(x, k) + g.jet_at(x, k); };
    return FunctionSpec("(" + f.name() + "+" + g.name() + ")",
                        f.domain().intersect(g.domain()), jet);
}

FunctionSpec scale(const FunctionSpec& f, double s) {
    std::vector<double> zeros = s != 0.0 ? f.zero_hints() : std::vector<double>{};
    auto jet = [f, s](double x, int k) { return f.jet_at(x, k) * s; };
    return FunctionSpec(std::to_string(s) + "*" + f.name(), f.domain(), jet, {},
                        std::move(zeros));
}

FunctionSpec exp_of(const FunctionSpec& f) {
    auto jet = [f](double x, int k) { return exp(f.jet_at(x, k)); };
    return FunctionSpec("exp(" + f.name() + ")", f.domain(), jet);
}

FunctionSpec power_of(const FunctionSpec& f, int n) {
    if (n < 0) throw std::invalid_argument("power_of: n must be >= 0");
    std::vector<double> zeros = n > 0 ? f.zero_hints() : std::vector<double>{};
    auto jet = [f, n](double x, int k) { return pow_i(f.jet_at(x, k), n); };
    return FunctionSpec(f.name() + "^" + std::to_string(n), f.domain(), jet, {},
                        std::move(zeros));
}

FunctionSpec shift_of(const FunctionSpec& f, double h) {
    std::vector<double> zeros;
    for (double z : f.zero_hints()) zeros.push_back(z - h);
    auto jet = [f, h](double x, int k) { return f.jet_at(x + h, k); };
    return FunctionSpec(f.name() + "(.+" + std::to_string(h) + ")", f.domain().shifted(h),
                        jet, {}, std::move(zeros));
}

FunctionSpec compose_scalar(const ScalarMap& d, const FunctionSpec& f) {
    auto jet = [d, f](double x, int k) {
        if (k != 0)
            throw std::invalid_argument("compose_scalar: only order-0 jets are available");
        double inner = f.jet_at(x, 0).value();
        return Jet::constant(d(inner), 0);
    };
    return FunctionSpec(d.name + "(" + f.name() + ")", f.domain(), jet);
}

FunctionSpec plateau_bump(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("plateau_bump: lo < hi required");
    // ramp(t) = exp(-1/t) for t > 0, else 0; all derivatives vanish at t = 0,
    // so the junctions are C^infinity. Jets of the ramp come from jet
    // arithmetic on exp(-1/t).
    auto ramp_jet = [](double t, int k) {
        if (t <= 0.0) return Jet::constant(0.0, k);
        Jet tj = Jet::variable(t, k);
        return exp(-(Jet::constant(1.0, k) / tj));
    };
    auto jet = [ramp_jet, lo, hi](double x, int k) {
        return ramp_jet(x - hi, k) + ramp_jet(lo - x, k);
    };
    return FunctionSpec("plateau_bump", DomainSet::reals(), jet);
}

// --- built-in corpus --------------------------------------------------------

namespace {

FunctionSpec make_constant(const std::string& name, double c) {
    auto jet = [c](double x, int k) {
        (void)x;
        return Jet::constant(c, k);
    };
    auto deriv = [c](double, int i) { return i == 0 ? c : 0.0; };
    std::vector<double> zeros = c == 0.0 ? std::vector<double>{0.0} : std::vector<double>{};
    return FunctionSpec(name, DomainSet::reals(), jet, deriv, std::move(zeros));
}

// sin(x + shift0) + offset, with derivatives sin(x + shift0 + i*pi/2)
FunctionSpec make_sin(const std::string& name, double offset,
                      std::vector<double> zeros) {
    constexpr double half_pi = std::numbers::pi / 2.0;
    auto deriv = [offset](double x, int i) {
        double v = std::sin(x + i * half_pi);
        return i == 0 ? v + offset : v;
    };
    auto jet = [deriv](double x, int k) {
        Jet j = Jet::constant(0.0, k);
        for (int i = 0; i <= k; ++i) j[i] = deriv(x, i);
        return j;
    };
    return FunctionSpec(name, DomainSet::reals(), jet, deriv, std::move(zeros));
}

std::vector<FunctionSpec> make_corpus() {
    std::vector<FunctionSpec> fs;
    const double pi = std::numbers::pi;

    fs.push_back(make_constant("const_one", 1.0));
    fs.push_back(make_constant("const_minus_one", -1.0));
    fs.push_back(make_constant("const_four", 4.0));

    fs.emplace_back(
        "identity", DomainSet::reals(),
        [](double x, int k) { return Jet::variable(x, k); },
        [](double x, int i) { return i == 0 ? x : (i == 1 ? 1.0 : 0.0); },
        std::vector<double>{0.0});

    fs.emplace_back(
        "square", DomainSet::reals(),
        [](double x, int k) {
            Jet v = Jet::variable(x, k);
            return v * v;
        },
        [](double x, int i) {
            switch (i) {
                case 0: return x * x;
                case 1: return 2.0 * x;
                case 2: return 2.0;
                default: return 0.0;
            }
        },
        std::vector<double>{0.0});

    fs.emplace_back(
        "cube", DomainSet::reals(),
        [](double x, int k) { return pow_i(Jet::variable(x, k), 3); },
        [](double x, int i) {
            switch (i) {
                case 0: return x * x * x;
                case 1: return 3.0 * x * x;
                case 2: return 6.0 * x;
                case 3: return 6.0;
                default: return 0.0;
            }
        },
        std::vector<double>{0.0});

    fs.emplace_back(
        "square_minus_one", DomainSet::reals(),
        [](double x, int k) {
            Jet v = Jet::variable(x, k);
            return v * v - Jet::constant(1.0, k);
        },
        [](double x, int i) {
            switch (i) {
                case 0: return x * x - 1.0;
                case 1: return 2.0 * x;
                case 2: return 2.0;
                default: return 0.0;
            }
        },
        std::vector<double>{-1.0, 1.0});

    fs.emplace_back(
        "exp", DomainSet::reals(),
        [](double x, int k) { return exp(Jet::variable(x, k)); },
        [](double x, int i) {
            (void)i;
            return std::exp(x);
        });

    fs.emplace_back(
        "exp_scaled", DomainSet::reals(),
        [](double x, int k) { return exp(Jet::variable(x, k) * 0.7); },
        [](double x, int i) { return std::pow(0.7, i) * std::exp(0.7 * x); });

    fs.push_back(make_sin("sin", 0.0, {-2 * pi, -pi, 0.0, pi, 2 * pi}));
    fs.push_back(make_sin("two_plus_sin", 2.0, {}));  // range [1, 3]

    // 1/(1+x^2); closed-form derivatives via theta = arccot(x):
    // f^(n)(x) = (-1)^n n! sin^(n+1)(theta) sin((n+1) theta)
    fs.emplace_back(
        "runge", DomainSet::reals(),
        [](double x, int k) {
            Jet v = Jet::variable(x, k);
            return Jet::constant(1.0, k) / (Jet::constant(1.0, k) + v * v);
        },
        [](double x, int i) {
            double theta = std::atan2(1.0, x);
            double sign = i % 2 == 0 ? 1.0 : -1.0;
            return sign * factorial(i) * std::pow(std::sin(theta), i + 1) *
                   std::sin((i + 1) * theta);
        });

    // 1/x on a split domain, exercising unions of intervals
    fs.emplace_back(
        "reciprocal", DomainSet::of({{-kInf, 0.0}, {0.0, kInf}}),
        [](double x, int k) {
            return Jet::constant(1.0, k) / Jet::variable(x, k);
        },
        [](double x, int i) {
            double sign = i % 2 == 0 ? 1.0 : -1.0;
            return sign * factorial(i) * std::pow(x, -(i + 1.0));
        });

    fs.emplace_back(
        "neg_dome", DomainSet::reals(),  // -2 - x^2, range (-inf, -2]
        [](double x, int k) {
            Jet v = Jet::variable(x, k);
            return -(Jet::constant(2.0, k) + v * v);
        },
        [](double x, int i) {
            switch (i) {
                case 0: return -2.0 - x * x;
                case 1: return -2.0 * x;
                case 2: return -2.0;
                default: return 0.0;
            }
        });

    fs.emplace_back(
        "three_plus_square", DomainSet::reals(),  // range [3, inf), stays above e
        [](double x, int k) {
            Jet v = Jet::variable(x, k);
            return Jet::constant(3.0, k) + v * v;
        },
        [](double x, int i) {
            switch (i) {
                case 0: return 3.0 + x * x;
                case 1: return 2.0 * x;
                case 2: return 2.0;
                default: return 0.0;
            }
        });

    return fs;
}

} // namespace

const std::vector<FunctionSpec>& builtin_corpus() {
    static const std::vector<FunctionSpec> corpus = make_corpus();
    return corpus;
}

const FunctionSpec& corpus_lookup(std::string_view name) {
    for (const auto& f : builtin_corpus())
        if (f.name() == name) return f;
    throw std::invalid_argument("unknown corpus function: " + std::string(name));
}

} // namespace leibniz
