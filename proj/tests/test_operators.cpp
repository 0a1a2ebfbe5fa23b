#include "doctest.h"

#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "leibniz/counterexample.hpp"
#include "leibniz/operators.hpp"
#include "leibniz/rng.hpp"

using namespace leibniz;

namespace {

const double kE = std::numbers::e;

Operator char_op(double c0, double c1, double c2, double d00, int k = 2) {
    return characterized(CoeffFn::constant(c0), CoeffFn::constant(c1),
                         CoeffFn::constant(c2), CoeffFn::constant(d00), k);
}

FunctionSpec const_fn(double c) {
    return prescribe_jet(0.0, std::vector<double>{c, 0.0, 0.0});
}

bool scaled_small(const Residual& r, double tol) {
    return std::abs(r.value) <= tol * std::max(1.0, r.scale);
}

} // namespace

TEST_CASE("characterized family evaluation") {
    const FunctionSpec& cube = corpus_lookup("cube");
    CHECK(char_op(0, 0, 1, 0).apply(cube, 1.0) == doctest::Approx(6.0));

    // c0 term on the constant e: e * ln(e) = e
    CHECK(char_op(1, 0, 0, 0).apply(const_fn(kE), 0.3) == doctest::Approx(kE));

    // D(1) = D(-1) = 0, exactly, for every family
    std::vector<Operator> ops = {char_op(1, 2, 3, 4),
                                 char_op(0.5, 0, 0, 2, 0),
                                 char_op(1, -1, 0, 0.5, 1),
                                 linear_differential(CoeffFn::constant(2), CoeffFn::constant(3)),
                                 second_derivative_only(CoeffFn::constant(5))};
    for (const auto& op : ops) {
        CHECK(op.apply(corpus_lookup("const_one"), 0.7) == 0.0);
        CHECK(op.apply(corpus_lookup("const_minus_one"), 0.7) == 0.0);
    }

    // the zero convention applies at an exact zero of the argument
    CHECK(char_op(1, 0, 0, 1).apply(corpus_lookup("identity"), 0.0) == 0.0);
}

TEST_CASE("order degeneration is enforced at construction") {
    CHECK_THROWS_AS(char_op(1, 1, 0, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(char_op(1, 0, 1, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(char_op(1, 0, 1, 0, 1), std::invalid_argument);
    CHECK_NOTHROW(char_op(1, 1, 1, 1, 2));
    CHECK_NOTHROW(char_op(1, 1, 0, 1, 1));
    CHECK_NOTHROW(char_op(1, 0, 0, 1, 0));
    CHECK_THROWS_AS(char_op(1, 0, 0, 1, 3), std::invalid_argument);
}

TEST_CASE("log_polynomial family") {
    std::vector<CoeffFn> c = {CoeffFn::constant(1), CoeffFn::constant(0),
                              CoeffFn::constant(0)};
    std::vector<std::vector<CoeffFn>> d(3, std::vector<CoeffFn>(3, CoeffFn::constant(0)));
    Operator op = log_polynomial(c, d);

    // with c = (1,0,0) and d = 0 this is f ln f on positive arguments
    CHECK(op.apply(const_fn(kE), 0.2) == doctest::Approx(kE));
    CHECK(op.apply(corpus_lookup("const_one"), 0.2) == 0.0);
    CHECK_THROWS_AS(op.apply(corpus_lookup("const_minus_one"), 0.2), std::domain_error);

    CHECK_THROWS_AS(log_polynomial({}, {}), std::invalid_argument);
}

TEST_CASE("composition operator respects the outer domain") {
    ScalarMap half{"half", DomainSet::interval(0.0, kInf),
                   [](double t) { return 0.5 * t; }};
    Operator op = composition(half);
    CHECK(op.apply(corpus_lookup("const_four"), 1.0) == 2.0);
    CHECK_THROWS_AS(op.apply(corpus_lookup("const_minus_one"), 1.0), std::domain_error);
}

TEST_CASE("trilinear identity residuals") {
    SplitMix64 rng(2024);
    const auto& corpus = builtin_corpus();

    Operator dd = second_derivative_only(CoeffFn::constant(1.0));
    for (int t = 0; t < 12; ++t) {
        // fresh random coefficients each round, alternating constant and
        // x-dependent ones
        double a = rng.uniform(-3, 3), b = rng.uniform(-3, 3), c = rng.uniform(-3, 3),
               e = rng.uniform(-3, 3);
        Operator mixed =
            t % 2 == 0 ? char_op(a, b, c, e)
                       : characterized(CoeffFn::from_callable(
                                           "a*sin", [a](double x) { return a * std::sin(x); }),
                                       CoeffFn::constant(b),
                                       CoeffFn::from_callable(
                                           "c*x", [c](double x) { return c * x; }),
                                       CoeffFn::constant(e), 2);
        const FunctionSpec& f = corpus[rng.next() % corpus.size()];
        const FunctionSpec& g = corpus[rng.next() % corpus.size()];
        const FunctionSpec& h = corpus[rng.next() % corpus.size()];
        DomainSet dom = f.domain().intersect(g.domain()).intersect(h.domain());
        std::vector<double> avoid = f.zero_hints();
        avoid.insert(avoid.end(), g.zero_hints().begin(), g.zero_hints().end());
        avoid.insert(avoid.end(), h.zero_hints().begin(), h.zero_hints().end());
        for (double x : sample_points(dom, 8, rng.next(), 1e-3, avoid)) {
            CHECK(scaled_small(residual_id2(dd, f, g, h, x), 1e-9));
            CHECK(scaled_small(residual_id2(mixed, f, g, h, x), 1e-9));
            // the trilinear form is the same expression path
            Residual r1 = residual_id2(mixed, f, g, h, x);
            Residual r2 = trilinear_form(mixed, f, g, h, x);
            CHECK(r1.value == r2.value);
        }
    }

    // the composition counterexample violates the identity at constant triples
    auto psi = std::make_shared<const PsiSolution>();
    ScalarMap d = build_d(psi);
    ViolationTriple v = find_violation_triple(d, 7, 1000, 1e-6);
    Operator comp = composition(d);
    Residual r = residual_id2(comp, const_fn(v.x), const_fn(v.y), const_fn(v.z), 0.0);
    CHECK(std::abs(r.value) > 1e-6);
    CHECK(r.value == doctest::Approx(v.residual).epsilon(1e-9));
}

TEST_CASE("diagonal identity residuals") {
    SplitMix64 rng(31);
    Operator mixed = char_op(-1, 0.5, 2, 0);
    // nonlinear family member: c f ln|f| + d f ln^2|f|
    Operator nonlinear = char_op(1.5, 0, 0, -0.5);

    for (const char* name : {"square", "exp", "two_plus_sin", "reciprocal"}) {
        const FunctionSpec& f = corpus_lookup(name);
        for (double x : sample_points(f.domain(), 8, rng.next(), 1e-3, f.zero_hints())) {
            Residual p = residual_powers(mixed, f, x);
            CHECK(scaled_small(p, 1e-9));
            CHECK(scaled_small(residual_powers(nonlinear, f, x), 1e-9));
            // agrees with the seven-term expression specialized to g = h = f
            Residual q = residual_id2(mixed, f, f, f, x);
            CHECK(std::abs(p.value - q.value) <= 1e-13 * std::max(1.0, p.scale));
        }
    }

    // composition counterexample satisfies the diagonal identity
    auto psi = std::make_shared<const PsiSolution>();
    Operator comp = composition(build_d(psi));
    const FunctionSpec& f = corpus_lookup("three_plus_square");
    for (double x : sample_points(f.domain(), 8, rng.next())) {
        CHECK(scaled_small(residual_powers(comp, f, x), 1e-9));
    }
}

TEST_CASE("Leibniz rule residuals") {
    SplitMix64 rng(32);
    const FunctionSpec& id = corpus_lookup("identity");

    Operator ddx = char_op(0, 1, 0, 0);
    Operator km_first = char_op(1.3, 0.8, 0, 0);  // c f ln|f| + d f'
    for (const char* fname : {"square", "exp", "sin"}) {
        for (const char* gname : {"cube", "two_plus_sin"}) {
            const FunctionSpec& f = corpus_lookup(fname);
            const FunctionSpec& g = corpus_lookup(gname);
            std::vector<double> avoid = f.zero_hints();
            avoid.insert(avoid.end(), g.zero_hints().begin(), g.zero_hints().end());
            for (double x : sample_points(f.domain(), 6, rng.next(), 1e-3, avoid)) {
                CHECK(scaled_small(residual_leibniz(ddx, f, g, x), 1e-9));
                CHECK(scaled_small(residual_leibniz(km_first, f, g, x), 1e-9));
            }
        }
    }

    // f'' breaks the Leibniz rule: residual is exactly 2 at f = g = x
    Operator dd = second_derivative_only(CoeffFn::constant(1.0));
    for (double x : {-1.5, 0.25, 3.0})
        CHECK(residual_leibniz(dd, id, id, x).value == 2.0);
}

TEST_CASE("second-order Leibniz rule residuals") {
    SplitMix64 rng(33);
    KMPair logs = log_square_pair();
    KMPair km = km_corollary_pair(1.3, 0.7);

    for (const char* fname : {"square", "exp", "sin", "reciprocal"}) {
        for (const char* gname : {"cube", "two_plus_sin", "runge"}) {
            const FunctionSpec& f = corpus_lookup(fname);
            const FunctionSpec& g = corpus_lookup(gname);
            DomainSet dom = f.domain().intersect(g.domain());
            std::vector<double> avoid = f.zero_hints();
            avoid.insert(avoid.end(), g.zero_hints().begin(), g.zero_hints().end());
            for (double x : sample_points(dom, 6, rng.next(), 1e-3, avoid)) {
                CHECK(scaled_small(residual_second_leibniz(logs, f, g, x), 1e-9));
                CHECK(scaled_small(residual_second_leibniz(km, f, g, x), 1e-9));
            }
        }
    }

    // (f'', A = 0) fails: residual 2 f' g' at f = g = x
    KMPair broken{second_derivative_only(CoeffFn::constant(1.0)),
                  linear_differential(CoeffFn::constant(0), CoeffFn::constant(0))};
    const FunctionSpec& id = corpus_lookup("identity");
    CHECK(residual_second_leibniz(broken, id, id, 1.0).value == 2.0);
}

TEST_CASE("eq_rem2: the symmetric seven-term form against the A-defect") {
    SplitMix64 rng(34);
    std::vector<KMPair> pairs = {log_square_pair(), km_corollary_pair(0.9, -0.4)};

    // a pair satisfying the second-order rule whose A is the plain value map:
    // T(f) = f ln|f| - 2 f with A(f) = f
    pairs.push_back({black_box("f*ln|f|-2f", 2,
                               [](double, const Jet& j) {
                                   return xlog_abs(j[0]) - 2.0 * j[0];
                               }),
                     black_box("value", 2, [](double, const Jet& j) { return j[0]; })});

    for (const auto& pair : pairs) {
        for (const char* fname : {"square", "exp"}) {
            for (const char* gname : {"cube", "two_plus_sin"}) {
                const FunctionSpec& f = corpus_lookup(fname);
                const FunctionSpec& g = corpus_lookup(gname);
                const FunctionSpec& h = corpus_lookup("exp_scaled");
                std::vector<double> avoid = f.zero_hints();
                avoid.insert(avoid.end(), g.zero_hints().begin(), g.zero_hints().end());
                for (double x : sample_points(f.domain(), 5, rng.next(), 1e-3, avoid)) {
                    // precondition: the pair satisfies the second-order rule here
                    CHECK(scaled_small(residual_second_leibniz(pair, f, g, x), 1e-9));
                    CHECK(scaled_small(residual_eq_rem2(pair, f, g, h, x), 1e-9));
                }
            }
        }
    }
}

TEST_CASE("difference operators") {
    const FunctionSpec& id = corpus_lookup("identity");
    const FunctionSpec& sq = corpus_lookup("square");
    FunctionSpec zero = const_fn(0.0);

    Operator linear = linear_differential(CoeffFn::constant(2), CoeffFn::constant(-1));
    // n = 1: T(f+h) - T(f)
    std::vector<FunctionSpec> one = {sq};
    double d1 = difference_apply(linear, one, id, 1.5);
    CHECK(d1 == doctest::Approx(linear.apply(sum(id, sq), 1.5) - linear.apply(id, 1.5)));

    // second difference of a linear operator vanishes
    std::vector<FunctionSpec> two = {sq, corpus_lookup("exp")};
    CHECK(difference_apply(linear, two, id, 0.5) == doctest::Approx(0.0).epsilon(1e-12));

    // triple difference of the pointwise cube at 0 is 3! g^3
    Operator cube_op =
        black_box("cube", 0, [](double, const Jet& j) { return j[0] * j[0] * j[0]; });
    std::vector<FunctionSpec> ggg = {sq, sq, sq};
    for (double x : {0.5, 1.25, -2.0}) {
        double g3 = std::pow(x * x, 3.0);
        CHECK(difference_apply(cube_op, ggg, zero, x) ==
              doctest::Approx(6.0 * g3).epsilon(1e-12));
    }
}

TEST_CASE("shift commutators") {
    Operator const_coeff = char_op(1, 2, 3, 4);
    const FunctionSpec& sq = corpus_lookup("square");
    SplitMix64 rng(35);
    for (int t = 0; t < 16; ++t) {
        double shift = rng.uniform(-2, 2);
        double x = rng.uniform(-3, 3);
        double c = shift_commutator(const_coeff, shift, corpus_lookup("exp"), x);
        CHECK(std::abs(c) <= 1e-9 * std::max(1.0, std::abs(const_coeff.apply(corpus_lookup("exp"), x + shift))));
    }

    // x-dependent coefficient: commutator is x f'(x+1) - (x+1) f'(x+1) = -2(x+1)
    Operator varying = characterized(CoeffFn::constant(0),
                                     CoeffFn::from_callable("x", [](double x) { return x; }),
                                     CoeffFn::constant(0), CoeffFn::constant(0), 2);
    for (double x : {0.0, 1.0, -2.5}) {
        CHECK(shift_commutator(varying, 1.0, sq, x) == doctest::Approx(-2.0 * (x + 1.0)));
    }
    CHECK(shift_commutator(varying, 0.0, sq, 0.7) == 0.0);
}

TEST_CASE("non-degeneracy determinant") {
    CHECK(km_nondegeneracy_det(2, 4) == doctest::Approx(8.0 * std::log(2.0)));
    CHECK(km_nondegeneracy_det(1.7, 1.7) == 0.0);
    CHECK(km_nondegeneracy_det(1, kE) == doctest::Approx(kE));
    CHECK_THROWS_AS(km_nondegeneracy_det(0, 1), std::domain_error);
}

TEST_CASE("localization") {
    Operator op = char_op(1, 2, 3, 4);
    Interval J{-0.5, 0.5};
    const FunctionSpec& sq = corpus_lookup("square");
    FunctionSpec modified = sum(sq, plateau_bump(J.lo, J.hi));
    auto pts = sample_points(DomainSet::interval(J.lo, J.hi), 8, 3, 1e-3,
                             sq.zero_hints());

    LocalizationReport rep = localization_check(op, sq, modified, J, pts);
    CHECK(rep.inputs_agree);
    CHECK(rep.max_residual == 0.0);

    LocalizationReport same = localization_check(op, sq, sq, J, pts);
    CHECK(same.inputs_agree);
    CHECK(same.max_residual == 0.0);

    // differing inputs are reported as a precondition failure
    FunctionSpec other = sum(sq, corpus_lookup("const_one"));
    LocalizationReport bad = localization_check(op, sq, other, J, pts);
    CHECK(!bad.inputs_agree);
    CHECK(bad.max_input_mismatch == 1.0);

    std::vector<double> outside = {2.0};
    CHECK_THROWS_AS(localization_check(op, sq, sq, J, outside), std::domain_error);
}

TEST_CASE("linearity of the differential family") {
    Operator lin = linear_differential(CoeffFn::from_callable("sin", [](double x) {
                                           return std::sin(x);
                                       }),
                                       CoeffFn::constant(2.0));
    const FunctionSpec& f = corpus_lookup("exp");
    const FunctionSpec& g = corpus_lookup("sin");
    SplitMix64 rng(36);
    for (int t = 0; t < 8; ++t) {
        double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2);
        double x = rng.uniform(-3, 3);
        FunctionSpec combo = sum(scale(f, a), scale(g, b));
        double lhs = lin.apply(combo, x);
        double rhs = a * lin.apply(f, x) + b * lin.apply(g, x);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11).scale(1.0));
    }
}
