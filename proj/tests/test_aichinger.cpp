#include "doctest.h"

#include <cmath>
#include <memory>
#include <stdexcept>
#include <vector>

#include "leibniz/aichinger.hpp"
#include "leibniz/counterexample.hpp"
#include "leibniz/rng.hpp"

using namespace leibniz;

namespace {

Operator char_op(double c0, double c1, double c2, double d00, int k = 2) {
    return characterized(CoeffFn::constant(c0), CoeffFn::constant(c1),
                         CoeffFn::constant(c2), CoeffFn::constant(d00), k);
}

} // namespace

TEST_CASE("exponential conjugation") {
    // D = c0 f ln|f| on the constant exp(t): P = c0 t
    Operator c0_only = char_op(2.5, 0, 0, 0);
    for (double t : {-1.0, 0.5, 2.0}) {
        FunctionSpec f = prescribe_jet(0.0, std::vector<double>{t, 0.0, 0.0});
        CHECK(conjugate_p(c0_only, f, 0.2) == doctest::Approx(2.5 * t));
    }

    // exp(0) = 1 and D(1) = 0 for any family member
    FunctionSpec zero = prescribe_jet(0.0, std::vector<double>{0.0, 0.0, 0.0});
    CHECK(conjugate_p(char_op(1, 2, 3, 4), zero, 0.0) == 0.0);

    // (e^x)''/e^x = 1
    Operator dd = second_derivative_only(CoeffFn::constant(1.0));
    CHECK(conjugate_p(dd, corpus_lookup("identity"), 1.3) == doctest::Approx(1.0));

    FunctionSpec big = prescribe_jet(0.0, std::vector<double>{400.0, 0.0, 0.0});
    CHECK_THROWS_AS(conjugate_p(dd, big, 0.0), std::overflow_error);
}

TEST_CASE("cube equation residual") {
    SymbolG sq(1, [](double, std::span<const double> v) { return v[0] * v[0]; });
    std::vector<double> one = {1.0};
    CHECK(cube_residual(sq, 0.0, one, one, one).value == 0.0);

    SymbolG cube(1, [](double, std::span<const double> v) { return v[0] * v[0] * v[0]; });
    CHECK(cube_residual(cube, 0.0, one, one, one).value == 6.0);

    // at the origin the equation evaluates to G(0)
    SymbolG affine(2, [](double, std::span<const double> v) { return 3.0 + v[0] + v[1]; });
    std::vector<double> z = {0.0, 0.0};
    CHECK(cube_residual(affine, 0.0, z, z, z).value == 3.0);

    std::vector<double> wrong = {1.0, 2.0};
    CHECK_THROWS_AS(cube_residual(sq, 0.0, one, wrong, one), std::invalid_argument);
}

TEST_CASE("quadratic fitting round trip") {
    SplitMix64 rng(71);
    std::vector<FitSample> samples;
    for (int i = 0; i < 40; ++i) {
        std::vector<double> v = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        double value = 2.0 * v[0] + 3.0 * v[0] * v[1];
        samples.emplace_back(std::move(v), value);
    }
    QuadraticModel m = fit_quadratic(samples, 2);
    CHECK(m.residual <= 1e-10);
    CHECK(m.constant == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(m.linear[0] == doctest::Approx(2.0));
    CHECK(m.linear[1] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(m.coeff(0, 1) == doctest::Approx(3.0));
    CHECK(m.coeff(1, 0) == doctest::Approx(3.0));
    CHECK(m.condition < 1e6);

    // a cubic shape cannot be fit by a quadratic
    std::vector<FitSample> cubic;
    SplitMix64 rng2(72);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> v = {rng2.uniform(-1, 1), rng2.uniform(-1, 1)};
        double norm = std::sqrt(v[0] * v[0] + v[1] * v[1]);
        cubic.emplace_back(std::move(v), norm * norm * norm);
    }
    CHECK(fit_quadratic(cubic, 2).residual > 0.01);

    // constant-zero data gives the zero model with zero residual
    std::vector<FitSample> zeros;
    SplitMix64 rng3(73);
    for (int i = 0; i < 20; ++i)
        zeros.emplace_back(std::vector<double>{rng3.uniform(-1, 1)}, 0.0);
    QuadraticModel zm = fit_quadratic(zeros, 1);
    CHECK(zm.residual == 0.0);
    CHECK(zm.constant == 0.0);
    CHECK(zm.linear[0] == 0.0);

    // error paths: too few samples, rank-deficient design
    std::vector<FitSample> few = {{{0.0, 0.0}, 1.0}};
    CHECK_THROWS_AS(fit_quadratic(few, 2), std::invalid_argument);
    std::vector<FitSample> degenerate;
    for (int i = 0; i < 10; ++i) degenerate.emplace_back(std::vector<double>{0.5}, 1.0);
    CHECK_THROWS_AS(fit_quadratic(degenerate, 1), std::runtime_error);
}

TEST_CASE("induced symbols of family operators are quadratic with G(0) = 0") {
    SplitMix64 rng(74);
    std::vector<Operator> ops = {char_op(1, 2, 3, 4), char_op(0.5, -1, 0, 2, 1),
                                 char_op(2, 0, 0, -1, 0),
                                 second_derivative_only(CoeffFn::constant(5))};
    for (const auto& op : ops) {
        SymbolG G = SymbolG::induced(op);
        int n = G.dim();
        std::vector<double> zero(static_cast<std::size_t>(n), 0.0);
        CHECK(G(0.4, zero) == 0.0);

        for (int t = 0; t < 64; ++t) {
            std::vector<double> v1(static_cast<std::size_t>(n)),
                v2(static_cast<std::size_t>(n)), v3(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                v1[static_cast<std::size_t>(i)] = rng.uniform(-1, 1);
                v2[static_cast<std::size_t>(i)] = rng.uniform(-1, 1);
                v3[static_cast<std::size_t>(i)] = rng.uniform(-1, 1);
            }
            Residual r = cube_residual(G, 0.4, v1, v2, v3);
            CHECK(std::abs(r.value) <= 1e-9 * std::max(1.0, r.scale));
        }

        std::vector<FitSample> samples;
        for (int s = 0; s < 50; ++s) {
            std::vector<double> v(static_cast<std::size_t>(n));
            for (auto& vi : v) vi = rng.uniform(-1, 1);
            double value = G(0.4, v);
            samples.emplace_back(std::move(v), value);
        }
        CHECK(fit_quadratic(samples, n).residual <= 1e-8);
    }
}

TEST_CASE("homogeneous quadratics have zero cube residual") {
    SplitMix64 rng(75);
    SymbolG G(2, [](double, std::span<const double> v) {
        return 1.5 * v[0] * v[0] - 0.7 * v[0] * v[1] + 0.2 * v[1] * v[1];
    });
    for (int t = 0; t < 64; ++t) {
        std::vector<double> v1 = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        std::vector<double> v2 = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        std::vector<double> v3 = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
        CHECK(std::abs(cube_residual(G, 0.0, v1, v2, v3).value) <= 1e-12);
    }
}

TEST_CASE("coefficient recovery round trip") {
    Operator op = char_op(1, 2, 3, 4);
    for (double x : {-1.0, 0.3, 2.0}) {
        RecoveredCoefficients r = recover_coefficients(op, x);
        CHECK(r.c0 == doctest::Approx(1.0).epsilon(1e-8));
        CHECK(r.c1 == doctest::Approx(2.0).epsilon(1e-8));
        CHECK(r.c2 == doctest::Approx(3.0).epsilon(1e-8));
        CHECK(r.d00 == doctest::Approx(4.0).epsilon(1e-8));
    }

    RecoveredCoefficients s = recover_coefficients(
        second_derivative_only(CoeffFn::constant(5)), 0.7);
    CHECK(s.c0 == doctest::Approx(0.0).epsilon(1e-8).scale(1.0));
    CHECK(s.c1 == doctest::Approx(0.0).epsilon(1e-8).scale(1.0));
    CHECK(s.c2 == doctest::Approx(5.0).epsilon(1e-8));
    CHECK(s.d00 == doctest::Approx(0.0).epsilon(1e-8).scale(1.0));

    // non-constant coefficients recover their pointwise values
    Operator varying = characterized(
        CoeffFn::from_callable("sin", [](double x) { return std::sin(x); }),
        CoeffFn::from_callable("x", [](double x) { return x; }), CoeffFn::constant(1),
        CoeffFn::constant(0), 2);
    for (double x : {0.5, 1.7}) {
        RecoveredCoefficients r = recover_coefficients(varying, x);
        CHECK(r.c0 == doctest::Approx(std::sin(x)).epsilon(1e-8));
        CHECK(r.c1 == doctest::Approx(x).epsilon(1e-8));
    }

    // lower-order operators: absent coefficients come back as zero
    RecoveredCoefficients k0 = recover_coefficients(char_op(1.5, 0, 0, -2, 0), 0.3);
    CHECK(k0.c0 == doctest::Approx(1.5).epsilon(1e-8));
    CHECK(k0.c1 == 0.0);
    CHECK(k0.c2 == 0.0);
    CHECK(k0.d00 == doctest::Approx(-2.0).epsilon(1e-8));
}

TEST_CASE("recovery rejects operators outside the family") {
    Operator cube_op = black_box("pointwise_cube", 2, [](double, const Jet& j) {
        return j[0] * j[0] * j[0];
    });
    CHECK_THROWS_AS(recover_coefficients(cube_op, 0.3), family_error);

    auto psi = std::make_shared<const PsiSolution>();
    Operator comp = composition(build_d(psi));
    CHECK_THROWS_AS(recover_coefficients(comp, 0.3), family_error);
}
