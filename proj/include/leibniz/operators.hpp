#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "leibniz/function_corpus.hpp"
#include "leibniz/jet.hpp"

namespace leibniz {

/// Scalar coefficient function on the working domain. Remembers whether it is
/// the literal zero constant so family constructors can enforce the
/// order-degeneration rules (k = 0 forces c1 = c2 = 0, k = 1 forces c2 = 0).
class CoeffFn {
public:
    static CoeffFn constant(double v);
    static CoeffFn from_callable(std::string label, std::function<double(double)> fn);

    double operator()(double x) const { return fn_(x); }
    bool is_zero_constant() const { return constant_ && value_ == 0.0; }
    bool is_constant() const { return constant_; }
    const std::string& label() const { return label_; }

private:
    CoeffFn() = default;
    std::function<double(double)> fn_;
    std::string label_;
    bool constant_ = false;
    double value_ = 0.0;
};

/// A pointwise operator on C^k: evaluation consumes only the jet of the
/// argument at the evaluation point. Instances are built through the factory
/// functions below; all of them are immutable and cheap to copy.
class Operator {
public:
    Operator(std::string name, int jet_order,
             std::function<double(double, const Jet&)> eval);

    /// D(f)(x). Requests the jet of f at x at this operator's order, then
    /// evaluates the family formula. Domain violations propagate as
    /// std::domain_error.
    double apply(const FunctionSpec& f, double x) const;

    const std::string& name() const { return name_; }
    int jet_order() const { return order_; }

private:
    std::string name_;
    int order_;
    std::function<double(double, const Jet&)> eval_;
};

/// x ln|x| and x ln^2|x| with the continuous-extension convention 0 ln 0 = 0.
/// The convention triggers only on an exact floating zero.
double xlog_abs(double t);
double xlog_abs2(double t);

/// c0 f ln|f| + c1 f' + c2 f'' + d00 f ln^2|f|, the full solution family of
/// the trilinear identity. k < 2 variants must pass literal zero constants
/// for the coefficients their order cannot support.
Operator characterized(CoeffFn c0, CoeffFn c1, CoeffFn c2, CoeffFn d00, int k = 2);

/// f * [ sum_i c_i (ln f)^(i) + sum_{i,j} d_ij (ln f)^(i) (ln f)^(j) ];
/// defined for strictly positive arguments only. c has length k+1, d is
/// (k+1) x (k+1).
Operator log_polynomial(std::vector<CoeffFn> c, std::vector<std::vector<CoeffFn>> d);

/// c1 f' + c2 f'' (the linear solutions).
Operator linear_differential(CoeffFn c1, CoeffFn c2);

/// c2 f'' (solutions annihilating polynomials of degree <= 1).
Operator second_derivative_only(CoeffFn c2);

/// D(f)(x) = d(f(x)). Errors when f(x) leaves the domain of d.
Operator composition(ScalarMap d);

/// Arbitrary pointwise operator from a raw (x, jet) evaluator.
Operator black_box(std::string name, int jet_order,
                   std::function<double(double, const Jet&)> eval);

/// Operator pair for the second-order Leibniz rule
/// T(fg) = T(f) g + f T(g) + 2 A(f) A(g).
struct KMPair {
    Operator T;
    Operator A;
};

/// (f ln^2|f|, f ln|f|): satisfies the second-order Leibniz rule although A
/// depends only on the function value.
KMPair log_square_pair();

/// (1/2 c^2 f'' + b f', (c/sqrt 2) f'). With the factor-2 normalization of
/// the second-order Leibniz rule above, the derivative coefficient of A must
/// be c/sqrt(2) for the pair to satisfy the identity; see the tests for the
/// algebra.
KMPair km_corollary_pair(double c, double b);

/// Signed residual of an identity at a point together with the magnitude of
/// the largest participating term. Checks compare |value| against
/// tol * max(1, scale).
struct Residual {
    double value = 0.0;
    double scale = 0.0;
};

/// Seven-term trilinear residual
/// D(fgh) - f D(gh) - g D(fh) - h D(fg) + fg D(h) + fh D(g) + gh D(f).
Residual residual_id2(const Operator& D, const FunctionSpec& f, const FunctionSpec& g,
                      const FunctionSpec& h, double x);

/// Diagonal residual D(f^3) - 3 f D(f^2) + 3 f^2 D(f); equals
/// residual_id2(D, f, f, f) up to rounding of the shorter sum.
Residual residual_powers(const Operator& D, const FunctionSpec& f, double x);

/// Leibniz-rule residual T(fg) - f T(g) - T(f) g.
Residual residual_leibniz(const Operator& T, const FunctionSpec& f, const FunctionSpec& g,
                          double x);

/// Second-order Leibniz residual T(fg) - T(f) g - f T(g) - 2 A(f) A(g).
Residual residual_second_leibniz(const KMPair& pair, const FunctionSpec& f,
                                 const FunctionSpec& g, double x);

/// Residual of the identity
///   [seven-term expression for T] = 2 A(h) [A(fg) - f A(g) - g A(f)],
/// which holds whenever the pair satisfies the second-order Leibniz rule.
/// The left side uses the symmetric seven-term form.
Residual residual_eq_rem2(const KMPair& pair, const FunctionSpec& f, const FunctionSpec& g,
                          const FunctionSpec& h, double x);

/// Same expression as residual_id2, under the name used by the
/// difference-operator experiments.
inline Residual trilinear_form(const Operator& D, const FunctionSpec& f,
                               const FunctionSpec& g, const FunctionSpec& h, double x) {
    return residual_id2(D, f, g, h, x);
}

/// n-fold difference sum_{S subset hs} (-1)^(n-|S|) T(f + sum_{h in S} h)(x).
double difference_apply(const Operator& T, std::span<const FunctionSpec> hs,
                        const FunctionSpec& f, double x);

/// D(tau_shift f)(x) - D(f)(x + shift) where (tau_h f)(x) = f(x + h).
/// Vanishes for constant-coefficient families.
double shift_commutator(const Operator& D, double shift, const FunctionSpec& f, double x);

/// a b (ln|b| - ln|a|): the determinant witnessing non-degeneracy of
/// A(f) = f ln|f|. Requires a, b nonzero.
double km_nondegeneracy_det(double a, double b);

struct LocalizationReport {
    bool inputs_agree = false;  // f1 and f2 match (jets) at every sample point
    double max_input_mismatch = 0.0;
    double max_residual = 0.0;  // max |D(f1)(x) - D(f2)(x)| over the points
};

/// Checks that agreement of f1 and f2 on J forces agreement of D(f1) and
/// D(f2) on J. Points outside J or outside either domain are rejected.
LocalizationReport localization_check(const Operator& D, const FunctionSpec& f1,
                                      const FunctionSpec& f2, Interval J,
                                      std::span<const double> points);

} // namespace leibniz
