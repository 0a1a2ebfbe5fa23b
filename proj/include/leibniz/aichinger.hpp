#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "leibniz/operators.hpp"

namespace leibniz {

/// The conjugated symbol of a pointwise operator: G(x, v) is the value of
/// D(exp o f)(x) / exp(f(x)) for any f whose jet at x equals v. For solutions
/// of the trilinear identity, v -> G(x, v) satisfies the cube equation and is
/// therefore a quadratic polynomial with G(x, 0) = 0.
class SymbolG {
public:
    SymbolG(int dim, std::function<double(double, std::span<const double>)> eval);

    /// The symbol induced by an operator of jet order k via exponential
    /// conjugation on prescribed jets; dim = k + 1.
    static SymbolG induced(const Operator& D);

    int dim() const { return dim_; }
    double operator()(double x, std::span<const double> v) const;

private:
    int dim_;
    std::function<double(double, std::span<const double>)> eval_;
};

/// D(exp o f)(x) / exp(f(x)). Guards |f(x)| <= 300 against exp overflow.
double conjugate_p(const Operator& D, const FunctionSpec& f, double x);

/// G(x, v1+v2+v3) - G(x, v2+v3) - G(x, v1+v3) - G(x, v1+v2)
///   + G(x, v1) + G(x, v2) + G(x, v3), with the largest |G| term as scale.
Residual cube_residual(const SymbolG& G, double x, std::span<const double> v1,
                       std::span<const double> v2, std::span<const double> v3);

/// Least-squares quadratic model over the monomial basis
/// {1, v_i, v_i v_j (i <= j)}. Quadratic coefficients are stored lower
/// triangular (quad[i][j] for j <= i holds the coefficient of v_i v_j).
struct QuadraticModel {
    double constant = 0.0;
    std::vector<double> linear;
    std::vector<std::vector<double>> quad;
    double residual = 0.0;   // max |fit - sample| over the inputs
    double condition = 0.0;  // condition estimate of the design matrix

    double coeff(int i, int j) const;  // symmetric accessor
    double evaluate(std::span<const double> v) const;
};

using FitSample = std::pair<std::vector<double>, double>;

/// Fits the model to (v, value) samples; needs at least (n+1)(n+2)/2 samples
/// in general position. Throws std::runtime_error on a rank-deficient design.
QuadraticModel fit_quadratic(std::span<const FitSample> samples, int n);

/// Thrown when a black-box operator fails the membership verification of
/// recover_coefficients.
struct family_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RecoveredCoefficients {
    double c0 = 0.0;
    double c1 = 0.0;
    double c2 = 0.0;
    double d00 = 0.0;
    double verification_misfit = 0.0;
};

/// Recovers the characterizing coefficients of a solution operator at x from
/// canonical probes of its conjugated symbol:
///
///   d00 = (G(2 e0) - 2 G(e0)) / 2,   c0 = G(e0) - d00,
///   c2  = G(e2),                     c1 = G(e1) - c2.
///
/// The c2 correction in c1 accounts for (exp f)'' = (f'' + f'^2) exp f, which
/// makes the induced symbol carry c2 both on v2 and on v1^2. The fit is then
/// verified on extra random probes; operators outside the family throw
/// family_error.
RecoveredCoefficients recover_coefficients(const Operator& D, double x,
                                           double verify_tol = 1e-7);

} // namespace leibniz
