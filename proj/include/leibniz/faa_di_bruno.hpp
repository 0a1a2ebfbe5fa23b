#pragma once

#include <vector>

#include "leibniz/jet.hpp"

namespace leibniz {

/// One term of the Faa di Bruno expansion of (ln o f)^(l): a multiplicity
/// vector m = (m_1, ..., m_l) with sum i*m_i = l, plus the exact integer
/// pieces of its coefficient. The term contributes
///
///   multinomial * sign_factorial / f^M * prod_j (f^(j)/j!)^(m_j),
///
/// where M = sum m_i, multinomial = l!/(m_1! ... m_l!) and
/// sign_factorial = (-1)^(M-1) (M-1)!.
struct PartitionTerm {
    std::vector<int> multiplicities;
    long long multinomial = 0;
    int block_count = 0;        // M
    long long sign_factorial = 0;

    /// Coefficient of prod_j (f^(j))^(m_j) / f^M in the raw-derivative basis,
    /// i.e. multinomial * sign_factorial / prod_j (j!)^(m_j). Exact in double
    /// for l <= 8.
    double monomial_coefficient() const;
};

/// All multiplicity vectors with sum i*m_i = l, each exactly once, in
/// descending lexicographic order. 1 <= l <= 8.
std::vector<PartitionTerm> partitions(int l);

/// d^l/dx^l (ln o f)(x) evaluated from the jet of f via the partition sum.
/// Requires fjet.value() > 0 and 1 <= l <= fjet.order(). Cross-validated
/// against the log() jet recurrence in the tests.
double faa_log_derivative(const Jet& fjet, int l);

} // namespace leibniz
