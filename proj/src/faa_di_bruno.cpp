#include "leibniz/faa_di_bruno.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leibniz {

namespace {

constexpr long long kFactorial[] = {1, 1, 2, 6, 24, 120, 720, 5040, 40320};

void check_l(int l) {
    if (l < 1 || l > kMaxJetOrder)
        throw std::invalid_argument("partition order l must be in [1, " +
                                    std::to_string(kMaxJetOrder) + "]");
}

PartitionTerm make_term(int l, const std::vector<int>& m) {
    PartitionTerm t;
    t.multiplicities = m;
    long long denom = 1;
    int blocks = 0;
    for (int i = 0; i < l; ++i) {
        denom *= kFactorial[m[static_cast<std::size_t>(i)]];
        blocks += m[static_cast<std::size_t>(i)];
    }
    t.multinomial = kFactorial[l] / denom;
    t.block_count = blocks;
    t.sign_factorial = (blocks % 2 == 1 ? 1 : -1) * kFactorial[blocks - 1];
    return t;
}

// partitions of `remaining` into parts of size <= max_part, recorded as
// multiplicities in m
void descend(int l, int remaining, int max_part, std::vector<int>& m,
             std::vector<PartitionTerm>& out) {
    if (remaining == 0) {
        out.push_back(make_term(l, m));
        return;
    }
    for (int part = std::min(max_part, remaining); part >= 1; --part) {
        m[static_cast<std::size_t>(part - 1)] += 1;
        descend(l, remaining - part, part, m, out);
        m[static_cast<std::size_t>(part - 1)] -= 1;
    }
}

} // namespace

double PartitionTerm::monomial_coefficient() const {
    double denom = 1.0;
    for (std::size_t j = 0; j < multiplicities.size(); ++j)
        denom *= std::pow(static_cast<double>(kFactorial[j + 1]), multiplicities[j]);
    return static_cast<double>(multinomial) * static_cast<double>(sign_factorial) / denom;
}

std::vector<PartitionTerm> partitions(int l) {
    check_l(l);
    std::vector<PartitionTerm> out;
    std::vector<int> m(static_cast<std::size_t>(l), 0);
    descend(l, l, l, m, out);
    std::sort(out.begin(), out.end(), [](const PartitionTerm& a, const PartitionTerm& b) {
        return a.multiplicities > b.multiplicities;  // descending lexicographic
    });
    return out;
}

double faa_log_derivative(const Jet& fjet, int l) {
    check_l(l);
    if (l > fjet.order())
        throw std::invalid_argument("faa_log_derivative: jet order too small for l");
    if (!(fjet.value() > 0.0))
        throw std::domain_error("faa_log_derivative requires a positive value entry");

    double acc = 0.0;
    for (const PartitionTerm& t : partitions(l)) {
        double prod = 1.0;
        for (int j = 1; j <= l; ++j) {
            int mj = t.multiplicities[static_cast<std::size_t>(j - 1)];
            if (mj > 0)
                prod *= std::pow(fjet[j] / static_cast<double>(kFactorial[j]), mj);
        }
        acc += static_cast<double>(t.multinomial) * static_cast<double>(t.sign_factorial) /
               std::pow(fjet.value(), t.block_count) * prod;
    }
    return acc;
}

} // namespace leibniz
