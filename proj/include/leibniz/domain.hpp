#pragma once

#include <limits>
#include <vector>

namespace leibniz {

/// Open interval (lo, hi); infinite endpoints allowed.
struct Interval {
    double lo;
    double hi;

    bool contains(double x) const { return x > lo && x < hi; }
    double length() const { return hi - lo; }
};

/// Nonempty union of disjoint open intervals, kept sorted by lower endpoint.
class DomainSet {
public:
    static DomainSet reals();
    static DomainSet interval(double lo, double hi);
    static DomainSet of(std::vector<Interval> parts);  // validates + sorts

    bool contains(double x) const;
    const std::vector<Interval>& intervals() const { return parts_; }

    DomainSet intersect(const DomainSet& other) const;  // throws if empty

    /// Preimage under translation: { x : x + h in this }.
    DomainSet shifted(double h) const;

private:
    std::vector<Interval> parts_;
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace leibniz
