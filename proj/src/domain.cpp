#include "leibniz/domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leibniz {

DomainSet DomainSet::reals() { return interval(-kInf, kInf); }

DomainSet DomainSet::interval(double lo, double hi) {
    return of({Interval{lo, hi}});
}

DomainSet DomainSet::of(std::vector<Interval> parts) {
    if (parts.empty()) throw std::invalid_argument("domain must be nonempty");
    std::sort(parts.begin(), parts.end(),
              [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    for (const auto& p : parts) {
        if (std::isnan(p.lo) || std::isnan(p.hi) || !(p.lo < p.hi))
            throw std::invalid_argument("interval requires lo < hi");
    }
    for (std::size_t i = 1; i < parts.size(); ++i) {
        if (!(parts[i - 1].hi <= parts[i].lo))
            throw std::invalid_argument("domain intervals must be disjoint");
    }
    DomainSet d;
    d.parts_ = std::move(parts);
    return d;
}

bool DomainSet::contains(double x) const {
    for (const auto& p : parts_)
        if (p.contains(x)) return true;
    return false;
}

DomainSet DomainSet::intersect(const DomainSet& other) const {
    std::vector<Interval> out;
    for (const auto& a : parts_) {
        for (const auto& b : other.parts_) {
            double lo = std::max(a.lo, b.lo);
            double hi = std::min(a.hi, b.hi);
            if (lo < hi) out.push_back({lo, hi});
        }
    }
    if (out.empty()) throw std::domain_error("empty domain intersection");
    return of(std::move(out));
}

DomainSet DomainSet::shifted(double h) const {
    std::vector<Interval> out;
    out.reserve(parts_.size());
    for (const auto& p : parts_) out.push_back({p.lo - h, p.hi - h});
    return of(std::move(out));
}

} // namespace leibniz
