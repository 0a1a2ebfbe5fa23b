#pragma once

#include <cstdint>

namespace leibniz {

// splitmix64, used everywhere a seeded point/jet stream is needed.
// <random> distributions are implementation-defined sequences; this one is
// bit-identical on every platform, which the report determinism contract
// relies on.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53 random bits
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
    std::uint64_t state_;
};

// Derives a per-case seed from a global seed so cases stay independent of
// execution order.
inline std::uint64_t mix_seed(std::uint64_t global, std::uint64_t index) {
    SplitMix64 s(global ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    s.next();
    return s.next();
}

} // namespace leibniz
