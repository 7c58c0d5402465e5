#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace pspect {

/// Compensated (Kahan) accumulator. Inequality verdicts downstream depend on
/// slacks near zero, so edge sums are accumulated with compensation throughout.
class KahanSum {
public:
    void add(double x) {
        const double y = x - c_;
        const double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

/// sign(t) * |t|^e, with 0 mapped to 0.
inline double signed_pow(double t, double e) {
    if (t == 0.0) return 0.0;
    const double mag = std::pow(std::abs(t), e);
    return t > 0.0 ? mag : -mag;
}

/// |t|^(p-2) * t, extended by 0 at t = 0 (needed for p < 2).
inline double phi_p(double t, double p) { return signed_pow(t, p - 1.0); }

constexpr double kInfDist = std::numeric_limits<double>::infinity();

/// SplitMix64. All randomness in the library flows through this generator:
/// the 64-bit seed fully determines the output stream on every platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform in [0, n) by rejection, exact for any n > 0.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

    /// Derives an independent stream for a sub-task (restart index, etc).
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) {
        SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
        return g.next();
    }

private:
    std::uint64_t state_;
};

} // namespace pspect
