#pragma once

#include <cmath>
#include <cstdint>

namespace ginprod {

namespace detail {

/// SplitMix64 output function (Steele, Lea, Flood / Vigna).
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace detail

/// Counter-based splittable stream: each logical unit of work (a Monte
/// Carlo trial, a sample index) gets its own statistically independent
/// stream derived from (seed, unit).  Results are therefore reproducible
/// for a given seed and invariant under any assignment of units to
/// threads; merge order cannot matter.
class SplitStream {
public:
    SplitStream(std::uint64_t seed, std::uint64_t unit)
        : state_(detail::mix64(seed ^ detail::mix64(unit + 0x632BE59BD9B4E019ULL))) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in (0, 1), never exactly 0 or 1.
    double next_uniform() {
        for (;;) {
            double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
            if (u > 0.0 && u < 1.0) return u;
        }
    }

    /// Standard normal via the Marsaglia polar method (deterministic given
    /// the stream; the spare is cached).
    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        for (;;) {
            double u = 2.0 * next_uniform() - 1.0;
            double v = 2.0 * next_uniform() - 1.0;
            double s = u * u + v * v;
            if (s > 0.0 && s < 1.0) {
                double f = std::sqrt(-2.0 * std::log(s) / s);
                spare_ = v * f;
                have_spare_ = true;
                return u * f;
            }
        }
    }

private:
    std::uint64_t state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace ginprod
