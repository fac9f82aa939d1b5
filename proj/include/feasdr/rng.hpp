#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

#include "feasdr/error.hpp"
#include "feasdr/geometry.hpp"

namespace feasdr {

/// Deterministic random source for instance generation and property suites.
/// std::mt19937_64 has a pinned algorithm, but the standard library's
/// distributions do not, so the mappings from raw 64-bit draws to doubles are
/// spelled out here to keep seeded output identical across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_raw() { return engine_(); }

    /// Uniform on [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Rejection sampling, so no modulo bias.
    int uniform_int(int n) {
        if (n <= 0) fail(ErrorCode::invalid_argument, "uniform_int: n must be positive");
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit =
            std::numeric_limits<std::uint64_t>::max() / bound * bound;
        std::uint64_t draw;
        do {
            draw = engine_();
        } while (draw >= limit);
        return static_cast<int>(draw % bound);
    }

    /// Standard normal via Box-Muller; consumes exactly two raw draws.
    double normal() {
        const double u1 = (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        constexpr double two_pi = 6.283185307179586476925286766559;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

    Vector uniform_vector(int n, double lo, double hi) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
        return v;
    }

    Vector normal_vector(int n) {
        Vector v(n);
        for (int i = 0; i < n; ++i) v[i] = normal();
        return v;
    }

    /// Uniform direction on the unit sphere (normalized Gaussian; redrawn on
    /// the measure-zero chance of a near-zero sample).
    Vector unit_vector(int n) {
        for (;;) {
            Vector v = normal_vector(n);
            const double len = v.norm();
            if (len > 1e-6) return v / len;
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace feasdr
