#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string_view>

namespace oppde {

/// Deterministic random stream backing every stochastic operation.
///
/// xoshiro256++ seeded through splitmix64. Two streams built from the same
/// seed produce bit-identical draw sequences on every platform, which is what
/// makes result files reproducible. The generator identity is exported as
/// rng_version() and echoed into emitted metadata.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl_(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl_(s_[3], 45);
        return result;
    }

    /// Uniform draw in [0, 1).
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in the inclusive range [lo, hi]. Unbiased (rejection).
    int uniform_int(int lo, int hi) {
        if (lo > hi) throw std::invalid_argument("uniform_int: lo > hi");
        const std::uint64_t span =
            static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
        std::uint64_t r;
        do {
            r = next_u64();
        } while (r >= limit);
        return lo + static_cast<int>(r % span);
    }

    /// N(mean, variance). Marsaglia polar method, one spare cached per stream.
    double gaussian(double mean, double variance);

    /// Gamma(shape, 1), shape > 0. Marsaglia-Tsang, with the boost
    /// transformation for shape < 1.
    double gamma(double shape) {
        if (!(shape > 0.0)) throw std::invalid_argument("gamma: shape must be > 0");
        if (shape < 1.0) {
            // boost: Gamma(a) = Gamma(a+1) * U^(1/a)
            const double g = gamma(shape + 1.0);
            const double u = uniform01();
            return g * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = standard_normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform01();
            const double x2 = x * x;
            if (u < 1.0 - 0.0331 * x2 * x2) return d * v; // squeeze
            if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

    /// Beta(alpha, beta) via two gamma draws; redrawn until strictly in (0,1).
    double beta(double alpha, double beta) {
        if (!(alpha > 0.0) || !(beta > 0.0))
            throw std::invalid_argument("beta: shapes must be > 0");
        for (;;) {
            const double g1 = gamma(alpha);
            const double g2 = gamma(beta);
            const double sum = g1 + g2;
            if (sum <= 0.0) continue;
            const double b = g1 / sum;
            if (b > 0.0 && b < 1.0) return b; // open interval enforced
        }
    }

    std::uint64_t seed() const { return seed_; }

private:
    static std::uint64_t rotl_(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    /// Ziggurat method (Marsaglia-Tsang, 128 layers); the common case is one
    /// 64-bit draw, a table compare, and one multiply.
    double standard_normal() {
        const std::uint64_t r = next_u64();
        const std::int32_t hz = static_cast<std::int32_t>(r >> 32);
        // index bits are disjoint from the value bits to avoid the correlation
        // present in the original 32-bit formulation
        const std::uint32_t iz = static_cast<std::uint32_t>(r) & 127u;
        if (static_cast<std::uint32_t>(hz < 0 ? -static_cast<std::int64_t>(hz)
                                              : static_cast<std::int64_t>(hz)) < zig_kn_[iz])
            return hz * zig_wn_[iz];
        return normal_tail(hz, iz);
    }
    double normal_tail(std::int32_t hz, std::uint32_t iz);

    static const std::uint32_t* zig_kn_;
    static const double* zig_wn_;
    static const double* zig_fn_;

    std::uint64_t seed_;
    std::uint64_t s_[4];
};

/// Generator identity tag written into emitted JSON metadata.
constexpr std::string_view rng_version() { return "xoshiro256++/1.0"; }

} // namespace oppde
