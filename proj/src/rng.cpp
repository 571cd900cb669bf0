#include "oppde/rng.hpp"

#include <cmath>

namespace oppde {

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Ziggurat tables for the standard normal (Marsaglia & Tsang, 128 layers).
// kn: acceptance thresholds against the 31-bit integer draw, wn: layer widths
// scaled to that draw, fn: density at the layer boundaries.
struct ZigTables {
    std::uint32_t kn[128];
    double wn[128];
    double fn[128];

    ZigTables() {
        const double m1 = 2147483648.0;
        double dn = 3.442619855899;
        double tn = dn;
        const double vn = 9.91256303526217e-3;

        const double q = vn / std::exp(-0.5 * dn * dn);
        kn[0] = static_cast<std::uint32_t>((dn / q) * m1);
        kn[1] = 0;
        wn[0] = q / m1;
        wn[127] = dn / m1;
        fn[0] = 1.0;
        fn[127] = std::exp(-0.5 * dn * dn);
        for (int i = 126; i >= 1; --i) {
            dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
            kn[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
            tn = dn;
            fn[i] = std::exp(-0.5 * dn * dn);
            wn[i] = dn / m1;
        }
    }
};

const ZigTables& zig_tables() {
    static const ZigTables t;
    return t;
}

} // namespace

const std::uint32_t* RngStream::zig_kn_ = zig_tables().kn;
const double* RngStream::zig_wn_ = zig_tables().wn;
const double* RngStream::zig_fn_ = zig_tables().fn;

RngStream::RngStream(std::uint64_t seed) : seed_(seed) {
    std::uint64_t sm = seed;
    for (auto& s : s_) s = splitmix64(sm);
}

double RngStream::normal_tail(std::int32_t hz, std::uint32_t iz) {
    constexpr double kR = 3.442619855899; // start of the right tail
    for (;;) {
        double x = hz * zig_wn_[iz];
        if (iz == 0) {
            // base layer: sample the tail by inversion-rejection
            double y;
            do {
                x = -std::log(uniform01()) / kR;
                y = -std::log(uniform01());
            } while (y + y < x * x);
            return hz > 0 ? kR + x : -kR - x;
        }
        if (zig_fn_[iz] + uniform01() * (zig_fn_[iz - 1] - zig_fn_[iz]) <
            std::exp(-0.5 * x * x))
            return x;
        const std::uint64_t r = next_u64();
        hz = static_cast<std::int32_t>(r >> 32);
        iz = static_cast<std::uint32_t>(r) & 127u;
        const std::uint32_t a = hz < 0 ? static_cast<std::uint32_t>(-static_cast<std::int64_t>(hz))
                                       : static_cast<std::uint32_t>(hz);
        if (a < zig_kn_[iz]) return hz * zig_wn_[iz];
    }
}

double RngStream::gaussian(double mean, double variance) {
    if (!(variance > 0.0)) throw std::invalid_argument("gaussian: variance must be > 0");
    return mean + std::sqrt(variance) * standard_normal();
}

} // namespace oppde
