#include <chrono>
#include <cmath>

#include "oppde/harness.hpp"

namespace oppde {

namespace {

using clock_type = std::chrono::steady_clock;

double ms_since(clock_type::time_point start) {
    return std::chrono::duration<double, std::milli>(clock_type::now() - start).count();
}

// standard CEC reference arithmetic loop
double reference_loop_ms() {
    const auto start = clock_type::now();
    volatile double x = 0.55;
    for (int i = 0; i < 1000000; ++i) {
        x = x + x;
        x = x / 2.0;
        x = x * x;
        x = std::sqrt(x);
        x = std::log(x);
        x = std::exp(x);
        x = x / (x + 2.0);
        x = x + 0.55;
    }
    return ms_since(start);
}

} // namespace

TimingReport timing_protocol(const ExperimentConfig& config, const std::string& function,
                             std::size_t dimension) {
    constexpr std::uint64_t kEvals = 200000;
    const TestFunction f = make_function(function, dimension, config.transform_seed);

    TimingReport rep;
    rep.t0_ms = reference_loop_ms();

    {
        RngStream rng(config.base_seed);
        const auto x = random_point(f.bounds(), rng);
        volatile double sink = 0.0;
        const auto start = clock_type::now();
        for (std::uint64_t i = 0; i < kEvals; ++i) sink = sink + f.raw(x);
        rep.t1_ms = ms_since(start);
    }

    double total = 0.0;
    for (int r = 0; r < 5; ++r) {
        DeConfig dc = config.de;
        dc.seed = config.base_seed + static_cast<std::uint64_t>(r);
        dc.budget_max = kEvals;
        const auto start = clock_type::now();
        if (config.obl) {
            OblStrategy strategy(*config.obl);
            run(dc, f, &strategy, {});
        } else {
            run(dc, f, nullptr, {});
        }
        total += ms_since(start);
    }
    rep.t2_ms = total / 5.0;
    rep.complexity = (rep.t2_ms - rep.t1_ms) / rep.t0_ms;
    return rep;
}

} // namespace oppde
