#include "oppde/crossover.hpp"

#include <cmath>
#include <stdexcept>

namespace oppde {

namespace {

void check_pair(const std::vector<double>& target, const std::vector<double>& mutant,
                double cr) {
    if (target.size() != mutant.size() || target.empty())
        throw std::invalid_argument("crossover: target/mutant length mismatch");
    if (cr < 0.0 || cr > 1.0)
        throw std::invalid_argument("crossover: CR must be in [0,1]");
}

} // namespace

CrossoverKind crossover_from_name(const std::string& name) {
    if (name == "binomial") return CrossoverKind::binomial;
    if (name == "exponential") return CrossoverKind::exponential;
    if (name == "multiple_exponential") return CrossoverKind::multiple_exponential;
    throw std::invalid_argument("unknown crossover '" + name + "'");
}

std::string crossover_name(CrossoverKind kind) {
    switch (kind) {
        case CrossoverKind::binomial: return "binomial";
        case CrossoverKind::exponential: return "exponential";
        case CrossoverKind::multiple_exponential: return "multiple_exponential";
    }
    return "?";
}

std::vector<double> binomial_crossover(const std::vector<double>& target,
                                       const std::vector<double>& mutant,
                                       double cr, RngStream& rng) {
    check_pair(target, mutant, cr);
    const int d = static_cast<int>(target.size());
    const int j_rand = rng.uniform_int(0, d - 1);
    std::vector<double> u(target);
    for (int j = 0; j < d; ++j)
        if (rng.uniform01() <= cr || j == j_rand) u[j] = mutant[j];
    return u;
}

std::vector<double> exponential_crossover(const std::vector<double>& target,
                                          const std::vector<double>& mutant,
                                          double cr, RngStream& rng) {
    check_pair(target, mutant, cr);
    const int d = static_cast<int>(target.size());
    const int start = rng.uniform_int(0, d - 1);
    std::vector<double> u(target);
    int len = 0;
    do {
        u[(start + len) % d] = mutant[(start + len) % d];
        ++len;
    } while (len < d && rng.uniform01() <= cr);
    return u;
}

std::vector<double> multiple_exponential_crossover(const std::vector<double>& target,
                                                   const std::vector<double>& mutant,
                                                   double cr, double segment_length,
                                                   RngStream& rng) {
    check_pair(target, mutant, cr);
    if (!(segment_length > 0.0))
        throw std::invalid_argument("crossover: segment length T must be > 0");
    if (cr >= 1.0) return mutant;

    const int d = static_cast<int>(target.size());
    const int start = rng.uniform_int(0, d - 1);
    std::vector<double> u(target);

    if (cr <= 0.0) {
        // degenerate: a single length-1 mutant run, remainder target
        u[start] = mutant[start];
        return u;
    }

    const double em = segment_length * cr;
    const double es = segment_length * (1.0 - cr);
    const double cr_m = em / (em + 1.0);
    const double cr_s = es / (es + 1.0);

    const double log_m = std::log(cr_m);
    const double log_s = std::log(cr_s);

    int assigned = 0;
    bool from_mutant = true;
    while (assigned < d) {
        // geometric run length >= 1, sampled in closed form
        const double r = rng.uniform01();
        int len = d - assigned;
        if (r > 0.0) {
            const double g = std::floor(std::log(r) / (from_mutant ? log_m : log_s));
            if (g < static_cast<double>(len - 1)) len = 1 + static_cast<int>(g);
        }
        if (from_mutant) {
            for (int k = 0; k < len; ++k) {
                const int j = (start + assigned + k) % d;
                u[j] = mutant[j];
            }
        }
        assigned += len;
        from_mutant = !from_mutant;
    }
    return u;
}

std::vector<double> crossover(CrossoverKind kind, const std::vector<double>& target,
                              const std::vector<double>& mutant, double cr,
                              double segment_length, RngStream& rng) {
    switch (kind) {
        case CrossoverKind::binomial:
            return binomial_crossover(target, mutant, cr, rng);
        case CrossoverKind::exponential:
            return exponential_crossover(target, mutant, cr, rng);
        case CrossoverKind::multiple_exponential:
            return multiple_exponential_crossover(target, mutant, cr, segment_length, rng);
    }
    throw std::logic_error("crossover: bad kind");
}

} // namespace oppde
