#pragma once

#include <memory>
#include <vector>

#include "oppde/core.hpp"
#include "oppde/obl.hpp"
#include "oppde/objective.hpp"

namespace oppde {

struct DeConfig {
    double F = 0.5;
    double CR = 0.9;
    int NP = 100;
    double jumping_rate = 0.05;
    double diversity_threshold = 1e-6;
    std::uint64_t seed = 1;
    std::uint64_t budget_max = 0; // 0 = harness default 10000*D

    void validate() const;
};

/// One seeded run trace: best-so-far FEV at the requested NFE checkpoints
/// plus per-phase counters for exact NFE accounting.
struct RunRecord {
    std::uint64_t seed = 0;
    std::string function;
    std::size_t dimension = 0;
    std::vector<std::uint64_t> checkpoint_nfes;
    std::vector<double> checkpoint_fevs;
    double final_fev = 0.0;
    std::uint64_t nfes_used = 0;
    double wall_ms = 0.0;

    // phase counters (closed-form NFE check: NP + init_obl_evals +
    // de_generations*NP + mu_plus_jumps*2*NP + mu_comma_jumps*2*ceil(NP/2)
    // + classic_jumps*NP)
    std::uint64_t de_generations = 0;
    std::uint64_t mu_plus_jumps = 0;
    std::uint64_t mu_comma_jumps = 0;
    std::uint64_t classic_jumps = 0;
    std::uint64_t init_obl_evals = 0;
};

/// NP uniformly random in-bounds individuals, all evaluated; generation 0.
Population initialize(const DeConfig& config, const TestFunction& f,
                      EvaluationBudget& budget, RngStream& rng);

/// DE/rand/1 mutant: x_r1 + F*(x_r2 - x_r3), donors distinct from each other
/// and the target, clamped to bounds.
std::vector<double> mutate_rand1(const Population& pop, std::size_t target_index,
                                 double F, const Bounds& bounds, RngStream& rng);

/// Eq.-4 greedy selection; a tie keeps the trial.
const Individual& select(const Individual& target, const Individual& trial);

/// Full fixed-budget run: initialization (+ one strategy application when an
/// OBL strategy is attached), then generations until no full phase fits the
/// budget. The jump coin is drawn once per generation; a jump replaces the
/// whole DE generation.
RunRecord run(const DeConfig& config, const TestFunction& f, OblStrategy* obl,
              const std::vector<std::uint64_t>& checkpoints);

} // namespace oppde
