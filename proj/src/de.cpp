#include "oppde/de.hpp"

#include <algorithm>
#include <chrono>

#include "oppde/crossover.hpp"
#include "oppde/kernels.hpp"

namespace oppde {

void DeConfig::validate() const {
    if (!(F > 0.0)) throw std::invalid_argument("DeConfig: F must be > 0");
    if (CR < 0.0 || CR > 1.0) throw std::invalid_argument("DeConfig: CR must be in [0,1]");
    if (NP < 4) throw std::invalid_argument("DeConfig: NP must be >= 4");
    if (jumping_rate < 0.0 || jumping_rate > 1.0)
        throw std::invalid_argument("DeConfig: jumping rate must be in [0,1]");
    if (diversity_threshold < 0.0)
        throw std::invalid_argument("DeConfig: diversity threshold must be >= 0");
}

Population initialize(const DeConfig& config, const TestFunction& f,
                      EvaluationBudget& budget, RngStream& rng) {
    config.validate();
    if (!budget.can(static_cast<std::uint64_t>(config.NP))) throw BudgetExhausted{};
    Population pop;
    pop.generation = 0;
    pop.members.reserve(config.NP);
    for (int i = 0; i < config.NP; ++i) {
        Individual ind;
        ind.genome = random_point(f.bounds(), rng);
        ind.fitness = evaluate(f, ind.genome, budget);
        pop.members.push_back(std::move(ind));
    }
    return pop;
}

std::vector<double> mutate_rand1(const Population& pop, std::size_t target_index,
                                 double F, const Bounds& bounds, RngStream& rng) {
    const int np = static_cast<int>(pop.size());
    if (np < 4) throw std::invalid_argument("mutate_rand1: need NP >= 4");
    int r1, r2, r3;
    const int ti = static_cast<int>(target_index);
    do { r1 = rng.uniform_int(0, np - 1); } while (r1 == ti);
    do { r2 = rng.uniform_int(0, np - 1); } while (r2 == ti || r2 == r1);
    do { r3 = rng.uniform_int(0, np - 1); } while (r3 == ti || r3 == r1 || r3 == r2);

    const auto& a = pop.members[r1].genome;
    const auto& b = pop.members[r2].genome;
    const auto& c = pop.members[r3].genome;
    std::vector<double> v(a.size());
    kern::ops().axpy_diff(v.data(), a.data(), b.data(), c.data(), F, a.size());
    return clamp_to_bounds(std::move(v), bounds);
}

const Individual& select(const Individual& target, const Individual& trial) {
    return trial.fitness_value() <= target.fitness_value() ? trial : target;
}

namespace {

struct CheckpointWriter {
    const std::vector<std::uint64_t>& nfes;
    RunRecord& rec;
    std::size_t next = 0;

    void observe(std::uint64_t used, double best_fev) {
        while (next < nfes.size() && used >= nfes[next]) {
            rec.checkpoint_fevs.push_back(best_fev);
            ++next;
        }
    }
    void finish(double best_fev) {
        while (next < nfes.size()) {
            rec.checkpoint_fevs.push_back(best_fev);
            ++next;
        }
    }
};

} // namespace

RunRecord run(const DeConfig& config, const TestFunction& f, OblStrategy* obl,
              const std::vector<std::uint64_t>& checkpoints) {
    config.validate();
    const std::uint64_t budget_max =
        config.budget_max ? config.budget_max : 10000ULL * f.dimension();
    if (budget_max < static_cast<std::uint64_t>(config.NP))
        throw std::invalid_argument("run: budget must cover initialization");

    const auto t0 = std::chrono::steady_clock::now();

    RngStream rng(config.seed);
    EvaluationBudget budget(budget_max);
    const std::size_t np = static_cast<std::size_t>(config.NP);

    RunRecord rec;
    rec.seed = config.seed;
    rec.function = f.name();
    rec.dimension = f.dimension();
    rec.checkpoint_nfes = checkpoints;
    CheckpointWriter cp{checkpoints, rec};

    Population pop = initialize(config, f, budget, rng);
    double best = pop.best().fitness_value();
    cp.observe(budget.used(), fev(best, f));

    // initialization-phase opposition
    if (obl) {
        const OblOutcome out = obl->apply(pop, f.bounds(), f, budget, rng, /*init_phase=*/true);
        if (out.applied) {
            rec.init_obl_evals = out.evals;
            best = std::min(best, pop.best().fitness_value());
            cp.observe(budget.used(), fev(best, f));
        }
    }

    std::vector<double> trial;
    std::vector<Individual> next; // reused across generations to avoid reallocation
    for (;;) {
        const double nfe_fraction =
            static_cast<double>(budget.used()) / static_cast<double>(budget_max);
        const bool jump = obl && obl->policy().should_jump(rng, nfe_fraction);

        if (jump) {
            const OblOutcome out =
                obl->apply(pop, f.bounds(), f, budget, rng, /*init_phase=*/false);
            if (!out.applied) break; // phase refused; remaining budget too small
            const auto& v = obl->config().variant;
            if (v == OblVariant::betacobl || v == OblVariant::ibetacobl) {
                if (out.used_mu_plus_lambda)
                    ++rec.mu_plus_jumps;
                else
                    ++rec.mu_comma_jumps;
            } else {
                ++rec.classic_jumps;
            }
        } else {
            if (!budget.can(np)) break;
            // synchronous generation: trials compete against the g-snapshot
            next.resize(np);
            for (std::size_t i = 0; i < np; ++i) {
                auto mutant = mutate_rand1(pop, i, config.F, f.bounds(), rng);
                trial = binomial_crossover(pop.members[i].genome, mutant, config.CR, rng);
                const double tf = evaluate(f, trial, budget);
                if (tf <= pop.members[i].fitness_value()) {
                    next[i].genome = std::move(trial);
                    next[i].fitness = tf;
                } else {
                    next[i] = pop.members[i];
                }
            }
            std::swap(pop.members, next);
            ++rec.de_generations;
        }
        ++pop.generation;
        best = std::min(best, pop.best().fitness_value());
        cp.observe(budget.used(), fev(best, f));
    }

    rec.final_fev = fev(best, f);
    cp.finish(rec.final_fev);
    rec.nfes_used = budget.used();
    rec.wall_ms = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    return rec;
}

} // namespace oppde
