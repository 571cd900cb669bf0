#include "oppde/obl.hpp"

#include <algorithm>
#include <cmath>

namespace oppde {

// --- opposite-point operators ----------------------------------------------

std::vector<double> type1_opposite(const std::vector<double>& x, const Bounds& bounds) {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = bounds.min()[j] + bounds.max()[j] - x[j];
    return out;
}

std::vector<double> quasi_opposite(const std::vector<double>& x, const Bounds& bounds,
                                   RngStream& rng) {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double c = bounds.center(j);
        const double opp = bounds.min()[j] + bounds.max()[j] - x[j];
        out[j] = c + rng.uniform01() * (opp - c);
    }
    return out;
}

std::vector<double> quasi_reflected(const std::vector<double>& x, const Bounds& bounds,
                                    RngStream& rng) {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double c = bounds.center(j);
        out[j] = c + rng.uniform01() * (x[j] - c);
    }
    return out;
}

std::vector<double> current_optimum_opposite(const std::vector<double>& x,
                                             const std::vector<double>& x_best,
                                             const Bounds& bounds) {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = 2.0 * x_best[j] - x[j];
    return clamp_to_bounds(std::move(out), bounds);
}

std::vector<double> generalized_opposite(const std::vector<double>& x,
                                         const std::vector<double>& pop_min,
                                         const std::vector<double>& pop_max,
                                         double k, const Bounds& bounds) {
    std::vector<double> out(x.size());
    for (std::size_t j = 0; j < x.size(); ++j)
        out[j] = k * (pop_min[j] + pop_max[j]) - x[j];
    return clamp_to_bounds(std::move(out), bounds);
}

// --- beta opposite ----------------------------------------------------------

namespace {

// peak / alpha / beta from mode and spread; shared by both branches
BetaOppositeParams shape_params(double mode, double spread) {
    BetaOppositeParams p;
    p.mode = mode;
    p.spread = spread;
    if (mode < 0.5) {
        p.peak = ((spread - 2.0) * mode + 1.0) / (spread * (1.0 - mode));
        p.alpha = spread * p.peak;
        p.beta = spread;
    } else {
        p.peak = (2.0 - spread) / spread + (spread - 1.0) / (spread * mode);
        p.alpha = spread;
        p.beta = spread * p.peak;
    }
    return p;
}

constexpr double kMinConcaveSpread = 1.0 + 1e-6;

} // namespace

BetaOppositeParams concave_params(double x_j, double min_j, double max_j,
                                  double norm_div, double gaussian_draw) {
    if (!(norm_div > 0.0))
        throw std::invalid_argument("concave_params: normDiv must be > 0");
    const double range = max_j - min_j;
    const double mode = ((min_j + max_j - x_j) - min_j) / range;
    double spread = std::pow(1.0 / std::sqrt(norm_div), 1.0 + gaussian_draw);
    // a negative Gaussian exponent can push the spread below 1, which would
    // silently turn the branch convex; keep it unimodal
    if (spread < kMinConcaveSpread) spread = kMinConcaveSpread;
    return shape_params(mode, spread);
}

BetaOppositeParams convex_params(double x_j, double min_j, double max_j,
                                 double norm_div) {
    if (norm_div < 0.0)
        throw std::invalid_argument("convex_params: normDiv must be >= 0");
    const double mode = (x_j - min_j) / (max_j - min_j);
    const double spread = 0.1 * std::sqrt(norm_div) + 0.9;
    return shape_params(mode, spread);
}

std::vector<double> beta_opposite(const std::vector<double>& x, const Bounds& bounds,
                                  double norm_div, RngStream& rng) {
    if (norm_div <= 0.0) {
        // collocated population: spread would divide by zero
        return type1_opposite(x, bounds);
    }
    std::vector<double> out(x.size());
    const bool concave = rng.uniform01() <= 0.5;
    const double gauss = concave ? rng.gaussian(0.0, 0.5) : 0.0;
    // the spread depends only on the diversity and the per-individual Gaussian
    // draw, so it is computed once and shared across dimensions
    double spread;
    if (concave) {
        spread = std::pow(1.0 / std::sqrt(norm_div), 1.0 + gauss);
        if (spread < kMinConcaveSpread) spread = kMinConcaveSpread;
    } else {
        spread = 0.1 * std::sqrt(norm_div) + 0.9;
    }
    const double* lo_p = bounds.min().data();
    const double* hi_p = bounds.max().data();
    for (std::size_t j = 0; j < x.size(); ++j) {
        const double lo = lo_p[j], hi = hi_p[j];
        const double mode = concave ? ((lo + hi - x[j]) - lo) / (hi - lo)
                                    : (x[j] - lo) / (hi - lo);
        const BetaOppositeParams p = shape_params(mode, spread);
        out[j] = lo + (hi - lo) * rng.beta(p.alpha, p.beta);
    }
    return out;
}

std::vector<double> partial_opposite(const std::vector<double>& x,
                                     const std::vector<double>& complete_opposite,
                                     double cr, CrossoverKind kind, RngStream& rng) {
    return crossover(kind, x, complete_opposite, cr, kDefaultSegmentLength, rng);
}

// --- jumping policy ---------------------------------------------------------

bool JumpingPolicy::should_jump(RngStream& rng, double nfe_fraction) {
    double rate;
    switch (cfg_.kind) {
        case JumpingPolicyKind::constant:
            rate = cfg_.rate;
            break;
        case JumpingPolicyKind::linear_decreasing:
            rate = cfg_.rate_max + (cfg_.rate_min - cfg_.rate_max) * nfe_fraction;
            break;
        case JumpingPolicyKind::protective:
            rate = disabled_ ? 0.0 : cfg_.rate;
            break;
        default:
            rate = cfg_.rate;
    }
    rate = std::clamp(rate, 0.0, 1.0);
    // the coin is drawn even at rate 0 so a policy change cannot shift the
    // downstream draw sequence
    const double u = rng.uniform01();
    return !disabled_ && u <= rate && rate > 0.0;
}

void JumpingPolicy::report_success_rate(double rate) {
    if (cfg_.kind != JumpingPolicyKind::protective || disabled_) return;
    if (has_last_ && rate < last_rate_) {
        if (++decreases_ >= cfg_.failure_window) disabled_ = true;
    } else {
        decreases_ = 0;
    }
    last_rate_ = rate;
    has_last_ = true;
}

// --- variants ---------------------------------------------------------------

OblVariant obl_variant_from_name(const std::string& name) {
    if (name == "obl") return OblVariant::obl;
    if (name == "qobl") return OblVariant::qobl;
    if (name == "qrobl") return OblVariant::qrobl;
    if (name == "coobl") return OblVariant::coobl;
    if (name == "gobl") return OblVariant::gobl;
    if (name == "betacobl") return OblVariant::betacobl;
    if (name == "ibetacobl") return OblVariant::ibetacobl;
    throw std::invalid_argument("unknown OBL variant '" + name + "'");
}

std::string obl_variant_name(OblVariant v) {
    switch (v) {
        case OblVariant::obl: return "obl";
        case OblVariant::qobl: return "qobl";
        case OblVariant::qrobl: return "qrobl";
        case OblVariant::coobl: return "coobl";
        case OblVariant::gobl: return "gobl";
        case OblVariant::betacobl: return "betacobl";
        case OblVariant::ibetacobl: return "ibetacobl";
    }
    return "?";
}

OblConfig make_default_obl_config(OblVariant v, double jumping_rate) {
    OblConfig cfg;
    cfg.variant = v;
    cfg.policy.rate = jumping_rate;
    if (v == OblVariant::betacobl) {
        cfg.partial_crossover = CrossoverKind::binomial;
        cfg.diversity = DiversityKind::min_distance_normdiv;
    } else {
        cfg.partial_crossover = CrossoverKind::multiple_exponential;
        cfg.diversity = DiversityKind::linear_time;
    }
    return cfg;
}

// --- beta family phases -----------------------------------------------------

namespace {

Individual make_partial(const Individual& orig, const std::vector<double>& complete,
                        double cr, const OblConfig& cfg, const Bounds& bounds,
                        const TestFunction& f, EvaluationBudget& budget,
                        RngStream& rng) {
    Individual ind;
    ind.genome = crossover(cfg.partial_crossover, orig.genome, complete, cr,
                           cfg.segment_length, rng);
    ind.genome = clamp_to_bounds(std::move(ind.genome), bounds);
    ind.fitness = evaluate(f, ind.genome, budget);
    return ind;
}

} // namespace

OblOutcome mu_plus_lambda_phase(Population& pop, const Bounds& bounds,
                                const TestFunction& f, EvaluationBudget& budget,
                                RngStream& rng, const OblConfig& cfg, double norm_div) {
    OblOutcome out;
    const std::size_t np = pop.size();
    if (!budget.can(2 * np)) return out; // phase refused
    out.applied = true;
    out.used_mu_plus_lambda = true;

    std::vector<Individual> opposites;
    opposites.reserve(2 * np);
    for (std::size_t i = 0; i < np; ++i) {
        const auto& orig = pop.members[i];
        const auto complete = beta_opposite(orig.genome, bounds, norm_div, rng);
        opposites.push_back(make_partial(orig, complete, 0.1, cfg, bounds, f, budget, rng));
        opposites.push_back(make_partial(orig, complete, 0.9, cfg, bounds, f, budget, rng));
    }
    out.evals = 2 * np;

    // merge and keep the NP fittest; stable order so the count of surviving
    // opposites is well defined for the success rate
    std::vector<std::size_t> order(3 * np);
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    const auto at = [&](std::size_t i) -> Individual& {
        return i < np ? pop.members[i] : opposites[i - np];
    };
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return at(a).fitness_value() < at(b).fitness_value();
    });

    std::vector<Individual> next;
    next.reserve(np);
    std::size_t accepted_opposites = 0;
    for (std::size_t i = 0; i < np; ++i) {
        if (order[i] >= np) ++accepted_opposites;
        next.push_back(std::move(at(order[i])));
    }
    pop.members = std::move(next);
    out.success_rate = static_cast<double>(accepted_opposites) / static_cast<double>(2 * np);
    return out;
}

OblOutcome mu_comma_lambda_phase(Population& pop, const Bounds& bounds,
                                 const TestFunction& f, EvaluationBudget& budget,
                                 RngStream& rng, const OblConfig& cfg, double norm_div) {
    OblOutcome out;
    const std::size_t np = pop.size();
    const std::size_t worst_count = (np + 1) / 2; // odd NP: worst ceil(NP/2)
    const std::uint64_t cost = 2 * worst_count;
    if (!budget.can(cost)) return out;
    out.applied = true;

    std::stable_sort(pop.members.begin(), pop.members.end(),
                     [](const Individual& a, const Individual& b) {
                         return a.fitness_value() < b.fitness_value();
                     });

    std::size_t replacements = 0;
    for (std::size_t i = np - worst_count; i < np; ++i) {
        auto& target = pop.members[i];
        const auto complete = beta_opposite(target.genome, bounds, norm_div, rng);
        const Individual p1 = make_partial(target, complete, 0.1, cfg, bounds, f, budget, rng);
        const Individual p2 = make_partial(target, complete, 0.9, cfg, bounds, f, budget, rng);
        const Individual& better = (p1.fitness_value() <= p2.fitness_value()) ? p1 : p2;
        if (better.fitness_value() <= target.fitness_value()) {
            target = better;
            ++replacements;
        }
    }
    out.evals = cost;
    out.success_rate = static_cast<double>(replacements) / static_cast<double>(worst_count);
    return out;
}

// --- strategy ---------------------------------------------------------------

OblOutcome OblStrategy::apply_beta_family(Population& pop, const Bounds& bounds,
                                          const TestFunction& f, EvaluationBudget& budget,
                                          RngStream& rng) {
    const double div = norm_div(cfg_.diversity, pop, bounds);
    if (div > cfg_.diversity_threshold)
        return mu_plus_lambda_phase(pop, bounds, f, budget, rng, cfg_, div);
    return mu_comma_lambda_phase(pop, bounds, f, budget, rng, cfg_, div);
}

OblOutcome OblStrategy::apply_classic(Population& pop, const Bounds& bounds,
                                      const TestFunction& f, EvaluationBudget& budget,
                                      RngStream& rng, bool init_phase) {
    OblOutcome out;
    const std::size_t np = pop.size();
    if (!budget.can(np)) return out;
    out.applied = true;

    // generation jumps oppose within the dynamic population interval; the
    // initialization jump uses the static bounds
    std::vector<double> lo = bounds.min(), hi = bounds.max();
    if (!init_phase) {
        lo = pop.members[0].genome;
        hi = pop.members[0].genome;
        for (const auto& m : pop.members)
            for (std::size_t j = 0; j < lo.size(); ++j) {
                lo[j] = std::min(lo[j], m.genome[j]);
                hi[j] = std::max(hi[j], m.genome[j]);
            }
    }
    const std::size_t best_idx = [&] {
        std::size_t b = 0;
        for (std::size_t i = 1; i < np; ++i)
            if (pop.members[i].fitness_value() < pop.members[b].fitness_value()) b = i;
        return b;
    }();
    const double k = (cfg_.variant == OblVariant::gobl) ? rng.uniform01() : 0.0;

    std::vector<Individual> opposites;
    opposites.reserve(np);
    for (const auto& m : pop.members) {
        std::vector<double> opp;
        switch (cfg_.variant) {
            case OblVariant::obl:
                opp.resize(m.genome.size());
                for (std::size_t j = 0; j < opp.size(); ++j)
                    opp[j] = lo[j] + hi[j] - m.genome[j];
                opp = clamp_to_bounds(std::move(opp), bounds);
                break;
            case OblVariant::qobl: {
                opp.resize(m.genome.size());
                for (std::size_t j = 0; j < opp.size(); ++j) {
                    const double c = 0.5 * (lo[j] + hi[j]);
                    const double o = lo[j] + hi[j] - m.genome[j];
                    opp[j] = c + rng.uniform01() * (o - c);
                }
                opp = clamp_to_bounds(std::move(opp), bounds);
                break;
            }
            case OblVariant::qrobl: {
                opp.resize(m.genome.size());
                for (std::size_t j = 0; j < opp.size(); ++j) {
                    const double c = 0.5 * (lo[j] + hi[j]);
                    opp[j] = c + rng.uniform01() * (m.genome[j] - c);
                }
                opp = clamp_to_bounds(std::move(opp), bounds);
                break;
            }
            case OblVariant::coobl:
                opp = current_optimum_opposite(m.genome, pop.members[best_idx].genome, bounds);
                break;
            case OblVariant::gobl:
                opp = generalized_opposite(m.genome, lo, hi, k, bounds);
                break;
            default:
                throw std::logic_error("apply_classic: beta variant routed here");
        }
        Individual ind;
        ind.genome = std::move(opp);
        ind.fitness = evaluate(f, ind.genome, budget);
        opposites.push_back(std::move(ind));
    }
    out.evals = np;

    std::vector<const Individual*> merged;
    merged.reserve(2 * np);
    for (const auto& m : pop.members) merged.push_back(&m);
    for (const auto& o : opposites) merged.push_back(&o);
    std::stable_sort(merged.begin(), merged.end(), [](const Individual* a, const Individual* b) {
        return a->fitness_value() < b->fitness_value();
    });
    std::vector<Individual> next;
    next.reserve(np);
    std::size_t accepted = 0;
    for (std::size_t i = 0; i < np; ++i) {
        if (merged[i] >= opposites.data() && merged[i] < opposites.data() + np) ++accepted;
        next.push_back(*merged[i]);
    }
    pop.members = std::move(next);
    out.success_rate = static_cast<double>(accepted) / static_cast<double>(np);
    return out;
}

OblOutcome OblStrategy::apply(Population& pop, const Bounds& bounds, const TestFunction& f,
                              EvaluationBudget& budget, RngStream& rng, bool init_phase) {
    OblOutcome out;
    if (cfg_.variant == OblVariant::betacobl || cfg_.variant == OblVariant::ibetacobl)
        out = apply_beta_family(pop, bounds, f, budget, rng);
    else
        out = apply_classic(pop, bounds, f, budget, rng, init_phase);
    if (out.applied) policy_.report_success_rate(out.success_rate);
    return out;
}

} // namespace oppde
