#pragma once

#include <string>
#include <vector>

#include "oppde/core.hpp"
#include "oppde/crossover.hpp"
#include "oppde/diversity.hpp"
#include "oppde/objective.hpp"

namespace oppde {

// ---------------------------------------------------------------------------
// Opposite-point operators
// ---------------------------------------------------------------------------

/// Type-I opposite: x'[j] = min[j] + max[j] - x[j]. An involution.
std::vector<double> type1_opposite(const std::vector<double>& x, const Bounds& bounds);

/// Per dimension, uniform draw between the box center and the type-I opposite.
std::vector<double> quasi_opposite(const std::vector<double>& x, const Bounds& bounds,
                                   RngStream& rng);

/// Per dimension, uniform draw between the box center and the original point.
std::vector<double> quasi_reflected(const std::vector<double>& x, const Bounds& bounds,
                                    RngStream& rng);

/// Reflection through the current best, clamped to bounds.
std::vector<double> current_optimum_opposite(const std::vector<double>& x,
                                             const std::vector<double>& x_best,
                                             const Bounds& bounds);

/// x'[j] = k * (pop_min[j] + pop_max[j]) - x[j] with one shared k per jump,
/// clamped to bounds.
std::vector<double> generalized_opposite(const std::vector<double>& x,
                                         const std::vector<double>& pop_min,
                                         const std::vector<double>& pop_max,
                                         double k, const Bounds& bounds);

// ---------------------------------------------------------------------------
// Beta opposite generation
// ---------------------------------------------------------------------------

/// Shape parameters of the concave/convex opposite density for one
/// coordinate. The density's stationary point (mode of the concave branch,
/// anti-mode of the convex branch) sits at (alpha-1)/(alpha+beta-2) == mode.
struct BetaOppositeParams {
    double mode;
    double spread;
    double peak;
    double alpha;
    double beta;
};

/// Concave branch: mode is the normalized position of the type-I opposite,
/// spread = (1/sqrt(normDiv))^(1+g) with one Gaussian draw g ~ N(0,0.5) per
/// individual, clamped just above 1 so the density stays unimodal.
/// Requires normDiv > 0.
BetaOppositeParams concave_params(double x_j, double min_j, double max_j,
                                  double norm_div, double gaussian_draw);

/// Convex branch: mode is the normalized original point, spread
/// = 0.1*sqrt(normDiv) + 0.9 in [0.9, 1.0].
BetaOppositeParams convex_params(double x_j, double min_j, double max_j,
                                 double norm_div);

/// Complete beta opposite of one individual: one concave/convex coin, then a
/// per-dimension Beta draw mapped affinely into bounds. normDiv = 0 falls
/// back to the type-I opposite (the spread formula would divide by zero).
std::vector<double> beta_opposite(const std::vector<double>& x, const Bounds& bounds,
                                  double norm_div, RngStream& rng);

/// Recombines the original with its complete opposite, the opposite playing
/// the mutant role.
std::vector<double> partial_opposite(const std::vector<double>& x,
                                     const std::vector<double>& complete_opposite,
                                     double cr, CrossoverKind kind, RngStream& rng);

// ---------------------------------------------------------------------------
// Jumping-rate policies
// ---------------------------------------------------------------------------

enum class JumpingPolicyKind { constant, linear_decreasing, protective };

struct JumpingPolicyConfig {
    JumpingPolicyKind kind = JumpingPolicyKind::constant;
    double rate = 0.05;        // constant / protective
    double rate_max = 0.3;     // linear_decreasing start
    double rate_min = 0.0;     // linear_decreasing end
    int failure_window = 3;    // protective: consecutive strict decreases
};

/// Per-run jumping state. Protective mode disables jumping permanently after
/// `failure_window` consecutive jumps with strictly decreasing success rate.
class JumpingPolicy {
public:
    explicit JumpingPolicy(JumpingPolicyConfig cfg) : cfg_(cfg) {}

    /// One coin per generation; nfe_fraction in [0,1] drives the decreasing
    /// schedule.
    bool should_jump(RngStream& rng, double nfe_fraction);

    /// Report the accepted-opposite fraction of the jump that just ran.
    void report_success_rate(double rate);

    bool disabled() const { return disabled_; }

private:
    JumpingPolicyConfig cfg_;
    bool disabled_ = false;
    double last_rate_ = -1.0;
    int decreases_ = 0;
    bool has_last_ = false;
};

// ---------------------------------------------------------------------------
// Strategy
// ---------------------------------------------------------------------------

enum class OblVariant { obl, qobl, qrobl, coobl, gobl, betacobl, ibetacobl };

OblVariant obl_variant_from_name(const std::string& name);
std::string obl_variant_name(OblVariant v);

struct OblConfig {
    OblVariant variant = OblVariant::ibetacobl;
    JumpingPolicyConfig policy;
    // betacobl/ibetacobl knobs; defaults follow the variant when unset by
    // make_default_obl_config.
    CrossoverKind partial_crossover = CrossoverKind::multiple_exponential;
    DiversityKind diversity = DiversityKind::linear_time;
    double diversity_threshold = 1e-6;
    double segment_length = kDefaultSegmentLength;
};

/// Variant defaults: betacobl = binomial partial change + min-distance
/// diversity; ibetacobl = multiple exponential + normalized linear diversity.
OblConfig make_default_obl_config(OblVariant v, double jumping_rate);

/// Bookkeeping of one strategy application, for NFE closed-form checks.
struct OblOutcome {
    bool applied = false;            // false when the budget refused the phase
    std::uint64_t evals = 0;
    bool used_mu_plus_lambda = false;
    double success_rate = 0.0;       // accepted-opposite fraction
};

/// The pluggable opposition layer. apply() transforms the population in
/// place and reports evaluations consumed; the run loop owns the jump coin.
class OblStrategy {
public:
    explicit OblStrategy(OblConfig cfg) : cfg_(cfg), policy_(cfg.policy) {}

    const OblConfig& config() const { return cfg_; }
    JumpingPolicy& policy() { return policy_; }

    /// init_phase picks static-bounds opposition for the classic variants;
    /// generation jumps use the dynamic population interval.
    OblOutcome apply(Population& pop, const Bounds& bounds, const TestFunction& f,
                     EvaluationBudget& budget, RngStream& rng, bool init_phase);

private:
    OblOutcome apply_beta_family(Population& pop, const Bounds& bounds,
                                 const TestFunction& f, EvaluationBudget& budget,
                                 RngStream& rng);
    OblOutcome apply_classic(Population& pop, const Bounds& bounds,
                             const TestFunction& f, EvaluationBudget& budget,
                             RngStream& rng, bool init_phase);

    OblConfig cfg_;
    JumpingPolicy policy_;
};

/// (mu+lambda) phase: two partial opposites per individual (CR = 0.1, 0.9)
/// from one complete beta opposite; merge with the originals, keep the NP
/// fittest. Consumes exactly 2*NP evaluations, refused if they do not fit.
OblOutcome mu_plus_lambda_phase(Population& pop, const Bounds& bounds,
                                const TestFunction& f, EvaluationBudget& budget,
                                RngStream& rng, const OblConfig& cfg, double norm_div);

/// (mu,lambda) phase: worst ceil(NP/2) individuals each receive the better
/// of two partial opposites, guarded so fitness never worsens. Consumes
/// 2*ceil(NP/2) evaluations.
OblOutcome mu_comma_lambda_phase(Population& pop, const Bounds& bounds,
                                 const TestFunction& f, EvaluationBudget& budget,
                                 RngStream& rng, const OblConfig& cfg, double norm_div);

} // namespace oppde
