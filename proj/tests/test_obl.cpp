#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oppde/obl.hpp"

using namespace oppde;

namespace {

Population evaluated_pop(const TestFunction& f, const Bounds& bounds, std::size_t np,
                         EvaluationBudget& budget, RngStream& rng) {
    Population pop;
    for (std::size_t i = 0; i < np; ++i) {
        Individual ind{random_point(bounds, rng), std::nullopt};
        ind.fitness = evaluate(f, ind.genome, budget);
        pop.members.push_back(std::move(ind));
    }
    return pop;
}

} // namespace

TEST_CASE("type-I opposite is an involution with the hand value") {
    const auto bounds = Bounds::uniform(-2.0, 6.0, 3);
    const std::vector<double> x{-1.0, 0.0, 5.0};
    const auto o = type1_opposite(x, bounds);
    CHECK(o == std::vector<double>{5.0, 4.0, -1.0});
    CHECK(type1_opposite(o, bounds) == x);
}

TEST_CASE("quasi opposite lies between center and type-I opposite") {
    const auto bounds = Bounds::uniform(-4.0, 4.0, 4);
    RngStream rng(21);
    for (int t = 0; t < 500; ++t) {
        const auto x = random_point(bounds, rng);
        const auto opp = type1_opposite(x, bounds);
        const auto q = quasi_opposite(x, bounds, rng);
        for (std::size_t j = 0; j < 4; ++j) {
            const double lo = std::min(bounds.center(j), opp[j]);
            const double hi = std::max(bounds.center(j), opp[j]);
            CHECK(q[j] >= lo);
            CHECK(q[j] <= hi);
        }
    }
}

TEST_CASE("quasi reflected lies between center and the original point") {
    const auto bounds = Bounds::uniform(-4.0, 4.0, 4);
    RngStream rng(22);
    for (int t = 0; t < 500; ++t) {
        const auto x = random_point(bounds, rng);
        const auto q = quasi_reflected(x, bounds, rng);
        for (std::size_t j = 0; j < 4; ++j) {
            const double lo = std::min(bounds.center(j), x[j]);
            const double hi = std::max(bounds.center(j), x[j]);
            CHECK(q[j] >= lo);
            CHECK(q[j] <= hi);
        }
    }
}

TEST_CASE("current-optimum opposite reflects through the best and clamps") {
    const auto bounds = Bounds::uniform(-10.0, 10.0, 2);
    const std::vector<double> best{1.0, -2.0};
    CHECK(current_optimum_opposite({3.0, 0.0}, best, bounds) ==
          std::vector<double>{-1.0, -4.0});
    // 2*1 - (-9.5) = 11.5 clamps to 10
    CHECK(current_optimum_opposite({-9.5, -2.0}, best, bounds) ==
          std::vector<double>{10.0, -2.0});
}

TEST_CASE("generalized opposite formula with shared k") {
    const auto bounds = Bounds::uniform(-100.0, 100.0, 2);
    const std::vector<double> lo{0.0, -2.0}, hi{4.0, 8.0};
    const auto g = generalized_opposite({1.0, 0.0}, lo, hi, 0.5, bounds);
    // k*(lo+hi) - x = 0.5*4 - 1 = 1 and 0.5*6 - 0 = 3
    CHECK(g == std::vector<double>{1.0, 3.0});
}

TEST_CASE("beta shape parameters put the stationary point exactly at the mode") {
    RngStream rng(23);
    for (int t = 0; t < 2000; ++t) {
        const double xj = rng.uniform01() * 8.0 - 4.0;
        const double nd = 1e-4 + rng.uniform01() * 0.9;
        const double g = rng.gaussian(0.0, 0.5);
        const auto c = concave_params(xj, -4.0, 4.0, nd, g);
        CHECK(c.spread > 1.0);
        CHECK(c.alpha > 1.0);
        CHECK(c.beta > 1.0);
        CHECK((c.alpha - 1.0) / (c.alpha + c.beta - 2.0) ==
              doctest::Approx(c.mode).epsilon(1e-9));

        const auto v = convex_params(xj, -4.0, 4.0, nd);
        CHECK(v.spread >= 0.9);
        CHECK(v.spread <= 1.0);
        CHECK(v.alpha < 1.0);
        CHECK(v.beta < 1.0);
        CHECK((v.alpha - 1.0) / (v.alpha + v.beta - 2.0) ==
              doctest::Approx(v.mode).epsilon(1e-9));
    }
}

TEST_CASE("beta opposite stays in bounds and degenerates cleanly at zero diversity") {
    const auto bounds = Bounds::uniform(-30.0, 70.0, 6);
    RngStream rng(24);
    for (int t = 0; t < 300; ++t) {
        const auto x = random_point(bounds, rng);
        const auto o = beta_opposite(x, bounds, 0.3, rng);
        CHECK(bounds.contains(o));
    }
    const std::vector<double> x{-10.0, 0.0, 10.0, 20.0, 30.0, 40.0};
    CHECK(beta_opposite(x, bounds, 0.0, rng) == type1_opposite(x, bounds));
}

TEST_CASE("partial opposite keeps at least one opposite coordinate") {
    const auto bounds = Bounds::uniform(0.0, 1.0, 10);
    RngStream rng(25);
    std::vector<double> x(10), opp(10);
    for (int j = 0; j < 10; ++j) {
        x[j] = j;
        opp[j] = 100 + j;
    }
    for (int t = 0; t < 500; ++t) {
        const auto p = partial_opposite(x, opp, 0.1, CrossoverKind::binomial, rng);
        int from_opp = 0;
        for (int j = 0; j < 10; ++j) from_opp += p[j] == opp[j] ? 1 : 0;
        CHECK(from_opp >= 1);
    }
}

TEST_CASE("jumping policy: constant rate statistics") {
    RngStream rng(26);
    JumpingPolicy pol({JumpingPolicyKind::constant, 0.3});
    int jumps = 0;
    const int n = 20000;
    for (int t = 0; t < n; ++t) jumps += pol.should_jump(rng, 0.5) ? 1 : 0;
    CHECK(static_cast<double>(jumps) / n == doctest::Approx(0.3).epsilon(0.05));
}

TEST_CASE("jumping policy: linear schedule hits its endpoints") {
    RngStream rng(27);
    JumpingPolicyConfig cfg;
    cfg.kind = JumpingPolicyKind::linear_decreasing;
    cfg.rate_max = 0.3;
    cfg.rate_min = 0.0;
    JumpingPolicy pol(cfg);
    int early = 0, late = 0;
    const int n = 20000;
    for (int t = 0; t < n; ++t) early += pol.should_jump(rng, 0.0) ? 1 : 0;
    for (int t = 0; t < n; ++t) late += pol.should_jump(rng, 1.0) ? 1 : 0;
    CHECK(static_cast<double>(early) / n == doctest::Approx(0.3).epsilon(0.05));
    CHECK(late == 0);
}

TEST_CASE("jumping policy: protective disables after three strict decreases") {
    RngStream rng(28);
    JumpingPolicyConfig cfg;
    cfg.kind = JumpingPolicyKind::protective;
    cfg.rate = 1.0; // always jump until disabled
    cfg.failure_window = 3;
    JumpingPolicy pol(cfg);
    CHECK(pol.should_jump(rng, 0.0));
    pol.report_success_rate(0.5);
    CHECK(pol.should_jump(rng, 0.0));
    pol.report_success_rate(0.4);
    CHECK(pol.should_jump(rng, 0.0));
    pol.report_success_rate(0.3);
    CHECK(pol.should_jump(rng, 0.0));
    pol.report_success_rate(0.2); // third consecutive decrease
    CHECK(pol.disabled());
    CHECK_FALSE(pol.should_jump(rng, 0.0));
    // a non-decreasing report resets the streak in a fresh policy
    JumpingPolicy pol2(cfg);
    pol2.report_success_rate(0.5);
    pol2.report_success_rate(0.4);
    pol2.report_success_rate(0.4); // equal, not a strict decrease
    pol2.report_success_rate(0.3);
    pol2.report_success_rate(0.2);
    CHECK_FALSE(pol2.disabled());
    pol2.report_success_rate(0.1);
    CHECK(pol2.disabled());
}

TEST_CASE("(mu+lambda) phase: cost, elitism and refusal") {
    const std::size_t np = 20, d = 5;
    const auto bounds = Bounds::uniform(-5.0, 5.0, d);
    const auto f = make_function("sphere", d);
    RngStream rng(29);
    EvaluationBudget budget(1000);
    auto pop = evaluated_pop(f, bounds, np, budget, rng);
    const double best_before = pop.best().fitness_value();
    const auto used_before = budget.used();
    const auto cfg = make_default_obl_config(OblVariant::ibetacobl, 0.05);
    const auto out = mu_plus_lambda_phase(pop, bounds, f, budget, rng, cfg, 0.2);
    CHECK(out.applied);
    CHECK(out.evals == 2 * np);
    CHECK(budget.used() - used_before == 2 * np);
    CHECK(pop.size() == np);
    CHECK(pop.best().fitness_value() <= best_before);
    CHECK(out.success_rate >= 0.0);
    CHECK(out.success_rate <= 1.0);

    EvaluationBudget tiny(np); // cannot fit 2*NP more
    auto pop2 = pop;
    const auto refused = mu_plus_lambda_phase(pop2, bounds, f, tiny, rng, cfg, 0.2);
    CHECK_FALSE(refused.applied);
    CHECK(refused.evals == 0);
    CHECK(tiny.used() == 0);
}

TEST_CASE("(mu,lambda) phase: cost and guarded replacement") {
    const std::size_t np = 21, d = 5; // odd NP exercises the ceiling
    const auto bounds = Bounds::uniform(-5.0, 5.0, d);
    const auto f = make_function("rastrigin", d);
    RngStream rng(30);
    EvaluationBudget budget(1000);
    auto pop = evaluated_pop(f, bounds, np, budget, rng);
    std::vector<double> before;
    for (const auto& m : pop.members) before.push_back(m.fitness_value());
    std::sort(before.begin(), before.end());
    const auto used_before = budget.used();
    const auto cfg = make_default_obl_config(OblVariant::ibetacobl, 0.05);
    const auto out = mu_comma_lambda_phase(pop, bounds, f, budget, rng, cfg, 0.2);
    CHECK(out.applied);
    CHECK(out.evals == 2 * ((np + 1) / 2));
    CHECK(budget.used() - used_before == out.evals);
    CHECK(pop.size() == np);
    // guarded replacement: sorted fitness vector dominates the old one
    std::vector<double> after;
    for (const auto& m : pop.members) after.push_back(m.fitness_value());
    std::sort(after.begin(), after.end());
    for (std::size_t i = 0; i < np; ++i) CHECK(after[i] <= before[i]);
}

TEST_CASE("strategy routing: classic variants cost NP per application") {
    const std::size_t np = 15, d = 4;
    const auto bounds = Bounds::uniform(-8.0, 8.0, d);
    const auto f = make_function("griewank", d);
    for (auto v : {OblVariant::obl, OblVariant::qobl, OblVariant::qrobl, OblVariant::coobl,
                   OblVariant::gobl}) {
        RngStream rng(31);
        EvaluationBudget budget(10000);
        auto pop = evaluated_pop(f, bounds, np, budget, rng);
        const double best_before = pop.best().fitness_value();
        OblStrategy strat(make_default_obl_config(v, 0.3));
        const auto used_before = budget.used();
        const auto out = strat.apply(pop, bounds, f, budget, rng, /*init_phase=*/false);
        CHECK(out.applied);
        CHECK(out.evals == np);
        CHECK(budget.used() - used_before == np);
        CHECK(pop.size() == np);
        CHECK(pop.best().fitness_value() <= best_before);
        for (const auto& m : pop.members) CHECK(bounds.contains(m.genome));
    }
}

TEST_CASE("strategy routing: beta family switches on the diversity threshold") {
    const std::size_t np = 16, d = 6;
    const auto bounds = Bounds::uniform(-50.0, 50.0, d);
    const auto f = make_function("sphere", d);
    RngStream rng(32);
    EvaluationBudget budget(100000);
    auto pop = evaluated_pop(f, bounds, np, budget, rng);

    // wide random population: diversity far above the 1e-6 threshold
    OblStrategy strat(make_default_obl_config(OblVariant::ibetacobl, 0.05));
    auto wide = pop;
    const auto out1 = strat.apply(wide, bounds, f, budget, rng, false);
    CHECK(out1.applied);
    CHECK(out1.used_mu_plus_lambda);
    CHECK(out1.evals == 2 * np);

    // collapsed population: diversity below threshold forces (mu,lambda)
    Population tight;
    for (std::size_t i = 0; i < np; ++i) {
        std::vector<double> x(d, 1.0);
        x[0] += 1e-9 * static_cast<double>(i);
        Individual ind{x, std::nullopt};
        ind.fitness = evaluate(f, ind.genome, budget);
        tight.members.push_back(std::move(ind));
    }
    const auto out2 = strat.apply(tight, bounds, f, budget, rng, false);
    CHECK(out2.applied);
    CHECK_FALSE(out2.used_mu_plus_lambda);
    CHECK(out2.evals == 2 * ((np + 1) / 2));
}

TEST_CASE("variant names round-trip") {
    for (auto v : {OblVariant::obl, OblVariant::qobl, OblVariant::qrobl, OblVariant::coobl,
                   OblVariant::gobl, OblVariant::betacobl, OblVariant::ibetacobl}) {
        CHECK(obl_variant_from_name(obl_variant_name(v)) == v);
    }
    CHECK_THROWS_AS(obl_variant_from_name("unknown"), std::invalid_argument);
}

TEST_CASE("variant defaults wire the advertised crossover and diversity") {
    const auto beta = make_default_obl_config(OblVariant::betacobl, 0.05);
    CHECK(beta.partial_crossover == CrossoverKind::binomial);
    CHECK(beta.diversity == DiversityKind::min_distance_normdiv);
    const auto ibeta = make_default_obl_config(OblVariant::ibetacobl, 0.05);
    CHECK(ibeta.partial_crossover == CrossoverKind::multiple_exponential);
    CHECK(ibeta.diversity == DiversityKind::linear_time);
    CHECK(ibeta.policy.rate == 0.05);
}
