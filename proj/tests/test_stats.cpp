#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oppde/rng.hpp"
#include "oppde/stats.hpp"

using namespace oppde;
using namespace oppde::stats;

namespace {

// Brute-force exact two-sided rank-sum p-value over all C(n+m, n) splits.
double brute_force_p(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> all = a;
    all.insert(all.end(), b.begin(), b.end());
    const std::size_t n = all.size(), na = a.size();
    // midranks
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](auto i, auto j) { return all[i] < all[j]; });
    std::vector<double> rank(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && all[order[j + 1]] == all[order[i]]) ++j;
        const double r = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) rank[order[k]] = r;
        i = j + 1;
    }
    double observed = 0;
    for (std::size_t k = 0; k < na; ++k) observed += rank[k];

    // enumerate all subsets of size na; two-sided p = 2 * min(P(W<=w), P(W>=w))
    std::vector<std::size_t> idx(na);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    long total = 0, le = 0, ge = 0;
    while (true) {
        double s = 0;
        for (auto k : idx) s += rank[k];
        ++total;
        if (s <= observed + 1e-9) ++le;
        if (s >= observed - 1e-9) ++ge;
        // next combination
        std::size_t pos = na;
        while (pos > 0 && idx[pos - 1] == n - na + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t k = pos; k < na; ++k) idx[k] = idx[k - 1] + 1;
    }
    const double p = 2.0 * static_cast<double>(std::min(le, ge)) / static_cast<double>(total);
    return std::min(1.0, p);
}

} // namespace

TEST_CASE("wilcoxon: identical samples are equal with p = 1") {
    const std::vector<double> a{1, 2, 3, 4, 5};
    const auto v = wilcoxon_rank_sum(a, a);
    CHECK(v.symbol == Verdict::equal);
    CHECK(v.p_value == doctest::Approx(1.0));
}

TEST_CASE("wilcoxon: clearly separated samples give the right direction") {
    const std::vector<double> lo{1, 2, 3, 4, 5, 6};
    const std::vector<double> hi{10, 11, 12, 13, 14, 15};
    const auto plus = wilcoxon_rank_sum(lo, hi);
    CHECK(plus.symbol == Verdict::better);
    CHECK(plus.exact);
    // fully separated: p = 2 / C(12,6) = 2/924
    CHECK(plus.p_value == doctest::Approx(2.0 / 924.0).epsilon(1e-9));
    const auto minus = wilcoxon_rank_sum(hi, lo);
    CHECK(minus.symbol == Verdict::worse);
    CHECK(minus.p_value == doctest::Approx(plus.p_value).epsilon(1e-12));
}

TEST_CASE("wilcoxon exact path matches the brute-force oracle, ties included") {
    RngStream rng(61);
    for (int t = 0; t < 40; ++t) {
        const std::size_t na = static_cast<std::size_t>(rng.uniform_int(3, 8));
        const std::size_t nb = static_cast<std::size_t>(rng.uniform_int(3, 8));
        std::vector<double> a(na), b(nb);
        // coarse grid forces ties
        for (auto& v : a) v = static_cast<double>(rng.uniform_int(0, 5));
        for (auto& v : b) v = static_cast<double>(rng.uniform_int(0, 5));
        const auto prod = wilcoxon_rank_sum(a, b);
        REQUIRE(prod.exact);
        CHECK(prod.p_value == doctest::Approx(brute_force_p(a, b)).epsilon(1e-10));
    }
}

TEST_CASE("wilcoxon approximate path tracks the exact value on size-10 samples") {
    RngStream rng(62);
    std::vector<double> a(10), b(10);
    for (auto& v : a) v = rng.uniform01();
    for (auto& v : b) v = rng.uniform01() + 0.3;
    const auto exact = wilcoxon_rank_sum(a, b);
    CHECK(exact.exact);
    // widen one sample past the exact threshold but keep distributions equal in
    // shape: approximation should stay near the analogous exact two-sample p
    std::vector<double> a2 = a, b2 = b;
    a2.push_back(rng.uniform01());
    const auto approx = wilcoxon_rank_sum(a2, b2);
    CHECK_FALSE(approx.exact);
    CHECK(approx.p_value > 0.0);
    CHECK(approx.p_value < 1.0);
}

TEST_CASE("friedman chi-square from average ranks, hand-checked") {
    // 3 algorithms, 4 problems, ranks assigned by construction:
    // scores chosen so algorithm 0 is always rank 1, 1 always rank 2, 2 rank 3
    const std::vector<std::vector<double>> scores{
        {1.0, 2.0, 3.0}, {0.1, 0.2, 0.3}, {5.0, 6.0, 7.0}, {2.0, 4.0, 8.0}};
    const auto r = friedman(scores);
    CHECK(r.average_ranks == std::vector<double>{1.0, 2.0, 3.0});
    CHECK(r.df == 2);
    // chi2 = 12*4/(3*4) * (1 + 4 + 9) - 3*4*4 = 4*14 - 48 = 8
    CHECK(r.chi_square == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(r.p_value == doctest::Approx(std::exp(-4.0)).epsilon(1e-9)); // chi2 sf, df 2
}

TEST_CASE("friedman handles ties with midranks") {
    const std::vector<std::vector<double>> scores{{1.0, 1.0, 2.0}, {3.0, 1.0, 1.0}};
    const auto r = friedman(scores);
    // row 1: ranks 1.5, 1.5, 3; row 2: 3, 1.5, 1.5
    CHECK(r.average_ranks[0] == doctest::Approx(2.25));
    CHECK(r.average_ranks[1] == doctest::Approx(1.5));
    CHECK(r.average_ranks[2] == doctest::Approx(2.25));
}

TEST_CASE("chi-square survival function against known values") {
    CHECK(chi_square_sf(0.0, 3) == doctest::Approx(1.0));
    CHECK(chi_square_sf(2.0, 2) == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));
    // df=1: P(chi2 > x) = 2*(1 - Phi(sqrt(x)))
    CHECK(chi_square_sf(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(chi_square_sf(11.070497693516351, 5) == doctest::Approx(0.05).epsilon(1e-6));
}

TEST_CASE("normal two-sided tail") {
    CHECK(normal_two_sided_p(0.0) == doctest::Approx(1.0));
    CHECK(normal_two_sided_p(1.959963984540054) == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(normal_two_sided_p(-1.959963984540054) == doctest::Approx(0.05).epsilon(1e-9));
}

TEST_CASE("hochberg adjustment, hand-worked example") {
    // raw ps: 0.01, 0.04, 0.03, 0.005
    // descending: 0.04(mult 1), 0.03(mult 2 -> 0.06, min 0.04... )
    const std::vector<double> raw{0.01, 0.04, 0.03, 0.005};
    const auto adj = hochberg_adjust(raw);
    REQUIRE(adj.size() == 4);
    // step-up: sorted desc 0.04, 0.03, 0.01, 0.005 with multipliers 1,2,3,4
    // candidates 0.04, 0.06, 0.03, 0.02 -> running min 0.04, 0.04, 0.03, 0.02
    CHECK(adj[1] == doctest::Approx(0.04));
    CHECK(adj[2] == doctest::Approx(0.04));
    CHECK(adj[0] == doctest::Approx(0.03));
    CHECK(adj[3] == doctest::Approx(0.02));
    for (std::size_t i = 0; i < 4; ++i) CHECK(adj[i] >= raw[i]);
}

TEST_CASE("hochberg caps at one and preserves order for a single p") {
    const auto adj = hochberg_adjust({0.7, 0.9, 0.95});
    for (double p : adj) CHECK(p <= 1.0);
    CHECK(hochberg_adjust({0.2}) == std::vector<double>{0.2});
    CHECK(hochberg_adjust({}).empty());
}

TEST_CASE("median of odd and even length vectors") {
    CHECK(median({3.0, 1.0, 2.0}) == 2.0);
    CHECK(median({4.0, 1.0, 3.0, 2.0}) == doctest::Approx(2.5));
    CHECK(median({7.0}) == 7.0);
}
