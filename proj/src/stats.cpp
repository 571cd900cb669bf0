#include "oppde/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace oppde::stats {

namespace {

// pooled midranks, returned per input position
std::vector<double> midranks(const std::vector<double>& pooled) {
    const std::size_t n = pooled.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && pooled[idx[j + 1]] == pooled[idx[i]]) ++j;
        const double r = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j + 1));
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = r;
        i = j + 1;
    }
    return ranks;
}

// exact two-sided p for the rank-sum statistic via subset-sum counting over
// doubled ranks (midranks are half-integers)
double exact_two_sided_p(const std::vector<double>& ranks, std::size_t n1, double w_obs) {
    const std::size_t n = ranks.size();
    std::vector<std::int64_t> r2(n);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        r2[i] = std::llround(2.0 * ranks[i]);
        total += r2[i];
    }
    // dp[k][s] = #subsets of size k with doubled-rank sum s
    std::vector<std::vector<double>> dp(n1 + 1,
                                        std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
    dp[0][0] = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t kmax = std::min(i + 1, n1);
        for (std::size_t k = kmax; k >= 1; --k) {
            auto& row = dp[k];
            const auto& prev = dp[k - 1];
            for (std::int64_t s = total; s >= r2[i]; --s)
                row[s] += prev[s - r2[i]];
        }
    }
    const auto& dist = dp[n1];
    double count_total = 0.0, count_le = 0.0, count_ge = 0.0;
    const std::int64_t w2 = std::llround(2.0 * w_obs);
    for (std::int64_t s = 0; s <= total; ++s) {
        const double c = dist[s];
        if (c == 0.0) continue;
        count_total += c;
        if (s <= w2) count_le += c;
        if (s >= w2) count_ge += c;
    }
    const double p = 2.0 * std::min(count_le, count_ge) / count_total;
    return std::min(1.0, p);
}

} // namespace

double normal_two_sided_p(double z) {
    return std::erfc(std::fabs(z) / std::sqrt(2.0));
}

ComparisonVerdict wilcoxon_rank_sum(const std::vector<double>& a,
                                    const std::vector<double>& b, double alpha) {
    if (a.empty() || b.empty())
        throw std::invalid_argument("wilcoxon_rank_sum: samples must be nonempty");
    const std::size_t n1 = a.size(), n2 = b.size(), n = n1 + n2;

    std::vector<double> pooled(a);
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::vector<double> ranks = midranks(pooled);

    double w = 0.0;
    for (std::size_t i = 0; i < n1; ++i) w += ranks[i];

    ComparisonVerdict out;
    out.statistic = w;

    if (n1 <= 10 && n2 <= 10) {
        out.exact = true;
        out.p_value = exact_two_sided_p(ranks, n1, w);
    } else {
        const double mean = static_cast<double>(n1) * static_cast<double>(n + 1) / 2.0;
        // tie correction on the variance
        double tie_term = 0.0;
        {
            std::vector<double> sorted(pooled);
            std::sort(sorted.begin(), sorted.end());
            std::size_t i = 0;
            while (i < n) {
                std::size_t j = i;
                while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
                const double t = static_cast<double>(j - i + 1);
                tie_term += t * t * t - t;
                i = j + 1;
            }
        }
        const double nn = static_cast<double>(n);
        const double var = static_cast<double>(n1) * static_cast<double>(n2) / 12.0 *
                           ((nn + 1.0) - tie_term / (nn * (nn - 1.0)));
        if (var <= 0.0) {
            out.p_value = 1.0;
        } else {
            double num = w - mean;
            // continuity correction toward the mean
            if (num > 0.5) num -= 0.5;
            else if (num < -0.5) num += 0.5;
            else num = 0.0;
            out.p_value = normal_two_sided_p(num / std::sqrt(var));
        }
    }

    if (out.p_value < alpha) {
        const double ma = median(a), mb = median(b);
        out.symbol = (ma < mb) ? Verdict::better : Verdict::worse;
    } else {
        out.symbol = Verdict::equal;
    }
    return out;
}

FriedmanResult friedman(const std::vector<std::vector<double>>& scores) {
    const std::size_t n = scores.size();
    if (n < 2) throw std::invalid_argument("friedman: need at least 2 problems");
    const std::size_t k = scores[0].size();
    if (k < 2) throw std::invalid_argument("friedman: need at least 2 algorithms");
    for (const auto& row : scores)
        if (row.size() != k) throw std::invalid_argument("friedman: ragged matrix");

    std::vector<double> rank_sum(k, 0.0);
    for (const auto& row : scores) {
        const std::vector<double> r = midranks(row);
        for (std::size_t j = 0; j < k; ++j) rank_sum[j] += r[j];
    }
    FriedmanResult out;
    out.average_ranks.resize(k);
    for (std::size_t j = 0; j < k; ++j)
        out.average_ranks[j] = rank_sum[j] / static_cast<double>(n);
    out.chi_square = friedman_chi_square(out.average_ranks, static_cast<int>(n));
    out.df = static_cast<int>(k) - 1;
    out.p_value = chi_square_sf(out.chi_square, out.df);
    return out;
}

double friedman_chi_square(const std::vector<double>& average_ranks, int n_problems) {
    const double k = static_cast<double>(average_ranks.size());
    const double n = static_cast<double>(n_problems);
    double ss = 0.0;
    for (const double r : average_ranks) ss += r * r;
    return 12.0 * n / (k * (k + 1.0)) * ss - 3.0 * n * (k + 1.0);
}

std::vector<double> hochberg_adjust(const std::vector<double>& p_values) {
    const std::size_t m = p_values.size();
    for (const double p : p_values)
        if (p < 0.0 || p > 1.0)
            throw std::invalid_argument("hochberg_adjust: p outside [0,1]");
    std::vector<std::size_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return p_values[a] > p_values[b]; });
    std::vector<double> adjusted(m);
    double running = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double candidate =
            static_cast<double>(i + 1) * p_values[idx[i]]; // (m - rank + 1) * p
        running = std::min(running, std::min(1.0, candidate));
        adjusted[idx[i]] = running;
    }
    return adjusted;
}

double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median: empty");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

namespace {

// regularized incomplete gamma, series + continued fraction
double gamma_p_series(double a, double x) {
    double sum = 1.0 / a, term = sum, ap = a;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_contfrac(double a, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double chi_square_sf(double x, int df) {
    if (df < 1) throw std::invalid_argument("chi_square_sf: df must be >= 1");
    if (x <= 0.0) return 1.0;
    const double a = 0.5 * df, xx = 0.5 * x;
    return (xx < a + 1.0) ? 1.0 - gamma_p_series(a, xx) : gamma_q_contfrac(a, xx);
}

} // namespace oppde::stats
