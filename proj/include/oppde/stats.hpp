#pragma once

#include <vector>

namespace oppde::stats {

enum class Verdict : char { better = '+', equal = '=', worse = '-' };

struct ComparisonVerdict {
    double p_value = 1.0;
    Verdict symbol = Verdict::equal;
    double statistic = 0.0; // rank sum of sample a
    bool exact = false;
};

/// Two-sided Wilcoxon rank-sum with midrank tie handling. Exact permutation
/// distribution when both sizes are <= 10; otherwise normal approximation
/// with tie-corrected variance and continuity correction. The symbol
/// compares sample a against reference sample b for minimization: '+' means
/// a is significantly lower (better).
ComparisonVerdict wilcoxon_rank_sum(const std::vector<double>& a,
                                    const std::vector<double>& b,
                                    double alpha = 0.05);

struct FriedmanResult {
    double chi_square = 0.0;
    int df = 0;
    double p_value = 1.0;
    std::vector<double> average_ranks;
};

/// Friedman test over an N problems x k algorithms score matrix, ascending
/// midranks (lower score = better rank for minimization).
FriedmanResult friedman(const std::vector<std::vector<double>>& scores);

/// Chi-square statistic straight from average ranks:
/// 12N/(k(k+1)) * sum R_j^2 - 3N(k+1).
double friedman_chi_square(const std::vector<double>& average_ranks, int n_problems);

/// Hochberg step-up adjustment, returned in input order; adjusted >= raw
/// elementwise, capped at 1.
std::vector<double> hochberg_adjust(const std::vector<double>& p_values);

double median(std::vector<double> v);

/// Upper-tail chi-square probability, df >= 1.
double chi_square_sf(double x, int df);

/// Standard normal two-sided tail: P(|Z| >= |z|).
double normal_two_sided_p(double z);

} // namespace oppde::stats
