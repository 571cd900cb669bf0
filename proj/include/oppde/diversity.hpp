#pragma once

#include <string>

#include "oppde/core.hpp"

namespace oppde {

enum class DiversityKind {
    min_distance_normdiv, // legacy quadratic measure, range-normalized
    linear_time,          // variance-based reformulation (normalized form is
                          // what gates the selection switch)
    pairwise_mean_naive,
    center_based,
};

DiversityKind diversity_from_name(const std::string& name);
std::string diversity_name(DiversityKind kind);

/// Mean over individuals of the minimum range-normalized distance to any
/// other member. Result in [0,1]. O(NP^2 * D); requires NP >= 2.
double min_distance_normdiv(const Population& pop, const Bounds& bounds);

/// Power-mean family over pairwise Euclidean distances:
/// D_h = (mean_i d_i^a)^(1/b), d_i^a = mean_j ||x_i - x_j||^a.
/// a > 0 includes the zero self-distance literally; a <= 0 and the min
/// (a = -inf, flagged by a_is_min) exclude j = i so the expression stays
/// defined. O(NP^2 * D); requires NP >= 2.
double power_mean_diversity(const Population& pop, double a, double b,
                            bool a_is_min = false);

/// Half-sum of all ordered pairwise Euclidean distances. O(NP^2 * D).
double pairwise_mean_naive(const Population& pop);

/// Variance-based linear-time measure:
/// D'_d = (1/D) * sqrt(sum_k var_k), var_k the per-dimension population
/// variance; the normalized form divides each var_k by the dimension's range
/// before summing. O(NP * D). Zero iff all members coincide.
double linear_diversity(const Population& pop, const Bounds& bounds, bool normalized);

/// Sum of Euclidean distances of every member to the population centroid.
/// O(NP * D).
double center_diversity(const Population& pop);

/// The normDiv feeding the selection switch and the Beta spread formulas for
/// a given measure choice.
double norm_div(DiversityKind kind, const Population& pop, const Bounds& bounds);

} // namespace oppde
