#pragma once

#include <string>
#include <vector>

#include "oppde/rng.hpp"

namespace oppde {

enum class CrossoverKind { binomial, exponential, multiple_exponential };

CrossoverKind crossover_from_name(const std::string& name);
std::string crossover_name(CrossoverKind kind);

/// Classic DE binomial crossover: coordinate j comes from the mutant when
/// rand <= CR or j is the forced index, so at least one mutant coordinate
/// always survives.
std::vector<double> binomial_crossover(const std::vector<double>& target,
                                       const std::vector<double>& mutant,
                                       double cr, RngStream& rng);

/// One contiguous circular run copied from the mutant, extended while
/// rand <= CR and shorter than D.
std::vector<double> exponential_crossover(const std::vector<double>& target,
                                          const std::vector<double>& mutant,
                                          double cr, RngStream& rng);

/// Alternating circular runs copied from mutant then target. Run lengths are
/// geometric: a run continues while rand <= CR_m (mutant) or CR_s (target),
/// where CR_m = E_m/(E_m+1), CR_s = E_s/(E_s+1), E_m = T*CR, E_s = T*(1-CR),
/// giving mean run lengths E_m+1 and E_s+1. The first run always comes from
/// the mutant. CR = 0 degenerates to a single length-1 mutant run; CR = 1 to
/// the full mutant.
std::vector<double> multiple_exponential_crossover(const std::vector<double>& target,
                                                   const std::vector<double>& mutant,
                                                   double cr, double segment_length,
                                                   RngStream& rng);

/// Dispatch by kind; segment_length is only read by multiple_exponential.
std::vector<double> crossover(CrossoverKind kind, const std::vector<double>& target,
                              const std::vector<double>& mutant, double cr,
                              double segment_length, RngStream& rng);

/// Default exchanged-component length T for multiple exponential crossover.
inline constexpr double kDefaultSegmentLength = 10.0;

} // namespace oppde
