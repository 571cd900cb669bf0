#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "oppde/rng.hpp"

namespace oppde {

/// Per-dimension box constraints of the search space.
class Bounds {
public:
    Bounds(std::vector<double> min, std::vector<double> max);

    /// Uniform box [lo, hi]^dim.
    static Bounds uniform(double lo, double hi, std::size_t dim);

    std::size_t dim() const { return min_.size(); }
    const std::vector<double>& min() const { return min_; }
    const std::vector<double>& max() const { return max_; }
    double range(std::size_t j) const { return max_[j] - min_[j]; }
    double center(std::size_t j) const { return 0.5 * (min_[j] + max_[j]); }

    bool contains(const std::vector<double>& x) const;

private:
    std::vector<double> min_;
    std::vector<double> max_;
};

/// x[j] = min[j] + u * (max[j] - min[j]), fresh u per dimension.
std::vector<double> random_point(const Bounds& bounds, RngStream& rng);

/// Per-coordinate projection onto the box. Idempotent.
std::vector<double> clamp_to_bounds(std::vector<double> x, const Bounds& bounds);

/// Genome vector with cached fitness.
struct Individual {
    std::vector<double> genome;
    std::optional<double> fitness;

    double fitness_value() const {
        if (!fitness) throw std::logic_error("Individual: fitness not evaluated");
        return *fitness;
    }
};

struct Population {
    std::vector<Individual> members;
    int generation = 0;

    std::size_t size() const { return members.size(); }

    const Individual& best() const;
};

/// Raised when an evaluation is requested past the NFE budget. Run loops
/// check can() before each phase, so reaching this is a caller bug or the
/// normal end-of-run signal for single evaluations.
struct BudgetExhausted : std::runtime_error {
    BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

/// Monotone NFE counter with a hard maximum. A batched phase that does not
/// fit the remaining budget is refused whole, never truncated.
class EvaluationBudget {
public:
    explicit EvaluationBudget(std::uint64_t max_nfes) : max_(max_nfes) {
        if (max_nfes == 0) throw std::invalid_argument("EvaluationBudget: max must be positive");
    }

    std::uint64_t used() const { return used_; }
    std::uint64_t max() const { return max_; }
    std::uint64_t remaining() const { return max_ - used_; }
    bool can(std::uint64_t n) const { return used_ + n <= max_; }

    void consume(std::uint64_t n) {
        if (!can(n)) throw BudgetExhausted{};
        used_ += n;
    }

private:
    std::uint64_t used_ = 0;
    std::uint64_t max_;
};

} // namespace oppde
