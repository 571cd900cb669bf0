#include "oppde/core.hpp"

#include <algorithm>

namespace oppde {

Bounds::Bounds(std::vector<double> min, std::vector<double> max)
    : min_(std::move(min)), max_(std::move(max)) {
    if (min_.empty() || min_.size() != max_.size())
        throw std::invalid_argument("Bounds: need matching non-empty min/max");
    for (std::size_t j = 0; j < min_.size(); ++j)
        if (!(min_[j] < max_[j]))
            throw std::invalid_argument("Bounds: min[j] must be < max[j]");
}

Bounds Bounds::uniform(double lo, double hi, std::size_t dim) {
    return Bounds(std::vector<double>(dim, lo), std::vector<double>(dim, hi));
}

bool Bounds::contains(const std::vector<double>& x) const {
    if (x.size() != dim()) return false;
    for (std::size_t j = 0; j < x.size(); ++j)
        if (x[j] < min_[j] || x[j] > max_[j]) return false;
    return true;
}

std::vector<double> random_point(const Bounds& bounds, RngStream& rng) {
    std::vector<double> x(bounds.dim());
    for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = bounds.min()[j] + rng.uniform01() * bounds.range(j);
    return x;
}

std::vector<double> clamp_to_bounds(std::vector<double> x, const Bounds& bounds) {
    if (x.size() != bounds.dim())
        throw std::invalid_argument("clamp_to_bounds: dimension mismatch");
    for (std::size_t j = 0; j < x.size(); ++j)
        x[j] = std::clamp(x[j], bounds.min()[j], bounds.max()[j]);
    return x;
}

const Individual& Population::best() const {
    if (members.empty()) throw std::logic_error("Population: empty");
    const Individual* b = &members[0];
    for (const auto& m : members)
        if (m.fitness_value() < b->fitness_value()) b = &m;
    return *b;
}

} // namespace oppde
