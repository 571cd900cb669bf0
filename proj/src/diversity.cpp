#include "oppde/diversity.hpp"

#include <cmath>
#include <limits>

#include "oppde/kernels.hpp"

namespace oppde {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

} // namespace

DiversityKind diversity_from_name(const std::string& name) {
    if (name == "min_distance") return DiversityKind::min_distance_normdiv;
    if (name == "linear") return DiversityKind::linear_time;
    if (name == "pairwise_naive") return DiversityKind::pairwise_mean_naive;
    if (name == "center") return DiversityKind::center_based;
    throw std::invalid_argument("unknown diversity measure '" + name + "'");
}

std::string diversity_name(DiversityKind kind) {
    switch (kind) {
        case DiversityKind::min_distance_normdiv: return "min_distance";
        case DiversityKind::linear_time: return "linear";
        case DiversityKind::pairwise_mean_naive: return "pairwise_naive";
        case DiversityKind::center_based: return "center";
    }
    return "?";
}

double min_distance_normdiv(const Population& pop, const Bounds& bounds) {
    const std::size_t np = pop.size();
    require(np >= 2, "min_distance_normdiv: need NP >= 2");
    const std::size_t d = bounds.dim();
    double sum = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        double best = std::numeric_limits<double>::infinity();
        const auto& xi = pop.members[i].genome;
        for (std::size_t k = 0; k < np; ++k) {
            if (k == i) continue;
            const auto& xk = pop.members[k].genome;
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                const double t = (xi[j] - xk[j]) / (bounds.max()[j] - bounds.min()[j]);
                s += t * t;
            }
            const double dist = std::sqrt(s / static_cast<double>(d));
            if (dist < best) best = dist;
        }
        sum += best;
    }
    return sum / static_cast<double>(np);
}

double power_mean_diversity(const Population& pop, double a, double b, bool a_is_min) {
    const std::size_t np = pop.size();
    require(np >= 2, "power_mean_diversity: need NP >= 2");
    if (!a_is_min) require(b != 0.0, "power_mean_diversity: b must be nonzero");
    const auto& k = kern::ops();
    const std::size_t d = pop.members[0].genome.size();

    double outer = 0.0;
    for (std::size_t i = 0; i < np; ++i) {
        const double* xi = pop.members[i].genome.data();
        double di;
        if (a_is_min) {
            di = std::numeric_limits<double>::infinity();
            for (std::size_t jj = 0; jj < np; ++jj) {
                if (jj == i) continue;
                di = std::min(di, std::sqrt(k.sq_dist(xi, pop.members[jj].genome.data(), d)));
            }
        } else {
            double s = 0.0;
            std::size_t count = 0;
            for (std::size_t jj = 0; jj < np; ++jj) {
                if (jj == i && a <= 0.0) continue; // self-distance undefined for a <= 0
                const double dist = std::sqrt(k.sq_dist(xi, pop.members[jj].genome.data(), d));
                s += (a == 0.0) ? std::log(dist) : std::pow(dist, a);
                ++count;
            }
            di = (a == 0.0) ? std::exp(s / static_cast<double>(count))
                            : s / static_cast<double>(count);
        }
        outer += di;
    }
    const double mean = outer / static_cast<double>(np);
    if (a_is_min) return mean; // documented usage is b = 1
    return (b == 1.0) ? mean : std::pow(mean, 1.0 / b);
}

double pairwise_mean_naive(const Population& pop) {
    const std::size_t np = pop.size();
    require(np >= 2, "pairwise_mean_naive: need NP >= 2");
    const auto& k = kern::ops();
    const std::size_t d = pop.members[0].genome.size();
    double s = 0.0;
    for (std::size_t i = 0; i < np; ++i)
        for (std::size_t j = 0; j < np; ++j) {
            if (j == i) continue;
            s += std::sqrt(k.sq_dist(pop.members[i].genome.data(),
                                     pop.members[j].genome.data(), d));
        }
    return 0.5 * s;
}

double linear_diversity(const Population& pop, const Bounds& bounds, bool normalized) {
    const std::size_t np = pop.size();
    require(np >= 1, "linear_diversity: need NP >= 1");
    const std::size_t d = pop.members[0].genome.size();
    std::vector<double> mean_acc(d, 0.0), sq_acc(d, 0.0);
    const auto& k = kern::ops();
    for (const auto& m : pop.members)
        k.acc_moments(mean_acc.data(), sq_acc.data(), m.genome.data(), d);
    double sum = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double mean = mean_acc[j] / static_cast<double>(np);
        double var = sq_acc[j] / static_cast<double>(np) - mean * mean;
        if (var < 0.0) var = 0.0; // fp cancellation guard
        if (normalized) var /= (bounds.max()[j] - bounds.min()[j]);
        sum += var;
    }
    return std::sqrt(sum) / static_cast<double>(d);
}

double center_diversity(const Population& pop) {
    const std::size_t np = pop.size();
    require(np >= 1, "center_diversity: need NP >= 1");
    const std::size_t d = pop.members[0].genome.size();
    std::vector<double> centroid(d, 0.0);
    for (const auto& m : pop.members)
        for (std::size_t j = 0; j < d; ++j) centroid[j] += m.genome[j];
    for (auto& c : centroid) c /= static_cast<double>(np);
    const auto& k = kern::ops();
    double s = 0.0;
    for (const auto& m : pop.members)
        s += std::sqrt(k.sq_dist(m.genome.data(), centroid.data(), d));
    return s;
}

double norm_div(DiversityKind kind, const Population& pop, const Bounds& bounds) {
    switch (kind) {
        case DiversityKind::min_distance_normdiv:
            return min_distance_normdiv(pop, bounds);
        case DiversityKind::linear_time:
            return linear_diversity(pop, bounds, /*normalized=*/true);
        case DiversityKind::pairwise_mean_naive:
            return pairwise_mean_naive(pop);
        case DiversityKind::center_based:
            return center_diversity(pop);
    }
    throw std::logic_error("norm_div: bad kind");
}

} // namespace oppde
