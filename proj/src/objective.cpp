#include "oppde/objective.hpp"

#include <cmath>
#include <numbers>

#include "oppde/kernels.hpp"

namespace oppde {

double evaluate(const TestFunction& f, const std::vector<double>& x, EvaluationBudget& budget) {
    budget.consume(1);
    return f.raw(x);
}

double fev(double best_value, const TestFunction& f) {
    return best_value - f.optimum_value();
}

std::vector<double> random_rotation(std::size_t dim, RngStream& rng) {
    std::vector<double> m(dim * dim);
    for (auto& v : m) v = rng.gaussian(0.0, 1.0);
    // modified Gram-Schmidt on rows
    for (std::size_t r = 0; r < dim; ++r) {
        double* row = m.data() + r * dim;
        for (std::size_t p = 0; p < r; ++p) {
            const double* prev = m.data() + p * dim;
            const double proj = kern::scalar_ops().dot(row, prev, dim);
            for (std::size_t j = 0; j < dim; ++j) row[j] -= proj * prev[j];
        }
        const double norm = std::sqrt(kern::scalar_ops().sum_sq(row, dim));
        for (std::size_t j = 0; j < dim; ++j) row[j] /= norm;
    }
    return m;
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sphere(const std::vector<double>& z) {
    return kern::ops().sum_sq(z.data(), z.size());
}

double rosenbrock(const std::vector<double>& z) {
    double s = 0.0;
    for (std::size_t j = 0; j + 1 < z.size(); ++j) {
        const double a = z[j + 1] - z[j] * z[j];
        const double b = 1.0 - z[j];
        s += 100.0 * a * a + b * b;
    }
    return s;
}

double rastrigin(const std::vector<double>& z) {
    double s = 10.0 * static_cast<double>(z.size());
    // cos(2*pi*v) has period 1 in v; reducing to [-0.5, 0.5] keeps libm on its
    // fast small-argument path
    for (const double v : z) s += v * v - 10.0 * std::cos(kTwoPi * (v - std::nearbyint(v)));
    return s;
}

double ackley(const std::vector<double>& z) {
    const double d = static_cast<double>(z.size());
    double sum_cos = 0.0;
    for (const double v : z) sum_cos += std::cos(kTwoPi * v);
    const double sum_sq = kern::ops().sum_sq(z.data(), z.size());
    return -20.0 * std::exp(-0.2 * std::sqrt(sum_sq / d)) - std::exp(sum_cos / d) +
           20.0 + std::numbers::e;
}

double griewank(const std::vector<double>& z) {
    double prod = 1.0;
    for (std::size_t j = 0; j < z.size(); ++j)
        prod *= std::cos(z[j] / std::sqrt(static_cast<double>(j + 1)));
    return kern::ops().sum_sq(z.data(), z.size()) / 4000.0 - prod + 1.0;
}

double schwefel12(const std::vector<double>& z) {
    double s = 0.0, prefix = 0.0;
    for (const double v : z) {
        prefix += v;
        s += prefix * prefix;
    }
    return s;
}

struct BaseDef {
    const char* name;
    double (*fn)(const std::vector<double>&);
    bool optimum_at_ones; // rosenbrock; everything else optimal at origin
    // CEC-style mapping of the [-100,100] search range onto the function's
    // natural domain: the evaluator sees z * scale
    double scale;
};

constexpr BaseDef kBases[] = {
    {"sphere", sphere, false, 1.0},
    {"rosenbrock", rosenbrock, true, 2.048 / 100.0},
    {"rastrigin", rastrigin, false, 5.12 / 100.0},
    {"ackley", ackley, false, 32.768 / 100.0},
    {"griewank", griewank, false, 600.0 / 100.0},
    {"schwefel12", schwefel12, false, 1.0},
};

const BaseDef* find_base(const std::string& name) {
    for (const auto& b : kBases)
        if (name == b.name) return &b;
    return nullptr;
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h) {
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace

std::vector<std::string> list_functions() {
    std::vector<std::string> out;
    for (const auto& b : kBases) {
        out.emplace_back(b.name);
        out.emplace_back(std::string("shifted-") + b.name);
        out.emplace_back(std::string("shifted-rotated-") + b.name);
    }
    return out;
}

TestFunction make_function(const std::string& name, std::size_t dimension,
                           std::uint64_t transform_seed) {
    if (dimension == 0) throw std::invalid_argument("make_function: dimension must be >= 1");

    bool shifted = false, rotated = false;
    std::string base_name = name;
    if (base_name.rfind("shifted-rotated-", 0) == 0) {
        shifted = rotated = true;
        base_name = base_name.substr(16);
    } else if (base_name.rfind("shifted-", 0) == 0) {
        shifted = true;
        base_name = base_name.substr(8);
    }
    const BaseDef* base = find_base(base_name);
    if (!base)
        throw std::invalid_argument("make_function: unknown function '" + name + "'");

    Bounds bounds = Bounds::uniform(-100.0, 100.0, dimension);
    const double scale = base->scale;
    // base_loc lives in the scaled (natural-domain) space; in search space the
    // optimum sits at base_loc / scale
    std::vector<double> base_loc(dimension, base->optimum_at_ones ? 1.0 : 0.0);

    if (!shifted) {
        auto fn = base->fn;
        std::vector<double> loc(dimension);
        for (std::size_t j = 0; j < dimension; ++j) loc[j] = base_loc[j] / scale;
        std::optional<std::vector<double>> opt_loc;
        if (bounds.contains(loc)) opt_loc = std::move(loc);
        return TestFunction(name, dimension, bounds, 0.0, std::move(opt_loc),
                            [fn, scale, dimension](const std::vector<double>& x) {
                                // per-thread scratch: evaluations are hot and
                                // must not allocate
                                static thread_local std::vector<double> z;
                                z.resize(dimension);
                                for (std::size_t j = 0; j < dimension; ++j)
                                    z[j] = scale * x[j];
                                return fn(z);
                            });
    }

    // shift and rotation pinned by the transform seed and the instance identity
    RngStream trng(fnv1a(base_name, transform_seed ^ (0x9e3779b9ULL * dimension)));
    std::vector<double> shift(dimension);
    for (std::size_t j = 0; j < dimension; ++j)
        shift[j] = bounds.min()[j] * 0.8 + trng.uniform01() * 0.8 * (bounds.max()[j] - bounds.min()[j]);

    std::vector<double> rot;
    if (rotated) rot = random_rotation(dimension, trng);

    // optimum: z = 0 (or ones) with z = scale * M (x - shift)
    // => x = shift + M^T (z / scale)
    std::vector<double> loc = shift;
    if (base->optimum_at_ones) {
        if (rotated) {
            for (std::size_t r = 0; r < dimension; ++r)
                for (std::size_t c = 0; c < dimension; ++c)
                    loc[c] += rot[r * dimension + c] * base_loc[r] / scale;
        } else {
            for (std::size_t j = 0; j < dimension; ++j) loc[j] += 1.0 / scale;
        }
    }
    std::optional<std::vector<double>> opt_loc;
    if (bounds.contains(loc)) opt_loc = loc;

    auto fn = base->fn;
    auto eval = [fn, shift = std::move(shift), rot = std::move(rot), rotated, scale,
                 dimension](const std::vector<double>& x) {
        static thread_local std::vector<double> z, y;
        z.resize(dimension);
        for (std::size_t j = 0; j < dimension; ++j) z[j] = x[j] - shift[j];
        if (rotated) {
            y.resize(dimension);
            kern::ops().matvec(y.data(), rot.data(), z.data(), dimension);
            z.swap(y);
        }
        if (scale != 1.0)
            for (auto& v : z) v *= scale;
        return fn(z);
    };
    return TestFunction(name, dimension, std::move(bounds), 0.0, std::move(opt_loc),
                        std::move(eval));
}

} // namespace oppde
