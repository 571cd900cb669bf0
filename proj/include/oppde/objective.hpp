#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "oppde/core.hpp"

namespace oppde {

/// Benchmark objective with known optimum. Evaluation is pure; all budget
/// accounting goes through evaluate().
class TestFunction {
public:
    using EvalFn = std::function<double(const std::vector<double>&)>;

    TestFunction(std::string name, std::size_t dimension, Bounds bounds,
                 double optimum_value, std::optional<std::vector<double>> optimum_location,
                 EvalFn fn)
        : name_(std::move(name)),
          dimension_(dimension),
          bounds_(std::move(bounds)),
          optimum_value_(optimum_value),
          optimum_location_(std::move(optimum_location)),
          fn_(std::move(fn)) {}

    const std::string& name() const { return name_; }
    std::size_t dimension() const { return dimension_; }
    const Bounds& bounds() const { return bounds_; }
    double optimum_value() const { return optimum_value_; }
    const std::optional<std::vector<double>>& optimum_location() const { return optimum_location_; }

    /// Raw objective, no budget side effects. For tests and oracles.
    double raw(const std::vector<double>& x) const { return fn_(x); }

private:
    std::string name_;
    std::size_t dimension_;
    Bounds bounds_;
    double optimum_value_;
    std::optional<std::vector<double>> optimum_location_;
    EvalFn fn_;
};

/// Evaluates f at x and charges exactly one NFE. Throws when the budget is
/// already spent; callers that batch evaluations check can() up front.
double evaluate(const TestFunction& f, const std::vector<double>& x, EvaluationBudget& budget);

/// Function error value: best_value - f(x*). Lower is better.
double fev(double best_value, const TestFunction& f);

/// Orthogonal rotation built by QR (modified Gram-Schmidt) of a seeded
/// Gaussian matrix. Row-major D x D.
std::vector<double> random_rotation(std::size_t dim, RngStream& rng);

/// Base function names: sphere, rosenbrock, rastrigin, ackley, griewank,
/// schwefel12. "shifted-" and "shifted-rotated-" prefixes add a seeded
/// translation of the optimum and optionally a rotation.
std::vector<std::string> list_functions();

/// Build a function by registry name at the given dimension. Shift/rotation
/// are derived deterministically from transform_seed, so a config that
/// records the seed pins the whole problem instance.
/// Throws std::invalid_argument on unknown names.
TestFunction make_function(const std::string& name, std::size_t dimension,
                           std::uint64_t transform_seed = 12345);

} // namespace oppde
