#include "oppde/kernels.hpp"

namespace oppde::kern {

namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_scalar(const double* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * a[i];
    return s;
}

double sq_dist_scalar(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void axpy_diff_scalar(double* out, const double* a, const double* b,
                      const double* c, double f, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + f * (b[i] - c[i]);
}

void matvec_scalar(double* y, const double* m, const double* x, std::size_t n) {
    for (std::size_t r = 0; r < n; ++r) {
        double s = 0.0;
        const double* row = m + r * n;
        for (std::size_t c = 0; c < n; ++c) s += row[c] * x[c];
        y[r] = s;
    }
}

void acc_moments_scalar(double* mean_acc, double* sq_acc, const double* x,
                        std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        mean_acc[i] += x[i];
        sq_acc[i] += x[i] * x[i];
    }
}

} // namespace

const Ops& scalar_ops() {
    static const Ops ops = {
        "scalar",
        dot_scalar,
        sum_sq_scalar,
        sq_dist_scalar,
        axpy_diff_scalar,
        matvec_scalar,
        acc_moments_scalar,
    };
    return ops;
}

} // namespace oppde::kern
