#ifdef __x86_64__

#include <immintrin.h>

#include "oppde/kernels.hpp"

namespace oppde::kern {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_sq_avx2(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(a + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i] * a[i];
    return s;
}

double sq_dist_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_fmadd_pd(d, d, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

void axpy_diff_avx2(double* out, const double* a, const double* b,
                    const double* c, double f, std::size_t n) {
    const __m256d vf = _mm256_set1_pd(f);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(b + i), _mm256_loadu_pd(c + i));
        _mm256_storeu_pd(out + i, _mm256_fmadd_pd(vf, d, _mm256_loadu_pd(a + i)));
    }
    for (; i < n; ++i) out[i] = a[i] + f * (b[i] - c[i]);
}

void matvec_avx2(double* y, const double* m, const double* x, std::size_t n) {
    for (std::size_t r = 0; r < n; ++r)
        y[r] = dot_avx2(m + r * n, x, n);
}

void acc_moments_avx2(double* mean_acc, double* sq_acc, const double* x,
                      std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d v = _mm256_loadu_pd(x + i);
        _mm256_storeu_pd(mean_acc + i, _mm256_add_pd(_mm256_loadu_pd(mean_acc + i), v));
        _mm256_storeu_pd(sq_acc + i, _mm256_fmadd_pd(v, v, _mm256_loadu_pd(sq_acc + i)));
    }
    for (; i < n; ++i) {
        mean_acc[i] += x[i];
        sq_acc[i] += x[i] * x[i];
    }
}

} // namespace

const Ops& avx2_ops() {
    static const Ops ops = {
        "avx2",
        dot_avx2,
        sum_sq_avx2,
        sq_dist_avx2,
        axpy_diff_avx2,
        matvec_avx2,
        acc_moments_avx2,
    };
    return ops;
}

} // namespace oppde::kern

#endif // __x86_64__
