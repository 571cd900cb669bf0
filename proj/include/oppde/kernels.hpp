#pragma once

#include <cstddef>
#include <string_view>

namespace oppde::kern {

/// Data-parallel inner loops shared by the objective, mutation and diversity
/// code. Scalar reference implementations always exist; an AVX2 variant is
/// selected at startup when the CPU supports it. The two are equivalence
/// tested; within one process the selection is fixed, so runs stay
/// reproducible.
struct Ops {
    const char* name;

    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*sum_sq)(const double* a, std::size_t n);
    double (*sq_dist)(const double* a, const double* b, std::size_t n);

    /// out = a + f * (b - c)
    void (*axpy_diff)(double* out, const double* a, const double* b,
                      const double* c, double f, std::size_t n);

    /// y = M x, M row-major n x n
    void (*matvec)(double* y, const double* m, const double* x, std::size_t n);

    /// mean_acc[j] += x[j]; sq_acc[j] += x[j]^2
    void (*acc_moments)(double* mean_acc, double* sq_acc, const double* x,
                        std::size_t n);
};

const Ops& scalar_ops();
#ifdef __x86_64__
const Ops& avx2_ops();
#endif

/// Backend picked once per process: AVX2 when available, unless the
/// OPPDE_KERNELS environment variable ("scalar" / "avx2") overrides it.
const Ops& ops();

/// Test hook: force a backend by name. Throws on unknown/unavailable names.
void force_backend(std::string_view name);

} // namespace oppde::kern
