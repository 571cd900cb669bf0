#include <cstdlib>
#include <stdexcept>
#include <string>

#include "oppde/kernels.hpp"

namespace oppde::kern {

namespace {

const Ops* g_ops = nullptr;

const Ops* pick_backend() {
    if (const char* env = std::getenv("OPPDE_KERNELS")) {
        const std::string want = env;
        if (want == "scalar") return &scalar_ops();
#if defined(__x86_64__) && defined(OPPDE_HAVE_AVX2_SOURCES)
        if (want == "avx2" && __builtin_cpu_supports("avx2")) return &avx2_ops();
#endif
    }
#if defined(__x86_64__) && defined(OPPDE_HAVE_AVX2_SOURCES)
    if (__builtin_cpu_supports("avx2")) return &avx2_ops();
#endif
    return &scalar_ops();
}

} // namespace

const Ops& ops() {
    if (!g_ops) g_ops = pick_backend();
    return *g_ops;
}

void force_backend(std::string_view name) {
    if (name == "scalar") {
        g_ops = &scalar_ops();
        return;
    }
#if defined(__x86_64__) && defined(OPPDE_HAVE_AVX2_SOURCES)
    if (name == "avx2") {
        if (!__builtin_cpu_supports("avx2"))
            throw std::runtime_error("kernels: avx2 not supported on this CPU");
        g_ops = &avx2_ops();
        return;
    }
#endif
    throw std::invalid_argument("kernels: unknown backend '" + std::string(name) + "'");
}

} // namespace oppde::kern
