#include "ppra/kernels.hpp"

#include <atomic>
#include <cstdlib>

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__) || defined(_M_IX86)
#define PPRA_X86 1
#else
#define PPRA_X86 0
#endif

namespace ppra::kernels {

bool avx2_available() {
#if PPRA_X86 && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

SimdLevel detect_level() {
    if (const char* env = std::getenv("PPRA_FORCE_SCALAR")) {
        if (env[0] == '1') return SimdLevel::scalar;
    }
    return avx2_available() ? SimdLevel::avx2 : SimdLevel::scalar;
}

std::atomic<SimdLevel> g_level{detect_level()};

}  // namespace

SimdLevel active_level() { return g_level.load(std::memory_order_relaxed); }

void set_level(SimdLevel level) {
    if (level == SimdLevel::avx2 && !avx2_available()) level = SimdLevel::scalar;
    g_level.store(level, std::memory_order_relaxed);
}

const char* level_name(SimdLevel level) {
    return level == SimdLevel::avx2 ? "avx2" : "scalar";
}

void phasor_sum_rotate(double* sre, double* sim,
                       const double* rre, const double* rim, std::size_t m,
                       std::complex<double>* out, std::size_t nj) {
    if (active_level() == SimdLevel::avx2)
        phasor_sum_rotate_avx2(sre, sim, rre, rim, m, out, nj);
    else
        phasor_sum_rotate_scalar(sre, sim, rre, rim, m, out, nj);
}

void axpy(double* dst, const double* src, double a, std::size_t n) {
    if (active_level() == SimdLevel::avx2)
        axpy_avx2(dst, src, a, n);
    else
        axpy_scalar(dst, src, a, n);
}

void cmul_inplace(std::complex<double>* a, const std::complex<double>* b, std::size_t n) {
    if (active_level() == SimdLevel::avx2)
        cmul_inplace_avx2(a, b, n);
    else
        cmul_inplace_scalar(a, b, n);
}

}  // namespace ppra::kernels
