// AVX2+FMA variants of the arithmetic kernels.  This translation unit is
// compiled with -mavx2 -mfma; the dispatcher only routes here after a
// runtime CPU check.

#include "ppra/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__) || defined(_M_IX86)
#define PPRA_X86 1
#else
#define PPRA_X86 0
#endif

#if PPRA_X86

#include <immintrin.h>

namespace ppra::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void phasor_sum_rotate_avx2(double* sre, double* sim,
                            const double* rre, const double* rim, std::size_t m,
                            std::complex<double>* out, std::size_t nj) {
    const std::size_t m4 = m & ~std::size_t{3};
    for (std::size_t j = 0; j < nj; ++j) {
        __m256d acc_re = _mm256_setzero_pd();
        __m256d acc_im = _mm256_setzero_pd();
        std::size_t i = 0;
        for (; i < m4; i += 4) {
            const __m256d a = _mm256_loadu_pd(sre + i);
            const __m256d b = _mm256_loadu_pd(sim + i);
            const __m256d cr = _mm256_loadu_pd(rre + i);
            const __m256d ci = _mm256_loadu_pd(rim + i);
            acc_re = _mm256_add_pd(acc_re, a);
            acc_im = _mm256_add_pd(acc_im, b);
            // (a + ib)(cr + ici)
            const __m256d nre = _mm256_fmsub_pd(a, cr, _mm256_mul_pd(b, ci));
            const __m256d nim = _mm256_fmadd_pd(a, ci, _mm256_mul_pd(b, cr));
            _mm256_storeu_pd(sre + i, nre);
            _mm256_storeu_pd(sim + i, nim);
        }
        double re = hsum(acc_re);
        double im = hsum(acc_im);
        for (; i < m; ++i) {
            const double a = sre[i];
            const double b = sim[i];
            re += a;
            im += b;
            sre[i] = a * rre[i] - b * rim[i];
            sim[i] = a * rim[i] + b * rre[i];
        }
        out[j] = {re, im};
    }
}

void axpy_avx2(double* dst, const double* src, double a, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = _mm256_loadu_pd(dst + i);
        const __m256d s = _mm256_loadu_pd(src + i);
        _mm256_storeu_pd(dst + i, _mm256_fmadd_pd(av, s, d));
    }
    for (; i < n; ++i) dst[i] += a * src[i];
}

void cmul_inplace_avx2(std::complex<double>* a, const std::complex<double>* b, std::size_t n) {
    auto* ap = reinterpret_cast<double*>(a);
    const auto* bp = reinterpret_cast<const double*>(b);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d av = _mm256_loadu_pd(ap + 2 * i);       // [ar0 ai0 ar1 ai1]
        const __m256d bv = _mm256_loadu_pd(bp + 2 * i);
        const __m256d ar = _mm256_movedup_pd(av);             // [ar0 ar0 ar1 ar1]
        const __m256d ai = _mm256_unpackhi_pd(av, av);        // [ai0 ai0 ai1 ai1]
        const __m256d bswap = _mm256_permute_pd(bv, 0x5);     // [bi0 br0 bi1 br1]
        // even lanes: ar*br - ai*bi, odd lanes: ar*bi + ai*br
        const __m256d res = _mm256_fmaddsub_pd(ar, bv, _mm256_mul_pd(ai, bswap));
        _mm256_storeu_pd(ap + 2 * i, res);
    }
    if (i < n) cmul_inplace_scalar(a + i, b + i, n - i);
}

}  // namespace ppra::kernels

#else  // !PPRA_X86

namespace ppra::kernels {

// Non-x86 builds fall back to the scalar reference.
void phasor_sum_rotate_avx2(double* sre, double* sim,
                            const double* rre, const double* rim, std::size_t m,
                            std::complex<double>* out, std::size_t nj) {
    phasor_sum_rotate_scalar(sre, sim, rre, rim, m, out, nj);
}
void axpy_avx2(double* dst, const double* src, double a, std::size_t n) {
    axpy_scalar(dst, src, a, n);
}
void cmul_inplace_avx2(std::complex<double>* a, const std::complex<double>* b, std::size_t n) {
    cmul_inplace_scalar(a, b, n);
}

}  // namespace ppra::kernels

#endif
