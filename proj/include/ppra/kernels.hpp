#pragma once

#include <complex>
#include <cstddef>

// Scalar reference kernels for the arithmetic inner loops, plus AVX2
// variants selected once at startup.  The scalar versions are the
// semantics; the SIMD versions must agree within floating-point
// reassociation tolerance (see tests/test_kernels.cpp).

namespace ppra::kernels {

enum class SimdLevel { scalar, avx2 };

// Level chosen at first use: AVX2+FMA when the CPU supports it and the
// binary carries the AVX2 translation unit, unless PPRA_FORCE_SCALAR=1.
SimdLevel active_level();
void set_level(SimdLevel level);
bool avx2_available();
const char* level_name(SimdLevel level);

// Phasor-bank sweep: for j = 0..nj-1 emit out[j] = sum_i (sre[i], sim[i]),
// then advance every state by its per-term rotator:
//   (sre, sim)[i] <- (sre, sim)[i] * (rre, rim)[i].
// States are consumed; callers re-seed them per sweep.
void phasor_sum_rotate(double* sre, double* sim,
                       const double* rre, const double* rim, std::size_t m,
                       std::complex<double>* out, std::size_t nj);
void phasor_sum_rotate_scalar(double* sre, double* sim,
                              const double* rre, const double* rim, std::size_t m,
                              std::complex<double>* out, std::size_t nj);
void phasor_sum_rotate_avx2(double* sre, double* sim,
                            const double* rre, const double* rim, std::size_t m,
                            std::complex<double>* out, std::size_t nj);

// dst[i] += a * src[i]
void axpy(double* dst, const double* src, double a, std::size_t n);
void axpy_scalar(double* dst, const double* src, double a, std::size_t n);
void axpy_avx2(double* dst, const double* src, double a, std::size_t n);

// a[i] *= b[i], interleaved complex doubles
void cmul_inplace(std::complex<double>* a, const std::complex<double>* b, std::size_t n);
void cmul_inplace_scalar(std::complex<double>* a, const std::complex<double>* b, std::size_t n);
void cmul_inplace_avx2(std::complex<double>* a, const std::complex<double>* b, std::size_t n);

}  // namespace ppra::kernels
