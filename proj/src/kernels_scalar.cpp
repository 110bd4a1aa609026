#include "ppra/kernels.hpp"

namespace ppra::kernels {

void phasor_sum_rotate_scalar(double* sre, double* sim,
                              const double* rre, const double* rim, std::size_t m,
                              std::complex<double>* out, std::size_t nj) {
    for (std::size_t j = 0; j < nj; ++j) {
        double acc_re = 0.0;
        double acc_im = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            const double a = sre[i];
            const double b = sim[i];
            acc_re += a;
            acc_im += b;
            sre[i] = a * rre[i] - b * rim[i];
            sim[i] = a * rim[i] + b * rre[i];
        }
        out[j] = {acc_re, acc_im};
    }
}

void axpy_scalar(double* dst, const double* src, double a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] += a * src[i];
}

void cmul_inplace_scalar(std::complex<double>* a, const std::complex<double>* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double br = b[i].real(), bi = b[i].imag();
        a[i] = {ar * br - ai * bi, ar * bi + ai * br};
    }
}

}  // namespace ppra::kernels
