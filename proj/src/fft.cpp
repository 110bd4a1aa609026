#include "ppra/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ppra {

Fft::Fft(std::size_t n) : n_(n) {
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("Fft: size must be a power of two");
    const int bits = std::countr_zero(n);
    rev_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = 0;
        for (int b = 0; b < bits; ++b)
            if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
        rev_[i] = static_cast<std::uint32_t>(r);
    }
    tw_.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        tw_[k] = {std::cos(ang), std::sin(ang)};
    }
}

void Fft::transform(std::complex<double>* a, bool invert) const {
    for (std::size_t i = 0; i < n_; ++i)
        if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);

    for (std::size_t len = 2; len <= n_; len <<= 1) {
        const std::size_t half = len >> 1;
        const std::size_t stride = n_ / len;
        for (std::size_t i = 0; i < n_; i += len) {
            for (std::size_t j = 0; j < half; ++j) {
                std::complex<double> w = tw_[j * stride];
                if (invert) w = std::conj(w);
                const std::complex<double> u = a[i + j];
                const std::complex<double> v = a[i + j + half] * w;
                a[i + j] = u + v;
                a[i + j + half] = u - v;
            }
        }
    }
    if (invert) {
        const double scale = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) a[i] *= scale;
    }
}

void Fft::forward(std::complex<double>* a) const { transform(a, false); }
void Fft::inverse(std::complex<double>* a) const { transform(a, true); }

std::vector<double> convolve_fft(std::span<const double> a, std::span<const double> b,
                                 std::int64_t limit, std::size_t max_len) {
    const std::size_t out_len =
        std::min<std::size_t>(static_cast<std::size_t>(limit) + 1,
                              a.empty() || b.empty() ? 0 : a.size() + b.size() - 1);
    if (out_len == 0) return std::vector<double>(static_cast<std::size_t>(limit) + 1, 0.0);

    // zero-pad to kill cyclic wraparound
    const std::size_t need = a.size() + b.size() - 1;
    const std::size_t len = std::bit_ceil(need);
    if (len > max_len) throw std::length_error("convolve_fft: padded length exceeds the budget");

    // Pack both real inputs into one complex transform: f = FFT(a + i b),
    // then A_k = (f_k + conj(f_{-k}))/2 and B_k = (f_k - conj(f_{-k}))/(2i).
    std::vector<std::complex<double>> f(len, {0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i) f[i] = {a[i], 0.0};
    for (std::size_t i = 0; i < b.size(); ++i) f[i] = {f[i].real(), b[i]};

    Fft plan(len);
    plan.forward(f.data());

    std::vector<std::complex<double>> c(len);
    for (std::size_t k = 0; k <= len / 2; ++k) {
        const std::size_t kc = (len - k) & (len - 1);
        const std::complex<double> fk = f[k];
        const std::complex<double> fkc = std::conj(f[kc]);
        const std::complex<double> ak = 0.5 * (fk + fkc);
        const std::complex<double> bk = std::complex<double>(0.0, -0.5) * (fk - fkc);
        c[k] = ak * bk;
        c[kc] = std::conj(c[k]);
    }
    plan.inverse(c.data());

    std::vector<double> out(static_cast<std::size_t>(limit) + 1, 0.0);
    for (std::size_t n = 0; n < out_len; ++n) out[n] = c[n].real();
    return out;
}

}  // namespace ppra
