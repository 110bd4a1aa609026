#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace ppra {

// Iterative radix-2 complex FFT with a precomputed twiddle table (the table
// keeps the phase error at the ulp level instead of letting the classic
// w *= wlen recurrence drift over long transforms).
class Fft {
  public:
    explicit Fft(std::size_t n);  // n must be a power of two, throws otherwise

    std::size_t size() const { return n_; }
    void forward(std::complex<double>* a) const;
    void inverse(std::complex<double>* a) const;  // applies the 1/n scale

  private:
    void transform(std::complex<double>* a, bool invert) const;

    std::size_t n_ = 0;
    std::vector<std::uint32_t> rev_;
    std::vector<std::complex<double>> tw_;  // e(-k/n), k < n/2
};

inline constexpr std::size_t kDefaultFftBudget = std::size_t{1} << 26;

// Linear convolution of two real sequences via one packed complex FFT
// (a + ib), truncated to out[0..limit].  Throws std::length_error when the
// zero-padded transform length would exceed max_len.
std::vector<double> convolve_fft(std::span<const double> a, std::span<const double> b,
                                 std::int64_t limit, std::size_t max_len = kDefaultFftBudget);

}  // namespace ppra
