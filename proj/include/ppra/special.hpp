#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ppra {

// Exponent tuple k = (k_1,...,k_r), nondecreasing, each k_j >= 2, r >= 1.
class KTuple {
  public:
    explicit KTuple(std::vector<int> exponents);  // throws std::invalid_argument

    std::span<const int> exponents() const { return exps_; }
    int r() const { return static_cast<int>(exps_.size()); }
    int k_min() const { return exps_.front(); }
    int k_max() const { return exps_.back(); }
    int operator[](int j) const { return exps_[static_cast<std::size_t>(j)]; }

  private:
    std::vector<int> exps_;
};

// Real Gamma on (0, 50], Lanczos approximation (g = 7, 9 coefficients).
// Relative error <= 1e-12 on (0.5, 20].  Throws std::domain_error for x <= 0
// or x > 50.
double gamma_real(double x);

// gamma_k = Gamma(1 + 1/k); k = 1 accepted for testing (value 1).
double gamma_k(int k);

// rho = sum 1/k_j
double density(const KTuple& k);

// G(k) = prod Gamma(1 + 1/k_j); the span overload admits the empty product.
double g_of_exponents(std::span<const int> exponents);
double g_of_k(const KTuple& k);

// z = 1/N - 2 pi i alpha.  Re z > 0, so all principal powers stay inside the
// sector |arg z| < pi/2.
struct ComplexParam {
    std::int64_t n_scale = 0;
    double alpha = 0.0;
    std::complex<double> value;

    ComplexParam(std::int64_t n, double a);
};

// Principal-branch z^(-mu) via polar decomposition exp(-mu (log|z| + i arg z)).
std::complex<double> z_power_neg_mu(const ComplexParam& z, double mu);

// A(N; c) = exp{c (log N / log log N)^(1/3)}.  Throws std::domain_error when
// log log N <= 0 (N <= e).
double big_a(double n, double c);

inline constexpr double kDefaultErrorScaleC = -1.0 / 3.0;

}  // namespace ppra
