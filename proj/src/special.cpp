#include "ppra/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ppra {

KTuple::KTuple(std::vector<int> exponents) : exps_(std::move(exponents)) {
    if (exps_.empty()) throw std::invalid_argument("KTuple: at least one exponent required");
    for (int k : exps_)
        if (k < 2) throw std::invalid_argument("KTuple: every exponent must be >= 2");
    std::sort(exps_.begin(), exps_.end());  // canonical nondecreasing order
}

namespace {

// Lanczos approximation, g = 7, 9 terms; relative error well under 1e-12
// across (0.5, 20] in double precision.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

double lanczos_gamma(double x) {
    // valid for x >= 0.5
    double series = kLanczos[0];
    for (int i = 1; i < 9; ++i) series += kLanczos[i] / (x - 1.0 + i);
    const double t = x + kLanczosG - 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x - 0.5) * std::exp(-t) * series;
}

}  // namespace

double gamma_real(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma_real: requires x > 0");
    if (x > 50.0) throw std::domain_error("gamma_real: requires x <= 50");
    if (x < 0.5) return lanczos_gamma(x + 1.0) / x;
    return lanczos_gamma(x);
}

double gamma_k(int k) {
    if (k < 1) throw std::domain_error("gamma_k: requires k >= 1");
    return gamma_real(1.0 + 1.0 / static_cast<double>(k));
}

double density(const KTuple& k) {
    double rho = 0.0;
    for (int e : k.exponents()) rho += 1.0 / static_cast<double>(e);
    return rho;
}

double g_of_exponents(std::span<const int> exponents) {
    double g = 1.0;
    for (int e : exponents) g *= gamma_k(e);
    return g;
}

double g_of_k(const KTuple& k) { return g_of_exponents(k.exponents()); }

ComplexParam::ComplexParam(std::int64_t n, double a) : n_scale(n), alpha(a) {
    if (n < 1) throw std::invalid_argument("ComplexParam: N must be >= 1");
    // one-ulp slack so grid endpoints assembled as lo + j*step stay legal
    if (!(std::abs(a) <= 0.5 + 1e-9))
        throw std::invalid_argument("ComplexParam: alpha must lie in [-1/2, 1/2]");
    value = {1.0 / static_cast<double>(n), -2.0 * std::numbers::pi * a};
}

std::complex<double> z_power_neg_mu(const ComplexParam& z, double mu) {
    if (!(mu > 0.0)) throw std::domain_error("z_power_neg_mu: requires mu > 0");
    // Re z > 0 keeps arg z inside (-pi/2, pi/2); the polar form makes the
    // principal branch explicit.
    const double modulus = std::abs(z.value);
    const double argument = std::atan2(z.value.imag(), z.value.real());
    return std::polar(std::exp(-mu * std::log(modulus)), -mu * argument);
}

double big_a(double n, double c) {
    const double log_n = std::log(n);
    if (!(log_n > 1.0)) throw std::domain_error("big_a: requires log log N > 0");
    return std::exp(c * std::cbrt(log_n / std::log(log_n)));
}

}  // namespace ppra
