#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "ppra/arith.hpp"
#include "ppra/special.hpp"

namespace ppra {

// Oscillation-aware quadrature parameters.  Panel count over an interval is
// max(64, ceil(max_frequency * width) * panels_per_period).
struct QuadSpec {
    enum class Rule { simpson, gauss_legendre };

    int panels_per_period = 8;   // >= 8
    double max_frequency = 0.0;  // cycles per unit alpha; ops derive it when 0
    Rule rule = Rule::gauss_legendre;

    std::int64_t panel_count(double interval_width) const;
};

// Truncated smoothed exponential sum over prime powers,
//   sum_{n <= n_max} Lambda(n) e^{-n^k/N} e(n^k alpha),
// with n_max = ceil((trunc_tau * N)^(1/k)); the dropped tail is below
// N e^{-trunc_tau}.  Holds the nonzero terms packed as (weight, frequency)
// pairs for the grid kernels.
class ExpSumContext {
  public:
    ExpSumContext(std::int64_t n_scale, int k, const LambdaTable& table,
                  double trunc_tau = 50.0);  // throws if the table is too short

    std::int64_t n_scale() const { return n_scale_; }
    int k() const { return k_; }
    double trunc_tau() const { return trunc_tau_; }
    std::int64_t n_max() const { return n_max_; }
    std::int64_t bandwidth() const { return bandwidth_; }  // largest frequency n^k
    std::size_t term_count() const { return weights_.size(); }
    std::span<const double> weights() const { return weights_; }
    std::span<const std::int64_t> frequencies() const { return freqs_; }

    // out[j] = S(alpha0 + j*step); chunked phasor recurrence with exact
    // restarts, deterministic for every worker count.
    void eval_grid(double alpha0, double step, std::span<std::complex<double>> out) const;

    // out[j] = S(j/denom) for j = 0..denom-1 with exact rational phases.
    std::vector<std::complex<double>> eval_unit_grid(std::uint64_t denom) const;

  private:
    std::int64_t n_scale_;
    int k_;
    double trunc_tau_;
    std::int64_t n_max_ = 0;
    std::int64_t bandwidth_ = 0;
    std::vector<double> weights_;
    std::vector<std::int64_t> freqs_;
};

// S~_k(alpha); conjugate-symmetric in alpha.
std::complex<double> s_tilde(const ExpSumContext& ctx, double alpha);

// U(alpha, H) = sum_{m=1}^{H} e(m alpha), evaluated in closed form
// (Dirichlet-kernel ratio); alpha == 0 (mod 1) returns H.
std::complex<double> u_sum(double alpha, std::int64_t h);

// E~_k(alpha) = S~_k(alpha) - gamma_k z^{-1/k}
std::complex<double> e_tilde(const ExpSumContext& ctx, double alpha);

struct UBoundCheck {
    bool ok = false;
    double worst_alpha = 0.0;
    double max_ratio = 0.0;  // max over grid of |U| / min(H, 1/|alpha|)
};
UBoundCheck check_u_bound(std::int64_t h, std::int64_t grid_size);

struct ZBoundCheck {
    bool ok = false;
    double worst_alpha = 0.0;
    double max_ratio = 0.0;  // max of |z|^-1 / (pi min(N, 1/(2 pi |alpha|)))
};
ZBoundCheck check_z_bound(std::int64_t n_scale, std::int64_t grid_size);

struct LaplaceCheck {
    std::complex<double> quad_value;
    double closed_form = 0.0;  // e^{-n/N} n^{mu-1} / Gamma(mu)
    double gap = 0.0;
    double o_term = 0.0;       // 5 / (n X^mu)
    double quad_budget = 0.0;
    bool pass = false;
};
// integral_{-X}^{X} z^{-mu} e(-n alpha) d alpha vs the closed form.
LaplaceCheck laplace_check(std::int64_t n_scale, std::int64_t n, double mu, double x,
                           QuadSpec quad = {});

struct MtSumCheck {
    double exact_sum = 0.0;  // sum_{n=N+1}^{N+H} e^{-n/N} n^lambda
    double approx = 0.0;     // H N^lambda / e
    double gap = 0.0;
    double budget = 0.0;     // 5 H^2 N^{lambda-1}
    bool pass = false;
};
MtSumCheck mt_sum_check(std::int64_t n_scale, std::int64_t h, double lambda);

// Composite-Simpson mass of |S~_k|^2 (or |E~_k|^2 with subtract_main) over
// [lo, hi], sampled through the grid kernels.
double l2_mass(const ExpSumContext& ctx, double lo, double hi, std::int64_t samples,
               bool subtract_main);

// Quadrature estimates of the L2 masses; diagnostics only (the implied
// constants in the reference shapes are unknown).
double l2_e_tilde(const ExpSumContext& ctx, double xi, std::int64_t samples);
double l2_s_tilde(const ExpSumContext& ctx, double tau, std::int64_t samples);

// Reference shapes the L2 diagnostics are reported against.
double l2_e_tilde_rh_shape(std::int64_t n_scale, int k, double xi);   // N^{1/k} xi (log N)^2
double l2_s_tilde_shape(std::int64_t n_scale, int k, double tau);     // (tau N^{1/k} + N^{2/k-1}) (log N)^3

struct SupCheck {
    double sup_ratio = 0.0;      // sup over grid of |S~_k| / N^{1/k}
    double ratio_at_zero = 0.0;
    double argmax_alpha = 0.0;
};
SupCheck s_tilde_sup_check(const ExpSumContext& ctx, std::int64_t grid_size);

// Coefficients c_r(I) of the product decomposition
//   prod(x_j + y_j) = prod x_j + sum_i y_i prod_{j!=i}(x_j + y_j)
//                     + sum_{|I|>=2} c_r(I) prod_{i not in I} x_i prod_{i in I} y_i,
// derived by exact multilinear expansion over all 2^r monomials; returned as
// a map from |I| to the (size-only) coefficient.  2 <= r <= 12.
std::map<int, long long> decomposition_coefficients(int r);

// |prod(x+y) - prod x - A - B| for concrete complex data, with B built from
// decomposition_coefficients.
double decomposition_residual(std::span<const std::complex<double>> x,
                              std::span<const std::complex<double>> y);

// R(n;k) recovered as e^{n/N} times the n-th Fourier coefficient of
// prod_j S~_{k_j}; the truncated product is a finite trigonometric
// polynomial, so averaging over bandwidth+1 equispaced points extracts the
// coefficient exactly up to rounding.  quad.max_frequency, when set, caps
// the admissible bandwidth (throws std::length_error if insufficient).
double reconstruct_r_via_integral(std::int64_t n_scale, std::int64_t n, const KTuple& tuple,
                                  const LambdaTable& table, QuadSpec quad = {});

// Optional diagnostic: the tail integral of prod S~ * U(-alpha,H) e(-N alpha)
// over [-1/2,-B/H] u [B/H,1/2], Simpson-sampled.
std::complex<double> restricted_tail_integral(std::int64_t n_scale, std::int64_t h,
                                              double b_param, const KTuple& tuple,
                                              const LambdaTable& table,
                                              std::int64_t samples_per_side);

}  // namespace ppra
