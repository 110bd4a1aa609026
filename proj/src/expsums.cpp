#include "ppra/expsums.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ppra/kernels.hpp"
#include "ppra/parallel.hpp"

namespace ppra {

namespace {

constexpr std::int64_t kGridChunk = 1024;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Fractional part of f*alpha in [-1/2, 1/2], with an FMA correction so the
// phase stays at ulp accuracy even when the product f*alpha is large.
inline double phase_frac(double f, double alpha) {
    const double p = f * alpha;
    const double err = std::fma(f, alpha, -p);
    double r = (p - std::nearbyint(p)) + err;
    if (r > 0.5) r -= 1.0;
    else if (r < -0.5) r += 1.0;
    return r;
}

// Exact fractional part of f*j/denom in [-1/2, 1/2] via 128-bit modular
// arithmetic.
inline double phase_frac_rational(std::int64_t f, std::uint64_t j, std::uint64_t denom) {
    const unsigned __int128 prod =
        static_cast<unsigned __int128>(static_cast<std::uint64_t>(f)) * j;
    const auto rem = static_cast<std::uint64_t>(prod % denom);
    double frac = static_cast<double>(rem) / static_cast<double>(denom);
    if (frac > 0.5) frac -= 1.0;
    return frac;
}

inline std::complex<double> cis_frac(double frac) {
    const double t = kTwoPi * frac;
    return {std::cos(t), std::sin(t)};
}

// e(n alpha) for integer n, exact-reduced phase
inline std::complex<double> e_int(std::int64_t n, double alpha) {
    return cis_frac(phase_frac(static_cast<double>(n), alpha));
}

std::int64_t checked_pow(std::int64_t base, int k) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < k; ++i) {
        acc *= static_cast<std::uint64_t>(base);
        if (acc > (static_cast<unsigned __int128>(1) << 62))
            throw std::overflow_error("exponential-sum frequency exceeds 2^62");
    }
    return static_cast<std::int64_t>(acc);
}

}  // namespace

std::int64_t QuadSpec::panel_count(double interval_width) const {
    const int ppp = std::max(panels_per_period, 8);
    const double periods = std::ceil(std::max(max_frequency, 0.0) * interval_width);
    const auto count = static_cast<std::int64_t>(periods) * ppp;
    return std::max<std::int64_t>(count, 64);
}

ExpSumContext::ExpSumContext(std::int64_t n_scale, int k, const LambdaTable& table,
                             double trunc_tau)
    : n_scale_(n_scale), k_(k), trunc_tau_(trunc_tau) {
    if (n_scale < 1) throw std::invalid_argument("ExpSumContext: N must be >= 1");
    if (k < 2) throw std::invalid_argument("ExpSumContext: k must be >= 2");
    if (!(trunc_tau > 0.0)) throw std::invalid_argument("ExpSumContext: trunc_tau must be > 0");

    n_max_ = static_cast<std::int64_t>(std::ceil(
        std::pow(trunc_tau * static_cast<double>(n_scale), 1.0 / static_cast<double>(k))));
    n_max_ = std::max<std::int64_t>(n_max_, 2);
    if (table.limit < n_max_)
        throw std::invalid_argument("ExpSumContext: lambda table shorter than the truncation index");

    const double inv_n = 1.0 / static_cast<double>(n_scale);
    for (std::int64_t m = 2; m <= n_max_; ++m) {
        const double lam = table(m);
        if (lam == 0.0) continue;
        const std::int64_t f = checked_pow(m, k);
        weights_.push_back(lam * std::exp(-static_cast<double>(f) * inv_n));
        freqs_.push_back(f);
    }
    if (!freqs_.empty()) bandwidth_ = freqs_.back();
}

void ExpSumContext::eval_grid(double alpha0, double step,
                              std::span<std::complex<double>> out) const {
    const std::size_t m = weights_.size();
    if (out.empty()) return;
    if (m == 0) {
        std::fill(out.begin(), out.end(), std::complex<double>{0.0, 0.0});
        return;
    }

    // per-term rotators e(f step), shared by all chunks
    std::vector<double> rot_re(m), rot_im(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto rot = cis_frac(phase_frac(static_cast<double>(freqs_[i]), step));
        rot_re[i] = rot.real();
        rot_im[i] = rot.imag();
    }

    parallel_chunks(static_cast<std::int64_t>(out.size()), kGridChunk,
                    [&](std::int64_t, std::int64_t j0, std::int64_t j1) {
                        // exact restart at the chunk head bounds the phase
                        // drift of the rotation recurrence
                        std::vector<double> sre(m), sim(m);
                        const double a0 = alpha0 + static_cast<double>(j0) * step;
                        for (std::size_t i = 0; i < m; ++i) {
                            const auto c =
                                cis_frac(phase_frac(static_cast<double>(freqs_[i]), a0));
                            sre[i] = weights_[i] * c.real();
                            sim[i] = weights_[i] * c.imag();
                        }
                        kernels::phasor_sum_rotate(sre.data(), sim.data(), rot_re.data(),
                                                   rot_im.data(), m, out.data() + j0,
                                                   static_cast<std::size_t>(j1 - j0));
                    });
}

std::vector<std::complex<double>> ExpSumContext::eval_unit_grid(std::uint64_t denom) const {
    std::vector<std::complex<double>> out(denom);
    const std::size_t m = weights_.size();
    if (denom == 0) return out;
    if (m == 0) return out;

    std::vector<double> rot_re(m), rot_im(m);
    for (std::size_t i = 0; i < m; ++i) {
        const auto rot = cis_frac(phase_frac_rational(freqs_[i], 1, denom));
        rot_re[i] = rot.real();
        rot_im[i] = rot.imag();
    }

    parallel_chunks(static_cast<std::int64_t>(denom), kGridChunk,
                    [&](std::int64_t, std::int64_t j0, std::int64_t j1) {
                        std::vector<double> sre(m), sim(m);
                        for (std::size_t i = 0; i < m; ++i) {
                            const auto c = cis_frac(phase_frac_rational(
                                freqs_[i], static_cast<std::uint64_t>(j0), denom));
                            sre[i] = weights_[i] * c.real();
                            sim[i] = weights_[i] * c.imag();
                        }
                        kernels::phasor_sum_rotate(sre.data(), sim.data(), rot_re.data(),
                                                   rot_im.data(), m, out.data() + j0,
                                                   static_cast<std::size_t>(j1 - j0));
                    });
    return out;
}

std::complex<double> s_tilde(const ExpSumContext& ctx, double alpha) {
    const auto weights = ctx.weights();
    const auto freqs = ctx.frequencies();
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const auto c = cis_frac(phase_frac(static_cast<double>(freqs[i]), alpha));
        re += weights[i] * c.real();
        im += weights[i] * c.imag();
    }
    return {re, im};
}

std::complex<double> u_sum(double alpha, std::int64_t h) {
    if (h < 1) throw std::invalid_argument("u_sum: H must be >= 1");
    const double a = alpha - std::nearbyint(alpha);
    if (a == 0.0) return {static_cast<double>(h), 0.0};

    // e(a) (e(Ha) - 1) / (e(a) - 1), with e(x) - 1 factored as
    // 2 sin(pi x) (-sin(pi x) + i cos(pi x)) to avoid cancellation
    const double fh = phase_frac(static_cast<double>(h), a);
    const double sh = std::sin(std::numbers::pi * fh);
    const double ch = std::cos(std::numbers::pi * fh);
    const double sa = std::sin(std::numbers::pi * a);
    const double ca = std::cos(std::numbers::pi * a);
    const std::complex<double> num(-sh, ch);
    const std::complex<double> den(-sa, ca);
    const std::complex<double> ea(ca * ca - sa * sa, 2.0 * sa * ca);  // e(a)
    return ea * (sh / sa) * (num / den);
}

std::complex<double> e_tilde(const ExpSumContext& ctx, double alpha) {
    const ComplexParam z(ctx.n_scale(), alpha);
    return s_tilde(ctx, alpha) -
           gamma_k(ctx.k()) * z_power_neg_mu(z, 1.0 / static_cast<double>(ctx.k()));
}

UBoundCheck check_u_bound(std::int64_t h, std::int64_t grid_size) {
    if (grid_size < 2) throw std::invalid_argument("check_u_bound: grid_size must be >= 2");
    UBoundCheck check;
    check.ok = true;
    const double step = 1.0 / static_cast<double>(grid_size - 1);
    for (std::int64_t i = 0; i < grid_size; ++i) {
        const double alpha = -0.5 + static_cast<double>(i) * step;
        const double bound = alpha == 0.0
                                 ? static_cast<double>(h)
                                 : std::min(static_cast<double>(h), 1.0 / std::abs(alpha));
        const double ratio = std::abs(u_sum(alpha, h)) / bound;
        if (ratio > check.max_ratio) {
            check.max_ratio = ratio;
            check.worst_alpha = alpha;
        }
    }
    check.ok = check.max_ratio <= 1.0 + 1e-9;
    return check;
}

ZBoundCheck check_z_bound(std::int64_t n_scale, std::int64_t grid_size) {
    if (grid_size < 2) throw std::invalid_argument("check_z_bound: grid_size must be >= 2");
    ZBoundCheck check;
    const double step = 1.0 / static_cast<double>(grid_size - 1);
    for (std::int64_t i = 0; i < grid_size; ++i) {
        const double alpha = -0.5 + static_cast<double>(i) * step;
        const ComplexParam z(n_scale, alpha);
        const double inv_mod = 1.0 / std::abs(z.value);
        const double bound =
            std::numbers::pi *
            (alpha == 0.0 ? static_cast<double>(n_scale)
                          : std::min(static_cast<double>(n_scale),
                                     1.0 / (kTwoPi * std::abs(alpha))));
        const double ratio = inv_mod / bound;
        if (ratio > check.max_ratio) {
            check.max_ratio = ratio;
            check.worst_alpha = alpha;
        }
    }
    check.ok = check.max_ratio <= 1.0 + 1e-9;
    return check;
}

namespace {

// 5-point Gauss-Legendre nodes/weights on [-1, 1]
constexpr double kGl5Node[5] = {-0.90617984593866396, -0.53846931010568311, 0.0,
                                0.53846931010568311, 0.90617984593866396};
constexpr double kGl5Weight[5] = {0.23692688505618909, 0.47862867049936647,
                                  0.56888888888888889, 0.47862867049936647,
                                  0.23692688505618909};

template <typename F>
std::complex<double> integrate_panels(F&& f, double a, double b, std::int64_t panels,
                                      QuadSpec::Rule rule) {
    const double width = (b - a) / static_cast<double>(panels);
    std::complex<double> total{0.0, 0.0};
    if (rule == QuadSpec::Rule::simpson) {
        for (std::int64_t p = 0; p < panels; ++p) {
            const double x0 = a + static_cast<double>(p) * width;
            total += (width / 6.0) *
                     (f(x0) + 4.0 * f(x0 + 0.5 * width) + f(x0 + width));
        }
    } else {
        for (std::int64_t p = 0; p < panels; ++p) {
            const double mid = a + (static_cast<double>(p) + 0.5) * width;
            std::complex<double> panel{0.0, 0.0};
            for (int q = 0; q < 5; ++q)
                panel += kGl5Weight[q] * f(mid + 0.5 * width * kGl5Node[q]);
            total += 0.5 * width * panel;
        }
    }
    return total;
}

}  // namespace

LaplaceCheck laplace_check(std::int64_t n_scale, std::int64_t n, double mu, double x,
                           QuadSpec quad) {
    if (n_scale < 1 || n < 1) throw std::invalid_argument("laplace_check: N, n must be >= 1");
    if (!(mu > 0.0) || !(x > 0.0) || x > 0.5)
        throw std::invalid_argument("laplace_check: requires mu > 0 and 0 < X <= 1/2");

    // z^{-mu} contributes phase at rate up to mu*N cycles near alpha = 0,
    // e(-n alpha) at rate n
    if (quad.max_frequency <= 0.0)
        quad.max_frequency = static_cast<double>(n) + mu * static_cast<double>(n_scale);

    auto integrand = [&](double alpha) {
        const ComplexParam z(n_scale, alpha);
        return z_power_neg_mu(z, mu) * e_int(-n, alpha);
    };

    const std::int64_t panels = quad.panel_count(2.0 * x);
    const std::complex<double> coarse = integrate_panels(integrand, -x, x, panels, quad.rule);
    const std::complex<double> fine = integrate_panels(integrand, -x, x, 2 * panels, quad.rule);

    LaplaceCheck check;
    check.quad_value = fine;
    check.closed_form = std::exp(-static_cast<double>(n) / static_cast<double>(n_scale)) *
                        std::pow(static_cast<double>(n), mu - 1.0) / gamma_real(mu);
    check.gap = std::abs(check.quad_value - check.closed_form);
    check.o_term = 5.0 / (static_cast<double>(n) * std::pow(x, mu));
    check.quad_budget = 1e-5 + 1e-9 * std::abs(check.closed_form);
    if (std::abs(fine - coarse) > 10.0 * check.quad_budget)
        throw std::runtime_error("laplace_check: quadrature did not converge");
    check.pass = check.gap <= check.o_term + check.quad_budget;
    return check;
}

MtSumCheck mt_sum_check(std::int64_t n_scale, std::int64_t h, double lambda) {
    if (n_scale < 1 || h < 1 || h > n_scale)
        throw std::invalid_argument("mt_sum_check: requires 1 <= H <= N");
    MtSumCheck check;
    const double nd = static_cast<double>(n_scale);
    double sum = 0.0;
    for (std::int64_t m = n_scale + 1; m <= n_scale + h; ++m) {
        const double md = static_cast<double>(m);
        sum += std::exp(-md / nd) * std::pow(md, lambda);
    }
    check.exact_sum = sum;
    check.approx = static_cast<double>(h) * std::pow(nd, lambda) / std::numbers::e;
    check.gap = std::abs(check.exact_sum - check.approx);
    check.budget = 5.0 * static_cast<double>(h) * static_cast<double>(h) *
                   std::pow(nd, lambda - 1.0);
    check.pass = check.gap <= check.budget;
    return check;
}

double l2_mass(const ExpSumContext& ctx, double lo, double hi, std::int64_t samples,
               bool subtract_main) {
    if (samples < 3) samples = 3;
    if (samples % 2 == 0) ++samples;
    const double step = (hi - lo) / static_cast<double>(samples - 1);
    std::vector<std::complex<double>> grid(static_cast<std::size_t>(samples));
    ctx.eval_grid(lo, step, grid);
    if (subtract_main) {
        const double inv_k = 1.0 / static_cast<double>(ctx.k());
        const double gk = gamma_k(ctx.k());
        for (std::int64_t j = 0; j < samples; ++j) {
            const double alpha = lo + static_cast<double>(j) * step;
            const ComplexParam z(ctx.n_scale(), alpha);
            grid[static_cast<std::size_t>(j)] -= gk * z_power_neg_mu(z, inv_k);
        }
    }
    double total = 0.0;
    for (std::int64_t j = 0; j < samples; ++j) {
        const double v = std::norm(grid[static_cast<std::size_t>(j)]);
        const double w = (j == 0 || j == samples - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        total += w * v;
    }
    return total * step / 3.0;
}

double l2_e_tilde(const ExpSumContext& ctx, double xi, std::int64_t samples) {
    if (!(xi >= 0.0) || xi > 0.5)
        throw std::invalid_argument("l2_e_tilde: requires 0 <= xi <= 1/2");
    if (xi == 0.0) return 0.0;
    return l2_mass(ctx, -xi, xi, samples, true);
}

double l2_s_tilde(const ExpSumContext& ctx, double tau, std::int64_t samples) {
    if (!(tau >= 0.0) || tau > 0.5)
        throw std::invalid_argument("l2_s_tilde: requires 0 <= tau <= 1/2");
    if (tau == 0.0) return 0.0;
    return l2_mass(ctx, -tau, tau, samples, false);
}

double l2_e_tilde_rh_shape(std::int64_t n_scale, int k, double xi) {
    const double nd = static_cast<double>(n_scale);
    const double log_n = std::log(nd);
    return std::pow(nd, 1.0 / static_cast<double>(k)) * xi * log_n * log_n;
}

double l2_s_tilde_shape(std::int64_t n_scale, int k, double tau) {
    const double nd = static_cast<double>(n_scale);
    const double kd = static_cast<double>(k);
    const double log_n = std::log(nd);
    return (tau * std::pow(nd, 1.0 / kd) + std::pow(nd, 2.0 / kd - 1.0)) * log_n * log_n * log_n;
}

SupCheck s_tilde_sup_check(const ExpSumContext& ctx, std::int64_t grid_size) {
    if (grid_size < 3) throw std::invalid_argument("s_tilde_sup_check: grid too small");
    if (grid_size % 2 == 0) ++grid_size;  // keep alpha = 0 on the grid
    const double step = 1.0 / static_cast<double>(grid_size - 1);
    std::vector<std::complex<double>> grid(static_cast<std::size_t>(grid_size));
    ctx.eval_grid(-0.5, step, grid);

    const double scale =
        std::pow(static_cast<double>(ctx.n_scale()), 1.0 / static_cast<double>(ctx.k()));
    SupCheck check;
    for (std::int64_t j = 0; j < grid_size; ++j) {
        const double v = std::abs(grid[static_cast<std::size_t>(j)]) / scale;
        if (v > check.sup_ratio) {
            check.sup_ratio = v;
            check.argmax_alpha = -0.5 + static_cast<double>(j) * step;
        }
    }
    check.ratio_at_zero = std::abs(grid[static_cast<std::size_t>((grid_size - 1) / 2)]) / scale;
    return check;
}

std::map<int, long long> decomposition_coefficients(int r) {
    if (r < 2 || r > 12)
        throw std::invalid_argument("decomposition_coefficients: requires 2 <= r <= 12");

    // Every term in play is multilinear with full support: bit j of a mask
    // says whether position j carries y_j (set) or x_j (clear).
    const std::size_t n_masks = std::size_t{1} << r;
    std::vector<long long> coeff(n_masks, 0);

    // prod (x_j + y_j): every mask once
    for (std::size_t mask = 0; mask < n_masks; ++mask) coeff[mask] += 1;
    // minus prod x_j
    coeff[0] -= 1;
    // minus A = sum_i y_i prod_{j != i} (x_j + y_j)
    for (int i = 0; i < r; ++i) {
        const std::size_t bit = std::size_t{1} << i;
        for (std::size_t rest = 0; rest < n_masks; ++rest) {
            if (rest & bit) continue;
            coeff[rest | bit] -= 1;
        }
    }

    std::map<int, long long> by_size;
    for (std::size_t mask = 0; mask < n_masks; ++mask) {
        const int size = std::popcount(mask);
        if (size < 2) {
            if (coeff[mask] != 0)
                throw std::logic_error("decomposition_coefficients: unexpected low-order term");
            continue;
        }
        auto [it, inserted] = by_size.emplace(size, coeff[mask]);
        if (!inserted && it->second != coeff[mask])
            throw std::logic_error("decomposition_coefficients: coefficient not a function of |I|");
    }
    return by_size;
}

double decomposition_residual(std::span<const std::complex<double>> x,
                              std::span<const std::complex<double>> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("decomposition_residual: length mismatch");
    const int r = static_cast<int>(x.size());
    if (r < 2) throw std::invalid_argument("decomposition_residual: requires r >= 2");

    const auto coeffs = decomposition_coefficients(r);

    std::complex<double> prod_s{1.0, 0.0}, prod_x{1.0, 0.0};
    for (int j = 0; j < r; ++j) {
        prod_s *= x[j] + y[j];
        prod_x *= x[j];
    }

    std::complex<double> a{0.0, 0.0};
    for (int i = 0; i < r; ++i) {
        std::complex<double> term = y[i];
        for (int j = 0; j < r; ++j)
            if (j != i) term *= x[j] + y[j];
        a += term;
    }

    std::complex<double> b{0.0, 0.0};
    const std::size_t n_masks = std::size_t{1} << r;
    for (std::size_t mask = 0; mask < n_masks; ++mask) {
        const int size = std::popcount(mask);
        if (size < 2) continue;
        std::complex<double> term{static_cast<double>(coeffs.at(size)), 0.0};
        for (int j = 0; j < r; ++j)
            term *= (mask >> j) & 1 ? y[j] : x[j];
        b += term;
    }

    return std::abs(prod_s - (prod_x + a + b));
}

double reconstruct_r_via_integral(std::int64_t n_scale, std::int64_t n, const KTuple& tuple,
                                  const LambdaTable& table, QuadSpec quad) {
    if (tuple.r() > 4)
        throw std::invalid_argument("reconstruct_r_via_integral: r <= 4 at this scale");
    if (n < 1) throw std::invalid_argument("reconstruct_r_via_integral: n must be >= 1");

    std::vector<ExpSumContext> ctxs;
    std::int64_t bandwidth = 0;
    for (int k : tuple.exponents()) {
        ctxs.emplace_back(n_scale, k, table);
        bandwidth += ctxs.back().bandwidth();
    }
    if (static_cast<double>(n) > 3.0 * ctxs.front().trunc_tau() * static_cast<double>(n_scale))
        throw std::domain_error("reconstruct_r_via_integral: n outside the truncation support");
    if (quad.max_frequency > 0.0 && static_cast<double>(bandwidth) > quad.max_frequency)
        throw std::length_error("reconstruct_r_via_integral: insufficient sampling density");

    // The truncated product is a trigonometric polynomial with nonnegative
    // frequencies up to `bandwidth`, so averaging over bandwidth+1
    // equispaced points extracts the n-th coefficient exactly.
    const auto denom = static_cast<std::uint64_t>(bandwidth + 1);
    std::vector<std::complex<double>> grid;
    for (std::size_t j = 0; j < ctxs.size(); ++j) {
        if (j == 0) {
            grid = ctxs[j].eval_unit_grid(denom);
        } else {
            const auto factor = ctxs[j].eval_unit_grid(denom);
            kernels::cmul_inplace(grid.data(), factor.data(), grid.size());
        }
    }

    std::complex<double> coeff{0.0, 0.0};
    for (std::uint64_t j = 0; j < denom; ++j)
        coeff += grid[j] * cis_frac(-phase_frac_rational(n, j, denom));
    coeff /= static_cast<double>(denom);

    return std::exp(static_cast<double>(n) / static_cast<double>(n_scale)) * coeff.real();
}

std::complex<double> restricted_tail_integral(std::int64_t n_scale, std::int64_t h,
                                              double b_param, const KTuple& tuple,
                                              const LambdaTable& table,
                                              std::int64_t samples_per_side) {
    if (h < 1) throw std::invalid_argument("restricted_tail_integral: H must be >= 1");
    const double cut = b_param / static_cast<double>(h);
    if (!(cut > 0.0) || cut >= 0.5)
        throw std::invalid_argument("restricted_tail_integral: requires 0 < B/H < 1/2");

    std::vector<ExpSumContext> ctxs;
    for (int k : tuple.exponents()) ctxs.emplace_back(n_scale, k, table);

    auto side_mass = [&](double lo, double hi) {
        std::int64_t samples = std::max<std::int64_t>(samples_per_side, 3);
        if (samples % 2 == 0) ++samples;
        const double step = (hi - lo) / static_cast<double>(samples - 1);
        std::vector<std::complex<double>> grid(static_cast<std::size_t>(samples));
        ctxs.front().eval_grid(lo, step, grid);
        for (std::size_t j = 1; j < ctxs.size(); ++j) {
            std::vector<std::complex<double>> factor(grid.size());
            ctxs[j].eval_grid(lo, step, factor);
            kernels::cmul_inplace(grid.data(), factor.data(), grid.size());
        }
        std::complex<double> total{0.0, 0.0};
        for (std::int64_t j = 0; j < samples; ++j) {
            const double alpha = lo + static_cast<double>(j) * step;
            const std::complex<double> q = grid[static_cast<std::size_t>(j)] *
                                           u_sum(-alpha, h) * e_int(-n_scale, alpha);
            const double w = (j == 0 || j == samples - 1) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
            total += w * q;
        }
        return total * (step / 3.0);
    };

    return side_mass(-0.5, -cut) + side_mass(cut, 0.5);
}

}  // namespace ppra
