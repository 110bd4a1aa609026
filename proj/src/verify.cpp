#include "ppra/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <string>

#include "ppra/arith.hpp"
#include "ppra/expsums.hpp"
#include "ppra/representation.hpp"
#include "ppra/special.hpp"

namespace ppra {

namespace {

std::string fmt(const char* pattern, auto... args) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, args...);
    return buf;
}

struct SuiteSink {
    ReportDocument& doc;

    void row(const std::string& suite, const std::string& check, double value, double budget,
             bool pass) {
        doc.add_row({Cell::str(suite), Cell::str(check), Cell::num(value), Cell::num(budget),
                     Cell::flag(pass)});
        if (pass)
            ++doc.summary.pass_count;
        else
            ++doc.summary.fail_count;
        const double dev = budget > 0.0 ? value / budget : value;
        doc.summary.max_deviation = std::max(doc.summary.max_deviation, dev);
    }
};

void suite_identity(SuiteSink& sink, std::uint64_t seed) {
    // exhaustive multilinear expansion: c_r(I) must equal 1 - |I|
    for (int r = 2; r <= 6; ++r) {
        const auto coeffs = decomposition_coefficients(r);
        for (const auto& [size, c] : coeffs) {
            const long long expected = 1 - size;
            sink.row("identity",
                     fmt("product-splitting coefficient r=%d |I|=%d", r, size),
                     static_cast<double>(c), static_cast<double>(expected), c == expected);
        }
    }

    // 100 random complex instances, residual <= 1e-12 * scale
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int r = 3; r <= 6; ++r) {
        for (int inst = 0; inst < 25; ++inst) {
            std::vector<std::complex<double>> x(static_cast<std::size_t>(r));
            std::vector<std::complex<double>> y(static_cast<std::size_t>(r));
            std::complex<double> prod_s{1.0, 0.0};
            for (int j = 0; j < r; ++j) {
                x[static_cast<std::size_t>(j)] = {unit(rng), unit(rng)};
                y[static_cast<std::size_t>(j)] = {unit(rng), unit(rng)};
                prod_s *= x[static_cast<std::size_t>(j)] + y[static_cast<std::size_t>(j)];
            }
            const double residual = decomposition_residual(x, y);
            const double budget = 1e-12 * std::max(1.0, std::abs(prod_s));
            sink.row("identity", fmt("product-splitting residual r=%d instance %d", r, inst),
                     residual, budget, residual <= budget);
        }
    }
}

void suite_laplace(SuiteSink& sink) {
    const std::int64_t n_scale = 1000;
    for (double mu : {0.5, 1.0, 1.5, 2.5}) {
        for (double x : {0.25, 0.5}) {
            for (std::int64_t n : {500, 1000, 2000}) {
                const LaplaceCheck c = laplace_check(n_scale, n, mu, x);
                sink.row("laplace",
                         fmt("laplace closed form vs oscillatory quadrature mu=%.2f X=%.2f n=%lld",
                             mu, x, static_cast<long long>(n)),
                         c.gap, c.o_term + c.quad_budget, c.pass);
            }
        }
    }
}

void suite_mtsum(SuiteSink& sink) {
    const std::int64_t n_scale = 100000;
    for (double lambda : {-0.5, 0.0, 0.5, 1.5}) {
        for (std::int64_t h : {100, 1000}) {
            const MtSumCheck c = mt_sum_check(n_scale, h, lambda);
            sink.row("mtsum",
                     fmt("smoothed power sum vs H N^lambda / e, lambda=%.1f H=%lld", lambda,
                         static_cast<long long>(h)),
                     c.gap, c.budget, c.pass);
        }
    }
    // lambda = 0 has an exact geometric closed form
    for (std::int64_t h : {100, 1000}) {
        const MtSumCheck c = mt_sum_check(n_scale, h, 0.0);
        const double nd = static_cast<double>(n_scale);
        const double q = std::exp(-1.0 / nd);
        const double closed = std::exp(-(nd + 1.0) / nd) *
                              (1.0 - std::pow(q, static_cast<double>(h))) / (1.0 - q);
        const double rel = std::abs(c.exact_sum - closed) / closed;
        sink.row("mtsum",
                 fmt("geometric closed form at lambda=0, H=%lld", static_cast<long long>(h)),
                 rel, 1e-12, rel <= 1e-12);
    }
}

void suite_ubound(SuiteSink& sink) {
    const UBoundCheck c = check_u_bound(1000, 10001);
    sink.row("ubound", "short-interval sum bound |U| <= min(H, 1/|alpha|), H=1000 grid=10001",
             c.max_ratio, 1.0 + 1e-9, c.ok);
}

void suite_zbound(SuiteSink& sink) {
    const ZBoundCheck c = check_z_bound(1000000, 10001);
    sink.row("zbound", "modulus bound 1/|z| <= pi min(N, 1/(2 pi |alpha|)), N=1e6",
             c.max_ratio, 1.0 + 1e-9, c.ok);
}

void suite_supnorm(SuiteSink& sink, const LambdaTable& table) {
    for (int k : {2, 3}) {
        const ExpSumContext ctx(1000000, k, table);
        const SupCheck c = s_tilde_sup_check(ctx, 10001);
        sink.row("supnorm", fmt("sup |S~_k| / N^(1/k) over alpha grid, N=1e6 k=%d", k),
                 c.sup_ratio, 2.0, c.sup_ratio <= 2.0);
        const double step = 1.0 / 10000.0;
        sink.row("supnorm", fmt("sup attained at alpha=0 within one grid step, k=%d", k),
                 std::abs(c.argmax_alpha), step, std::abs(c.argmax_alpha) <= step);
    }
    // prime-counting scale: S~_k(0) tracks gamma_k N^(1/k)
    for (int k : {2, 3}) {
        const ExpSumContext ctx(100000000, k, table);
        const double ratio =
            std::abs(s_tilde(ctx, 0.0)) /
            (gamma_k(k) * std::pow(1e8, 1.0 / static_cast<double>(k)));
        const bool pass = ratio >= 0.95 && ratio <= 1.05;
        sink.row("supnorm",
                 fmt("smoothed sum at alpha=0 vs gamma_k N^(1/k), N=1e8 k=%d", k),
                 ratio, 1.05, pass);
    }
}

void suite_reconstruct(SuiteSink& sink, const LambdaTable& table) {
    const KTuple tuple({2, 2, 2});
    for (std::int64_t n = 1; n <= 60; ++n) {
        const double via_integral = reconstruct_r_via_integral(100, n, tuple, table);
        const double brute = rep_single_bruteforce(n, tuple, table);
        const double gap = std::abs(via_integral - brute);
        sink.row("reconstruct",
                 fmt("fourier coefficient extraction vs enumeration, n=%lld",
                     static_cast<long long>(n)),
                 gap, 1e-8, gap <= 1e-8);
    }

    // sampled mean of |S~_k|^2 equals the diagonal sum of squared weights
    const ExpSumContext ctx(10000, 2, table);
    const auto denom = static_cast<std::uint64_t>(ctx.bandwidth() + 1);
    const auto grid = ctx.eval_unit_grid(denom);
    double mean = 0.0;
    for (const auto& v : grid) mean += std::norm(v);
    mean /= static_cast<double>(denom);
    double diag = 0.0;
    for (double w : ctx.weights()) diag += w * w;
    const double rel = std::abs(mean - diag) / diag;
    sink.row("reconstruct", "sampled mean of |S~_k|^2 vs diagonal weight sum, N=1e4 k=2",
             rel, 1e-8, rel <= 1e-8);
}

}  // namespace

const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names = {
        "identity", "laplace", "mtsum", "ubound", "zbound", "supnorm", "reconstruct", "all"};
    return names;
}

bool is_verify_suite(const std::string& name) {
    const auto& names = verify_suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

ReportDocument run_verify(const std::string& suite, const VerifyOptions& options) {
    if (!is_verify_suite(suite))
        throw std::invalid_argument("run_verify: unknown suite " + suite);

    ReportDocument doc;
    doc.command = "verify --suite " + suite + " --seed " + std::to_string(options.seed);
    doc.columns = {"suite", "check", "value", "budget", "pass"};
    doc.has_summary = true;
    SuiteSink sink{doc};

    const bool all = suite == "all";
    const bool needs_table = all || suite == "supnorm" || suite == "reconstruct";
    LambdaTable table;
    if (needs_table) {
        // the largest truncation index across the suites: k=2 at N=1e8
        const auto limit = static_cast<std::int64_t>(std::ceil(std::sqrt(50.0 * 1e8))) + 1;
        table = sieve_lambda_cached(limit, options.cache_dir);
    }

    if (all || suite == "identity") suite_identity(sink, options.seed);
    if (all || suite == "laplace") suite_laplace(sink);
    if (all || suite == "mtsum") suite_mtsum(sink);
    if (all || suite == "ubound") suite_ubound(sink);
    if (all || suite == "zbound") suite_zbound(sink);
    if (all || suite == "supnorm") suite_supnorm(sink, table);
    if (all || suite == "reconstruct") suite_reconstruct(sink, table);

    return doc;
}

}  // namespace ppra
