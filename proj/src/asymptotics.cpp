#include "ppra/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ppra {

TheoremConfig::TheoremConfig(KTuple k) : tuple(std::move(k)) {
    if (tuple.r() < 3)
        throw std::invalid_argument("TheoremConfig: theorem-scale comparisons require r >= 3");
}

double main_term(std::int64_t n, std::int64_t h, const KTuple& tuple) {
    if (n < 2 || h < 0) throw std::invalid_argument("main_term: requires N >= 2, H >= 0");
    const double rho = density(tuple);
    const double nd = static_cast<double>(n);
    return g_of_k(tuple) / gamma_real(rho) * static_cast<double>(h) * std::pow(nd, rho - 1.0);
}

double weighted_main_term(std::int64_t n, std::int64_t h, const KTuple& tuple) {
    return main_term(n, h, tuple) / std::numbers::e;
}

HRange admissible_h_range(std::int64_t n, const TheoremConfig& config) {
    if (n < 16) throw std::invalid_argument("admissible_h_range: requires N >= 16");
    const double nd = static_cast<double>(n);
    const double k_r = config.tuple.k_max();
    HRange range;
    range.h_max = std::pow(nd, 1.0 - config.epsilon);
    if (config.rh_mode) {
        const double log_n = std::log(nd);
        range.h_min = std::pow(nd, 1.0 - 1.0 / k_r) * std::pow(log_n, 6.0) * config.growth_margin;
    } else {
        range.h_min = std::pow(nd, 1.0 - 5.0 / (6.0 * k_r) + config.epsilon);
    }
    return range;
}

double phi_error_model(std::int64_t n, std::int64_t h, const KTuple& tuple) {
    if (n < 3) throw std::invalid_argument("phi_error_model: requires N >= 3");
    const double nd = static_cast<double>(n);
    const double hd = static_cast<double>(h);
    const double rho = density(tuple);
    const double log_n = std::log(nd);
    const double k_r = tuple.k_max();
    return hd * hd * std::pow(nd, rho - 2.0) +
           std::sqrt(hd) * std::pow(nd, rho - 0.5 - 1.0 / (2.0 * k_r)) * log_n * log_n * log_n;
}

double unconditional_error_model(std::int64_t n, std::int64_t h, const KTuple& tuple, double c) {
    const double nd = static_cast<double>(n);
    const double rho = density(tuple);
    return static_cast<double>(h) * std::pow(nd, rho - 1.0) * big_a(nd, c);
}

std::vector<LadderRow> ladder_report(const TheoremConfig& config,
                                     const std::vector<std::int64_t>& n_values,
                                     double h_exponent, const LambdaTable* table) {
    std::vector<LadderRow> rows;
    rows.reserve(n_values.size());
    if (n_values.empty()) return rows;

    std::int64_t max_top = 0;
    for (std::int64_t n : n_values) {
        const auto h = static_cast<std::int64_t>(
            std::ceil(std::pow(static_cast<double>(n), h_exponent)));
        max_top = std::max(max_top, n + h);
    }

    LambdaTable local;
    if (table == nullptr) {
        const auto root = static_cast<std::int64_t>(
            integer_kth_root(static_cast<std::uint64_t>(max_top), config.tuple.k_min()));
        local = sieve_lambda(root + 1);
        table = &local;
    }
    const PsiPrefix psi = psi_prefix(*table);

    for (std::int64_t n : n_values) {
        LadderRow row;
        row.n = n;
        row.h = static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(n), h_exponent)));
        const HRange range = admissible_h_range(n, config);
        row.in_range = range.contains(static_cast<double>(row.h));
        row.main_term = main_term(n, row.h, config.tuple);
        row.phi_error_model = phi_error_model(n, row.h, config.tuple);
        row.unconditional_error_model =
            unconditional_error_model(n, row.h, config.tuple, -config.c1 / 3.0);
        if (row.in_range) {
            const WindowReport w = window_sum(n, row.h, config.tuple, *table, psi);
            row.raw_sum = w.raw_sum;
            row.relative_deviation = w.relative_deviation;
        }
        rows.push_back(row);
    }
    return rows;
}

WeightRemovalCheck weight_removal_check(std::int64_t n, std::int64_t h, const KTuple& tuple,
                                        const LambdaTable& table, const PsiPrefix& psi) {
    WeightRemovalCheck check;
    check.window = window_sum(n, h, tuple, table, psi);
    check.lhs_gap = std::abs(check.window.weighted_sum - check.window.raw_sum / std::numbers::e);
    const double rho = density(tuple);
    const double hd = static_cast<double>(h);
    const double nd = static_cast<double>(n);
    check.budget = 5.0 * hd * hd * std::pow(nd, rho - 2.0) *
                   (1.0 + g_of_k(tuple) / gamma_real(rho));
    check.pass = check.lhs_gap <= check.budget;
    return check;
}

}  // namespace ppra
