#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ppra/arith.hpp"
#include "ppra/representation.hpp"
#include "ppra/special.hpp"

namespace ppra {

// Knobs for the theorem-scale comparisons.  epsilon trades window size
// against the valid range; c1 stands in for the unspecified constant in the
// unconditional error scale (reported through A(N; -c1/3)); growth_margin
// encodes the "grows faster than" lower bound in RH mode, which has no
// finite threshold.
struct TheoremConfig {
    KTuple tuple;
    double epsilon = 0.05;
    bool rh_mode = false;
    double c1 = 1.0;
    double b_exponent = 0.0;     // B = N^{2 epsilon}; derived when 0
    double growth_margin = 10.0;

    explicit TheoremConfig(KTuple k);  // enforces r >= 3
};

struct HRange {
    double h_min = 0.0;
    double h_max = 0.0;
    bool empty() const { return !(h_min < h_max); }
    bool contains(double h) const { return !empty() && h_min < h && h < h_max; }
};

struct LadderRow {
    std::int64_t n = 0;
    std::int64_t h = 0;
    bool in_range = false;
    double raw_sum = 0.0;
    double main_term = 0.0;
    double relative_deviation = 0.0;
    double phi_error_model = 0.0;
    double unconditional_error_model = 0.0;
};

struct WeightRemovalCheck {
    double lhs_gap = 0.0;
    double budget = 0.0;
    bool pass = false;
    WindowReport window;
};

// G(k)/Gamma(rho) * H * N^(rho-1)
double main_term(std::int64_t n, std::int64_t h, const KTuple& tuple);

// main_term / e
double weighted_main_term(std::int64_t n, std::int64_t h, const KTuple& tuple);

// Unconditional mode: (N^{1-5/(6 k_r)+eps}, N^{1-eps}).
// RH mode: (N^{1-1/k_r} (log N)^6 * growth_margin, N^{1-eps}).
HRange admissible_h_range(std::int64_t n, const TheoremConfig& config);

// Phi_k(N,H) = H^2 N^{rho-2} + H^{1/2} N^{rho-1/2-1/(2 k_r)} (log N)^3
double phi_error_model(std::int64_t n, std::int64_t h, const KTuple& tuple);

// H N^{rho-1} A(N; c)
double unconditional_error_model(std::int64_t n, std::int64_t h, const KTuple& tuple, double c);

// One row per N with H = ceil(N^h_exponent).  Rows with H outside the
// admissible range are flagged (in_range = false) and carry no sums.  The
// lambda table must cover floor((N+H)^(1/k_min)) for the largest N; pass a
// table or let the function sieve one internally.
std::vector<LadderRow> ladder_report(const TheoremConfig& config,
                                     const std::vector<std::int64_t>& n_values,
                                     double h_exponent,
                                     const LambdaTable* table = nullptr);

// lhs_gap = |weighted_sum - raw_sum/e| vs budget 5 H^2 N^{rho-2} (1 + G/Gamma(rho)).
WeightRemovalCheck weight_removal_check(std::int64_t n, std::int64_t h, const KTuple& tuple,
                                        const LambdaTable& table, const PsiPrefix& psi);

}  // namespace ppra
