#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ppra/arith.hpp"
#include "ppra/special.hpp"

namespace ppra {

// Additive-convolution operand: coeffs[i] = Lambda(m) when i = m^k, else 0.
struct PowerWeightedSeq {
    int k = 0;
    std::int64_t limit = 0;
    std::vector<double> coeffs;          // dense, indexed 0..limit
    std::vector<std::int64_t> support;   // sorted indices of nonzeros
};

// R(n;k) for all n <= limit.
struct RepTable {
    std::vector<int> tuple;
    std::int64_t limit = 0;
    std::vector<double> values;
};

struct WindowReport {
    std::int64_t n = 0;
    std::int64_t h = 0;
    double raw_sum = 0.0;
    double weighted_sum = 0.0;           // with e^{-n/N} weights
    double main_term = 0.0;
    double weighted_main_term = 0.0;
    double relative_deviation = 0.0;     // |raw - main| / main when main > 0
};

enum class ConvStrategy { direct, fast, automatic };

// Requires table.limit >= floor(limit^(1/k)); throws std::invalid_argument
// otherwise.
PowerWeightedSeq power_seq(const LambdaTable& table, int k, std::int64_t limit);

// Quadratic-time reference: out[n] = sum_{i+j=n} a[i] b[j], n <= limit.
std::vector<double> convolve_direct(std::span<const double> a, std::span<const double> b,
                                    std::int64_t limit);

// Same contract via zero-padded FFT; agrees with convolve_direct within
// 1e-9 relative to the max coefficient.
std::vector<double> convolve_fast(std::span<const double> a, std::span<const double> b,
                                  std::int64_t limit,
                                  std::size_t max_len = std::size_t{1} << 26);

// r-1 successive convolutions of the power-weighted sequences.  "automatic"
// picks direct vs fast by estimated operation count.
RepTable rep_table(const KTuple& tuple, std::int64_t limit, const LambdaTable& table,
                   ConvStrategy strategy = ConvStrategy::automatic);

// Independent oracle: full nested enumeration over (m_1,...,m_r) with
// sum m_j^{k_j} = n.  Meant for r <= 5 at oracle scale.
double rep_single_bruteforce(std::int64_t n, const KTuple& tuple, const LambdaTable& table);

// Window sums over (N, N+H].  The first r-1 coordinates are enumerated over
// prime powers; the last (largest-exponent) coordinate is counted through
// psi prefix differences at exact integer k-th roots.  The weighted sum
// enumerates the last coordinate fully, applying e^{-n/N} per
// representation.  Requires table.limit >= floor((N+H)^(1/k_min)) and
// psi.limit >= floor((N+H)^(1/k_max)).
WindowReport window_sum(std::int64_t n, std::int64_t h, const KTuple& tuple,
                        const LambdaTable& table, const PsiPrefix& psi);

}  // namespace ppra
