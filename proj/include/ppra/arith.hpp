#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ppra {

// Tabulated von Mangoldt values: values[n] = log p when n = p^m for a prime
// p and m >= 1, else 0.  Entries are natural logs, so every nonzero entry is
// >= log 2.
struct LambdaTable {
    std::int64_t limit = 0;
    std::vector<double> values;  // indexed 0..limit inclusive

    double operator()(std::int64_t n) const { return values[static_cast<std::size_t>(n)]; }

    // Sorted indices n <= limit with values[n] != 0 (the prime powers).
    std::vector<std::int64_t> prime_power_support() const;
};

// Chebyshev-psi prefix sums: cumulative[t] = sum_{n <= t} Lambda(n).
struct PsiPrefix {
    std::int64_t limit = 0;
    std::vector<double> cumulative;

    double operator()(std::int64_t t) const {
        if (t <= 0) return 0.0;
        if (t > limit) t = limit;
        return cumulative[static_cast<std::size_t>(t)];
    }
};

inline constexpr std::size_t kDefaultSieveBudgetBytes = std::size_t{1} << 31;

// Sieve of Eratosthenes marking composites, then Lambda filled by walking
// prime powers.  Deterministic.  Throws std::length_error when the value
// table would exceed max_bytes, std::invalid_argument for limit < 1.
LambdaTable sieve_lambda(std::int64_t limit,
                         std::size_t max_bytes = kDefaultSieveBudgetBytes);

PsiPrefix psi_prefix(const LambdaTable& table);

// Exact floor(t^(1/k)): returns r with r^k <= t < (r+1)^k.  Integer-only
// correction around a floating-point seed; the result never depends on
// floating-point rounding.
std::uint64_t integer_kth_root(std::uint64_t t, int k);

// Lambda-table cache file: magic "PPRA", one version byte (1), limit as
// 64-bit little-endian unsigned, then limit+1 IEEE-754 little-endian values.
void save_lambda_cache(const LambdaTable& table, const std::string& path);
LambdaTable load_lambda_cache(const std::string& path);

// Loads a cached table covering `limit` from cache_dir when present and
// valid, otherwise sieves and (best effort) writes the cache.
LambdaTable sieve_lambda_cached(std::int64_t limit, const std::string& cache_dir);

}  // namespace ppra
