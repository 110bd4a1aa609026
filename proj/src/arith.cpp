#include "ppra/arith.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace ppra {

std::vector<std::int64_t> LambdaTable::prime_power_support() const {
    std::vector<std::int64_t> support;
    for (std::int64_t n = 2; n <= limit; ++n)
        if (values[static_cast<std::size_t>(n)] != 0.0) support.push_back(n);
    return support;
}

LambdaTable sieve_lambda(std::int64_t limit, std::size_t max_bytes) {
    if (limit < 1) throw std::invalid_argument("sieve_lambda: limit must be >= 1");
    const std::size_t count = static_cast<std::size_t>(limit) + 1;
    if (count > max_bytes / sizeof(double))
        throw std::length_error("sieve_lambda: limit exceeds the memory budget");

    LambdaTable table;
    table.limit = limit;
    table.values.assign(count, 0.0);
    if (limit < 2) return table;

    std::vector<std::uint8_t> composite(count, 0);
    for (std::int64_t p = 2; p * p <= limit; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        for (std::int64_t q = p * p; q <= limit; q += p)
            composite[static_cast<std::size_t>(q)] = 1;
    }

    // Lambda(p^m) = log p; prime powers are sparse, so walk them directly.
    for (std::int64_t p = 2; p <= limit; ++p) {
        if (composite[static_cast<std::size_t>(p)]) continue;
        const double logp = std::log(static_cast<double>(p));
        for (std::int64_t q = p; q <= limit; q *= p) {
            table.values[static_cast<std::size_t>(q)] = logp;
            if (q > limit / p) break;  // q*p would overflow past limit
        }
    }
    return table;
}

PsiPrefix psi_prefix(const LambdaTable& table) {
    PsiPrefix psi;
    psi.limit = table.limit;
    psi.cumulative.resize(table.values.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < table.values.size(); ++t) {
        acc += table.values[t];
        psi.cumulative[t] = acc;
    }
    return psi;
}

namespace {

// r^k <= t, evaluated without overflow: the accumulator is checked after
// every multiply, so it never exceeds t * r < 2^128.
bool pow_leq(std::uint64_t r, int k, std::uint64_t t) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < k; ++i) {
        acc *= r;
        if (acc > t) return false;
    }
    return true;
}

}  // namespace

std::uint64_t integer_kth_root(std::uint64_t t, int k) {
    if (k < 1) throw std::invalid_argument("integer_kth_root: k must be >= 1");
    if (k == 1 || t <= 1) return t;
    if (k >= 64) return 1;  // 2^64 > t for every uint64 t

    // Floating-point seed, then exact integer correction.
    std::uint64_t r = static_cast<std::uint64_t>(
        std::pow(static_cast<double>(t), 1.0 / static_cast<double>(k)));
    if (r > 2) r -= 2;
    else r = 0;
    while (pow_leq(r + 1, k, t)) ++r;
    while (r > 0 && !pow_leq(r, k, t)) --r;
    return r;
}

namespace {

constexpr char kCacheMagic[4] = {'P', 'P', 'R', 'A'};
constexpr std::uint8_t kCacheVersion = 1;

void put_u64_le(std::ofstream& os, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    os.write(buf, 8);
}

std::uint64_t get_u64_le(std::ifstream& is) {
    unsigned char buf[8];
    is.read(reinterpret_cast<char*>(buf), 8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(buf[i]) << (8 * i);
    return v;
}

}  // namespace

void save_lambda_cache(const LambdaTable& table, const std::string& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("save_lambda_cache: cannot open " + path);
    os.write(kCacheMagic, 4);
    os.put(static_cast<char>(kCacheVersion));
    put_u64_le(os, static_cast<std::uint64_t>(table.limit));
    static_assert(sizeof(double) == 8);
    // Host doubles are little-endian IEEE-754 on every supported target.
    os.write(reinterpret_cast<const char*>(table.values.data()),
             static_cast<std::streamsize>(table.values.size() * sizeof(double)));
    if (!os) throw std::runtime_error("save_lambda_cache: write failed for " + path);
}

LambdaTable load_lambda_cache(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_lambda_cache: cannot open " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kCacheMagic, 4) != 0)
        throw std::runtime_error("load_lambda_cache: bad magic in " + path);
    const int version = is.get();
    if (version != kCacheVersion)
        throw std::runtime_error("load_lambda_cache: unsupported version in " + path);
    const std::uint64_t limit = get_u64_le(is);
    if (!is || limit > (std::uint64_t{1} << 40))
        throw std::runtime_error("load_lambda_cache: implausible limit in " + path);

    LambdaTable table;
    table.limit = static_cast<std::int64_t>(limit);
    table.values.resize(static_cast<std::size_t>(limit) + 1);
    is.read(reinterpret_cast<char*>(table.values.data()),
            static_cast<std::streamsize>(table.values.size() * sizeof(double)));
    if (!is || is.gcount() != static_cast<std::streamsize>(table.values.size() * sizeof(double)))
        throw std::runtime_error("load_lambda_cache: truncated file " + path);
    return table;
}

LambdaTable sieve_lambda_cached(std::int64_t limit, const std::string& cache_dir) {
    if (cache_dir.empty()) return sieve_lambda(limit);

    char name[64];
    std::snprintf(name, sizeof(name), "lambda-%lld.ppra", static_cast<long long>(limit));
    const auto path = (std::filesystem::path(cache_dir) / name).string();

    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
        try {
            LambdaTable table = load_lambda_cache(path);
            if (table.limit >= limit) return table;
        } catch (const std::runtime_error&) {
            // fall through to a fresh sieve
        }
    }
    LambdaTable table = sieve_lambda(limit);
    std::filesystem::create_directories(cache_dir, ec);
    try {
        save_lambda_cache(table, path);
    } catch (const std::runtime_error&) {
        // cache is an optimization; a failed write is not an error
    }
    return table;
}

}  // namespace ppra
