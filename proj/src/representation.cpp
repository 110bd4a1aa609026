#include "ppra/representation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "ppra/asymptotics.hpp"
#include "ppra/fft.hpp"
#include "ppra/kernels.hpp"
#include "ppra/parallel.hpp"

namespace ppra {

PowerWeightedSeq power_seq(const LambdaTable& table, int k, std::int64_t limit) {
    if (k < 2) throw std::invalid_argument("power_seq: k must be >= 2");
    if (limit < 1) throw std::invalid_argument("power_seq: limit must be >= 1");
    const std::int64_t root = static_cast<std::int64_t>(
        integer_kth_root(static_cast<std::uint64_t>(limit), k));
    if (table.limit < root)
        throw std::invalid_argument("power_seq: lambda table too short for this limit");

    PowerWeightedSeq seq;
    seq.k = k;
    seq.limit = limit;
    seq.coeffs.assign(static_cast<std::size_t>(limit) + 1, 0.0);
    for (std::int64_t m = 2; m <= root; ++m) {
        const double lam = table(m);
        if (lam == 0.0) continue;
        std::int64_t idx = 1;
        for (int i = 0; i < k; ++i) idx *= m;  // m <= root, so idx <= limit
        seq.coeffs[static_cast<std::size_t>(idx)] = lam;
        seq.support.push_back(idx);
    }
    return seq;
}

std::vector<double> convolve_direct(std::span<const double> a, std::span<const double> b,
                                    std::int64_t limit) {
    if (limit < 0) throw std::invalid_argument("convolve_direct: limit must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(limit) + 1, 0.0);
    const std::size_t ia_end = std::min<std::size_t>(a.size(), out.size());
    for (std::size_t i = 0; i < ia_end; ++i) {
        const double v = a[i];
        if (v == 0.0) continue;
        const std::size_t nj = std::min(b.size(), out.size() - i);
        kernels::axpy(out.data() + i, b.data(), v, nj);
    }
    return out;
}

std::vector<double> convolve_fast(std::span<const double> a, std::span<const double> b,
                                  std::int64_t limit, std::size_t max_len) {
    if (limit < 0) throw std::invalid_argument("convolve_fast: limit must be >= 0");
    return convolve_fft(a, b, limit, max_len);
}

namespace {

// Estimated multiply count of one sparse-into-dense direct pass vs a packed
// FFT pass of the padded length.
bool prefer_fft(std::size_t nnz, std::int64_t limit) {
    const double direct_ops = static_cast<double>(nnz) * static_cast<double>(limit + 1);
    const double len = static_cast<double>(std::bit_ceil(2 * static_cast<std::size_t>(limit) + 1));
    const double fft_ops = 8.0 * len * std::log2(len);
    return direct_ops > fft_ops;
}

}  // namespace

RepTable rep_table(const KTuple& tuple, std::int64_t limit, const LambdaTable& table,
                   ConvStrategy strategy) {
    std::int64_t min_rep = 0;
    for (int k : tuple.exponents()) min_rep += std::int64_t{1} << k;
    if (limit < min_rep)
        throw std::invalid_argument("rep_table: limit below the smallest representable value");

    std::vector<PowerWeightedSeq> seqs;
    seqs.reserve(static_cast<std::size_t>(tuple.r()));
    for (int k : tuple.exponents()) seqs.push_back(power_seq(table, k, limit));

    std::vector<double> acc = std::move(seqs.front().coeffs);
    for (int j = 1; j < tuple.r(); ++j) {
        const PowerWeightedSeq& next = seqs[static_cast<std::size_t>(j)];
        bool use_fft = strategy == ConvStrategy::fast;
        if (strategy == ConvStrategy::automatic)
            use_fft = prefer_fft(next.support.size(), limit);
        if (use_fft) {
            acc = convolve_fast(acc, next.coeffs, limit);
        } else {
            // convolve sparse `next` into the dense accumulator
            std::vector<double> out(acc.size(), 0.0);
            for (std::int64_t idx : next.support) {
                const auto off = static_cast<std::size_t>(idx);
                kernels::axpy(out.data() + off, acc.data(),
                              next.coeffs[off], acc.size() - off);
            }
            acc = std::move(out);
        }
    }

    RepTable rt;
    rt.tuple.assign(tuple.exponents().begin(), tuple.exponents().end());
    rt.limit = limit;
    rt.values = std::move(acc);
    return rt;
}

namespace {

double brute_rec(std::int64_t remaining, std::span<const int> exps, const LambdaTable& table,
                 double weight) {
    const int k = exps.front();
    if (exps.size() == 1) {
        double total = 0.0;
        for (std::int64_t m = 2;; ++m) {
            std::int64_t p = 1;
            for (int i = 0; i < k; ++i) p *= m;
            if (p > remaining) break;
            if (p == remaining) total += weight * table(m);
        }
        return total;
    }
    double total = 0.0;
    for (std::int64_t m = 2;; ++m) {
        std::int64_t p = 1;
        for (int i = 0; i < k; ++i) p *= m;
        if (p >= remaining) break;
        const double lam = table(m);
        if (lam == 0.0) continue;
        total += brute_rec(remaining - p, exps.subspan(1), table, weight * lam);
    }
    return total;
}

}  // namespace

double rep_single_bruteforce(std::int64_t n, const KTuple& tuple, const LambdaTable& table) {
    if (n < 1) throw std::invalid_argument("rep_single_bruteforce: n must be >= 1");
    const std::int64_t root = static_cast<std::int64_t>(
        integer_kth_root(static_cast<std::uint64_t>(n), tuple.k_min()));
    if (table.limit < root)
        throw std::invalid_argument("rep_single_bruteforce: lambda table too short");
    return brute_rec(n, tuple.exponents(), table, 1.0);
}

namespace {

struct WindowAccum {
    double raw = 0.0;
    double weighted = 0.0;
};

// Enumerates coordinates depth..r-2 over prime powers; the last coordinate
// is resolved through psi differences (raw) and direct support iteration
// (weighted).
void window_rec(std::int64_t n, std::int64_t h, std::span<const int> exps,
                const std::vector<std::int64_t>& support, const LambdaTable& table,
                const PsiPrefix& psi, const std::vector<std::int64_t>& min_tail,
                std::size_t depth, std::size_t r, std::int64_t partial, double weight,
                WindowAccum& acc) {
    const int k_last = exps[r - 1];
    if (depth == r - 1) {
        const std::int64_t lo = n - partial;
        const std::int64_t hi = n + h - partial;
        if (hi < 4) return;  // smallest prime-power term is 2^k >= 4
        const auto a = static_cast<std::int64_t>(
            integer_kth_root(static_cast<std::uint64_t>(std::max<std::int64_t>(lo, 0)), k_last));
        const auto b = static_cast<std::int64_t>(
            integer_kth_root(static_cast<std::uint64_t>(hi), k_last));
        if (b <= a) return;
        acc.raw += weight * (psi(b) - psi(a));

        // weighted branch: every representation n0 = partial + q^{k_r}
        // carries e^{-n0/N}
        auto it = std::upper_bound(support.begin(), support.end(), a);
        const double inv_n = 1.0 / static_cast<double>(n);
        for (; it != support.end() && *it <= b; ++it) {
            std::int64_t p = 1;
            for (int i = 0; i < k_last; ++i) p *= *it;
            const double n0 = static_cast<double>(partial + p);
            acc.weighted += weight * table(*it) * std::exp(-n0 * inv_n);
        }
        return;
    }

    const int k = exps[depth];
    const std::int64_t budget = n + h - partial - min_tail[depth];
    for (std::int64_t m : support) {
        std::int64_t p = 1;
        bool over = false;
        for (int i = 0; i < k; ++i) {
            p *= m;
            if (p > budget) { over = true; break; }
        }
        if (over || p > budget) break;
        window_rec(n, h, exps, support, table, psi, min_tail, depth + 1, r,
                   partial + p, weight * table(m), acc);
    }
}

}  // namespace

WindowReport window_sum(std::int64_t n, std::int64_t h, const KTuple& tuple,
                        const LambdaTable& table, const PsiPrefix& psi) {
    if (tuple.r() < 2) throw std::invalid_argument("window_sum: requires r >= 2");
    if (n < 1 || h < 0) throw std::invalid_argument("window_sum: requires N >= 1, H >= 0");
    const std::uint64_t top = static_cast<std::uint64_t>(n + h);
    if (psi.limit < static_cast<std::int64_t>(integer_kth_root(top, tuple.k_max())))
        throw std::out_of_range("window_sum: psi prefix too short");
    if (table.limit < static_cast<std::int64_t>(integer_kth_root(top, tuple.k_min())))
        throw std::out_of_range("window_sum: lambda table too short");

    WindowReport report;
    report.n = n;
    report.h = h;

    if (h > 0) {
        const auto exps = tuple.exponents();
        const auto r = static_cast<std::size_t>(tuple.r());
        // min_tail[d] = least possible sum of coordinates after depth d
        std::vector<std::int64_t> min_tail(r, 0);
        for (std::size_t d = r; d-- > 1;)
            min_tail[d - 1] = min_tail[d] + (std::int64_t{1} << exps[d]);

        const std::vector<std::int64_t> support = table.prime_power_support();

        // Split the outermost coordinate across fixed chunks; partials are
        // combined in chunk order so results do not depend on worker count.
        const int k0 = exps[0];
        std::int64_t outer_count = 0;
        const std::int64_t budget0 = n + h - min_tail[0];
        for (std::int64_t m : support) {
            std::int64_t p = 1;
            bool over = false;
            for (int i = 0; i < k0; ++i) {
                p *= m;
                if (p > budget0) { over = true; break; }
            }
            if (over || p > budget0) break;
            ++outer_count;
        }

        constexpr std::int64_t kOuterChunk = 8;
        const std::int64_t n_chunks = (outer_count + kOuterChunk - 1) / kOuterChunk;
        std::vector<WindowAccum> partials(static_cast<std::size_t>(std::max<std::int64_t>(n_chunks, 0)));
        parallel_chunks(outer_count, kOuterChunk,
                        [&](std::int64_t c, std::int64_t begin, std::int64_t end) {
                            WindowAccum& acc = partials[static_cast<std::size_t>(c)];
                            for (std::int64_t i = begin; i < end; ++i) {
                                const std::int64_t m = support[static_cast<std::size_t>(i)];
                                std::int64_t p = 1;
                                for (int q = 0; q < k0; ++q) p *= m;
                                window_rec(n, h, exps, support, table, psi, min_tail, 1, r, p,
                                           table(m), acc);
                            }
                        });
        for (const WindowAccum& acc : partials) {
            report.raw_sum += acc.raw;
            report.weighted_sum += acc.weighted;
        }
    }

    report.main_term = main_term(n, h, tuple);
    report.weighted_main_term = weighted_main_term(n, h, tuple);
    report.relative_deviation =
        report.main_term > 0.0 ? std::abs(report.raw_sum - report.main_term) / report.main_term
                               : 0.0;
    return report;
}

}  // namespace ppra
