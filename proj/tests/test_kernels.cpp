#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "ppra/fft.hpp"
#include "ppra/kernels.hpp"

using namespace ppra;

namespace {

struct PhasorData {
    std::vector<double> sre, sim, rre, rim;
    std::vector<std::complex<double>> out;

    explicit PhasorData(std::size_t m, std::size_t nj, std::uint64_t seed) : out(nj) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> amp(-1.0, 1.0);
        std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
        for (std::size_t i = 0; i < m; ++i) {
            sre.push_back(amp(rng));
            sim.push_back(amp(rng));
            const double t = ang(rng);
            rre.push_back(std::cos(t));
            rim.push_back(std::sin(t));
        }
    }
};

// plain complex<double> reference for the phasor sweep
std::vector<std::complex<double>> phasor_naive(PhasorData d) {
    std::vector<std::complex<double>> states(d.sre.size());
    for (std::size_t i = 0; i < states.size(); ++i) states[i] = {d.sre[i], d.sim[i]};
    std::vector<std::complex<double>> out(d.out.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t i = 0; i < states.size(); ++i) {
            acc += states[i];
            states[i] *= std::complex<double>{d.rre[i], d.rim[i]};
        }
        out[j] = acc;
    }
    return out;
}

}  // namespace

TEST_CASE("scalar phasor sweep matches the complex reference") {
    for (std::size_t m : {std::size_t{1}, std::size_t{5}, std::size_t{64}}) {
        for (std::size_t nj : {std::size_t{1}, std::size_t{17}, std::size_t{256}}) {
            PhasorData d(m, nj, 1000 + m + nj);
            const auto expected = phasor_naive(d);
            kernels::phasor_sum_rotate_scalar(d.sre.data(), d.sim.data(), d.rre.data(),
                                              d.rim.data(), m, d.out.data(), nj);
            for (std::size_t j = 0; j < nj; ++j)
                REQUIRE(std::abs(d.out[j] - expected[j]) <=
                        1e-12 * (1.0 + std::abs(expected[j])));
        }
    }
}

TEST_CASE("avx2 phasor sweep is equivalent to scalar") {
    if (!kernels::avx2_available()) return;
    for (std::size_t m : {std::size_t{1}, std::size_t{3}, std::size_t{4}, std::size_t{9},
                          std::size_t{1024}, std::size_t{1031}}) {
        PhasorData a(m, 200, 77 + m);
        PhasorData b = a;
        kernels::phasor_sum_rotate_scalar(a.sre.data(), a.sim.data(), a.rre.data(),
                                          a.rim.data(), m, a.out.data(), a.out.size());
        kernels::phasor_sum_rotate_avx2(b.sre.data(), b.sim.data(), b.rre.data(),
                                        b.rim.data(), m, b.out.data(), b.out.size());
        for (std::size_t j = 0; j < a.out.size(); ++j)
            REQUIRE(std::abs(a.out[j] - b.out[j]) <=
                    1e-11 * (1.0 + static_cast<double>(m)));
        // advanced states must agree too
        for (std::size_t i = 0; i < m; ++i) {
            REQUIRE(a.sre[i] == doctest::Approx(b.sre[i]).epsilon(1e-10));
            REQUIRE(a.sim[i] == doctest::Approx(b.sim[i]).epsilon(1e-10));
        }
    }
}

TEST_CASE("axpy variants are equivalent") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (std::size_t n : {std::size_t{0}, std::size_t{1}, std::size_t{7}, std::size_t{8},
                          std::size_t{1000}}) {
        std::vector<double> dst_a(n), dst_b, src(n);
        for (std::size_t i = 0; i < n; ++i) {
            dst_a[i] = dist(rng);
            src[i] = dist(rng);
        }
        dst_b = dst_a;
        const double a = dist(rng);
        kernels::axpy_scalar(dst_a.data(), src.data(), a, n);
        kernels::axpy_avx2(dst_b.data(), src.data(), a, n);
        for (std::size_t i = 0; i < n; ++i)
            REQUIRE(std::abs(dst_a[i] - dst_b[i]) <= 1e-12 * (1.0 + std::abs(dst_a[i])));
    }
}

TEST_CASE("complex pointwise multiply variants are equivalent") {
    std::mt19937_64 rng(515151);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{13}, std::size_t{256}}) {
        std::vector<std::complex<double>> a(n), b(n), a2;
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = {dist(rng), dist(rng)};
            b[i] = {dist(rng), dist(rng)};
        }
        a2 = a;
        kernels::cmul_inplace_scalar(a.data(), b.data(), n);
        kernels::cmul_inplace_avx2(a2.data(), b.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            REQUIRE(std::abs(a[i] - a2[i]) <= 1e-13 * (1.0 + std::abs(a[i])));
    }
}

TEST_CASE("simd level can be pinned") {
    const auto before = kernels::active_level();
    kernels::set_level(kernels::SimdLevel::scalar);
    CHECK(kernels::active_level() == kernels::SimdLevel::scalar);
    kernels::set_level(before);
}

TEST_CASE("fft matches the naive transform") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (std::size_t n : {std::size_t{2}, std::size_t{8}, std::size_t{64}}) {
        std::vector<std::complex<double>> a(n);
        for (auto& v : a) v = {dist(rng), dist(rng)};
        auto b = a;
        Fft(n).forward(b.data());
        for (std::size_t k = 0; k < n; ++k) {
            std::complex<double> expected{0.0, 0.0};
            for (std::size_t j = 0; j < n; ++j) {
                const double ang = -2.0 * std::numbers::pi * static_cast<double>(k * j % n) /
                                   static_cast<double>(n);
                expected += a[j] * std::complex<double>{std::cos(ang), std::sin(ang)};
            }
            REQUIRE(std::abs(b[k] - expected) <= 1e-11 * (1.0 + std::abs(expected)));
        }
    }
}

TEST_CASE("fft inverse round trip") {
    std::mt19937_64 rng(100);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<std::complex<double>> a(1 << 12);
    for (auto& v : a) v = {dist(rng), dist(rng)};
    auto b = a;
    const Fft plan(a.size());
    plan.forward(b.data());
    plan.inverse(b.data());
    for (std::size_t i = 0; i < a.size(); ++i)
        REQUIRE(std::abs(a[i] - b[i]) <= 1e-12);
}

TEST_CASE("fft rejects non-power-of-two sizes") {
    CHECK_THROWS_AS(Fft(0), std::invalid_argument);
    CHECK_THROWS_AS(Fft(12), std::invalid_argument);
}

TEST_CASE("packed real convolution agrees with the direct sum") {
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::uniform_int_distribution<std::size_t> len(1, 200);
        std::vector<double> a(len(rng)), b(len(rng));
        for (auto& v : a) v = dist(rng);
        for (auto& v : b) v = dist(rng);
        const std::int64_t limit = static_cast<std::int64_t>(a.size() + b.size());
        const auto fast = convolve_fft(a, b, limit);
        std::vector<double> direct(static_cast<std::size_t>(limit) + 1, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j)
                if (i + j <= static_cast<std::size_t>(limit)) direct[i + j] += a[i] * b[j];
        for (std::size_t n = 0; n < direct.size(); ++n)
            REQUIRE(std::abs(fast[n] - direct[n]) <= 1e-10 * (1.0 + std::abs(direct[n])));
    }
}

TEST_CASE("convolution length budget") {
    std::vector<double> a(1000, 1.0);
    CHECK_THROWS_AS(convolve_fft(a, a, 1999, 1024), std::length_error);
}
