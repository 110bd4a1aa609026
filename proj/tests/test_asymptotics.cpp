#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "ppra/asymptotics.hpp"

using namespace ppra;

TEST_CASE("main term closed form for three squares") {
    const KTuple k222({2, 2, 2});
    // G(k)/Gamma(rho) = (pi^{3/2}/8) / (sqrt(pi)/2) = pi/4
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<std::int64_t> n_dist(100, 10000000);
    std::uniform_int_distribution<std::int64_t> h_dist(1, 100000);
    for (int i = 0; i < 200; ++i) {
        const std::int64_t n = n_dist(rng);
        const std::int64_t h = h_dist(rng);
        const double got = main_term(n, h, k222);
        const double base = static_cast<double>(h) * std::sqrt(static_cast<double>(n));
        REQUIRE(std::abs(got / base - std::numbers::pi / 4.0) <= 1e-12);
    }
    CHECK(main_term(1000000, 10000, k222) == doctest::Approx(7.853982e6).epsilon(1e-6));
}

TEST_CASE("main term is exactly linear in H") {
    const KTuple k({2, 3, 5});
    for (std::int64_t h : {1, 7, 1024, 99991})
        CHECK(main_term(123456, 2 * h, k) == 2.0 * main_term(123456, h, k));
}

TEST_CASE("density one makes the main term independent of N") {
    const KTuple k236({2, 3, 6});
    const double g = g_of_k(k236);
    for (std::int64_t n : {100, 10000, 1000000}) {
        CHECK(main_term(n, 50, k236) == doctest::Approx(g * 50.0).epsilon(1e-12));
    }
}

TEST_CASE("weighted main term divides by e") {
    const KTuple k({2, 2, 2});
    CHECK(weighted_main_term(1000000, 10000, k) ==
          doctest::Approx(main_term(1000000, 10000, k) / std::numbers::e).epsilon(1e-15));
    CHECK(weighted_main_term(1000000, 10000, k) == doctest::Approx(2.889e6).epsilon(1e-3));
    CHECK(weighted_main_term(100, 0, k) == 0.0);
}

TEST_CASE("admissible range exponents, unconditional") {
    TheoremConfig config{KTuple({2, 2, 2})};
    config.epsilon = 0.01;
    const HRange range = admissible_h_range(100000, config);
    const double log_n = std::log(100000.0);
    CHECK(std::log(range.h_min) / log_n ==
          doctest::Approx(1.0 - 5.0 / 12.0 + 0.01).epsilon(1e-12));
    CHECK(std::log(range.h_max) / log_n == doctest::Approx(0.99).epsilon(1e-12));

    TheoremConfig cubic{KTuple({2, 2, 3})};
    cubic.epsilon = 0.05;
    const HRange r3 = admissible_h_range(100000, cubic);
    CHECK(std::log(r3.h_min) / log_n ==
          doctest::Approx(1.0 - 5.0 / 18.0 + 0.05).epsilon(1e-12));
    CHECK(std::log(r3.h_max) / log_n == doctest::Approx(0.95).epsilon(1e-12));
}

TEST_CASE("large epsilon empties the range") {
    TheoremConfig config{KTuple({2, 2, 2})};
    config.epsilon = 0.4;
    const HRange range = admissible_h_range(10000, config);
    CHECK(range.empty());
    CHECK_FALSE(range.contains(100.0));
}

TEST_CASE("growing epsilon shrinks the range from both sides") {
    TheoremConfig narrow{KTuple({2, 2, 2})};
    TheoremConfig wide{KTuple({2, 2, 2})};
    narrow.epsilon = 0.10;
    wide.epsilon = 0.02;
    const HRange a = admissible_h_range(1000000, wide);
    const HRange b = admissible_h_range(1000000, narrow);
    CHECK(b.h_min > a.h_min);
    CHECK(b.h_max < a.h_max);
}

TEST_CASE("rh-mode range uses the log-power lower bound") {
    TheoremConfig config{KTuple({2, 2, 3})};
    config.rh_mode = true;
    config.epsilon = 0.05;
    const std::int64_t n = 1000000;
    const HRange range = admissible_h_range(n, config);
    const double nd = static_cast<double>(n);
    const double expected =
        std::pow(nd, 1.0 - 1.0 / 3.0) * std::pow(std::log(nd), 6.0) * config.growth_margin;
    CHECK(range.h_min == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("phi error model shapes") {
    const KTuple k({2, 2, 2});
    const double rho = 1.5;
    // H = N: the quadratic term contributes exactly N^rho
    const std::int64_t n = 10000;
    const double nd = static_cast<double>(n);
    const double log_n = std::log(nd);
    const double quadratic = std::pow(nd, rho);
    const double dispersion =
        std::sqrt(nd) * std::pow(nd, rho - 0.5 - 0.25) * log_n * log_n * log_n;
    CHECK(phi_error_model(n, n, k) == doctest::Approx(quadratic + dispersion).epsilon(1e-12));

    const double h1 = phi_error_model(n, 1, k);
    CHECK(h1 == doctest::Approx(std::pow(nd, rho - 2.0) +
                                std::pow(nd, rho - 0.75) * log_n * log_n * log_n)
                    .epsilon(1e-12));

    const std::int64_t big_n = 1000000, big_h = 10000;
    const double direct = 1e8 * std::pow(1e6, -0.5) +
                          1e2 * std::pow(1e6, 0.75) * std::pow(std::log(1e6), 3.0);
    CHECK(phi_error_model(big_n, big_h, k) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("unconditional error model reduces to the main-term scale at c=0") {
    const KTuple k({2, 2, 2});
    const std::int64_t n = 1000000, h = 10000;
    CHECK(unconditional_error_model(n, h, k, 0.0) ==
          doctest::Approx(static_cast<double>(h) * std::sqrt(static_cast<double>(n)))
              .epsilon(1e-13));
    // ratio to the raw scale is A(N;c) exactly
    const double scale = static_cast<double>(h) * std::pow(static_cast<double>(n), 0.5);
    CHECK(unconditional_error_model(n, h, k, -1.0) / scale ==
          doctest::Approx(big_a(static_cast<double>(n), -1.0)).epsilon(1e-13));
}

TEST_CASE("ladder flags out-of-range windows and fills valid rows") {
    TheoremConfig config{KTuple({2, 2, 2})};
    config.epsilon = 0.01;

    const auto flagged = ladder_report(config, {100000}, 0.10);
    REQUIRE(flagged.size() == 1);
    CHECK_FALSE(flagged[0].in_range);
    CHECK(flagged[0].raw_sum == 0.0);
    CHECK(flagged[0].main_term > 0.0);  // model columns are filled regardless

    const auto rows = ladder_report(config, {100000}, 0.62);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].in_range);
    CHECK(rows[0].h == 1259);  // ceil(1e5^0.62)
    CHECK(rows[0].main_term > 0.0);
    CHECK(std::isfinite(rows[0].relative_deviation));
    CHECK(rows[0].phi_error_model > 0.0);
    CHECK(rows[0].unconditional_error_model > 0.0);

    // the row reproduces a direct window computation
    const LambdaTable table = sieve_lambda(400);
    const PsiPrefix psi = psi_prefix(table);
    const WindowReport w = window_sum(100000, 1259, config.tuple, table, psi);
    CHECK(rows[0].raw_sum == doctest::Approx(w.raw_sum).epsilon(1e-12));
}

TEST_CASE("theorem config rejects binary tuples") {
    CHECK_THROWS_AS(TheoremConfig{KTuple({2, 2})}, std::invalid_argument);
}

TEST_CASE("weight removal stays within its budget") {
    const LambdaTable table = sieve_lambda(1100);
    const PsiPrefix psi = psi_prefix(table);
    const KTuple k({2, 2, 2});

    const WeightRemovalCheck c = weight_removal_check(10000, 100, k, table, psi);
    CHECK(c.pass);
    CHECK(c.lhs_gap <= c.budget);

    // H = 1: single-term window, gap is |e^{-(N+1)/N} - 1/e| R(N+1)
    const WeightRemovalCheck single = weight_removal_check(10000, 1, k, table, psi);
    const double r = single.window.raw_sum;
    const double expected =
        std::abs(std::exp(-10001.0 / 10000.0) - std::exp(-1.0)) * r;
    CHECK(single.lhs_gap == doctest::Approx(expected).epsilon(1e-9));
    CHECK(single.pass);

    // empty representation window: both sums vanish
    const WeightRemovalCheck zero = weight_removal_check(13, 2, k, table, psi);
    CHECK(zero.window.raw_sum == 0.0);
    CHECK(zero.lhs_gap == 0.0);
    CHECK(zero.pass);
}
