#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hcol/thresholds.hpp"

using namespace hcol;

TEST_CASE("alpha by substitution") {
    CHECK(alpha({3, 3, 12.0, 0}) == doctest::Approx(4.5));
    CHECK(alpha({3, 3, 8.0 / 3.0, 0}) == doctest::Approx(1.0));
    CHECK(alpha({3, 3, 1e-9, 0}) == doctest::Approx(0.0).epsilon(1e-8));
}

TEST_CASE("h function values") {
    CHECK(h_func(std::log(2.0), 3, 3) == doctest::Approx(16.0 * std::log(2.0)));
    CHECK(h_func(50.0, 3, 3) == doctest::Approx(50.0).epsilon(1e-10));
    CHECK_THROWS(h_func(0.0, 3, 3));
}

TEST_CASE("lambda_r solves the defining equation across the grid") {
    for (int q = 3; q <= 10; ++q)
        for (int k = 3; k <= 7; ++k) {
            const double x = (q - 1.0) * (k - 1.0);
            const double l = lambda_r(q, k);
            CHECK(std::abs(std::exp(l) - 1.0 - x * l) < 1e-10);
            CHECK(std::abs(l - lambda_r_lambert(q, k)) < 1e-9);
        }
}

TEST_CASE("lambda_r reference value and asymptotics") {
    CHECK(lambda_r(3, 3) == doctest::Approx(2.3367).epsilon(5e-4));

    // x = 10^4 via (q-1)(k-1) = 5000 * 2
    const double asym4 = lambda_r_asymptotic(5001, 3);
    CHECK(std::abs(lambda_r(5001, 3) - asym4) / asym4 < 0.05);

    // the gap above ln x + ln ln x shrinks as x grows
    const double gap2 = lambda_r(51, 3) - lambda_r_asymptotic(51, 3);      // x = 100
    const double gap3 = lambda_r(501, 3) - lambda_r_asymptotic(501, 3);    // x = 1000
    const double gap4 = lambda_r(5001, 3) - lambda_r_asymptotic(5001, 3);  // x = 10^4
    CHECK(gap2 > gap3);
    CHECK(gap3 > gap4);
}

TEST_CASE("h is minimized at lambda_r") {
    const double l = lambda_r(3, 3);
    CHECK(h_func(l, 3, 3) == doctest::Approx(3.50890).epsilon(2e-4));

    const double step = 1e-5;
    const double deriv = (h_func(l + step, 3, 3) - h_func(l - step, 3, 3)) / (2 * step);
    CHECK(std::abs(deriv) < 1e-6);

    const double hmin = h_func(l, 3, 3);
    for (double lg = std::log(1e-3); lg <= std::log(1e3); lg += 0.05)
        CHECK(h_func(std::exp(lg), 3, 3) >= hmin - 1e-12);
}

TEST_CASE("rigidity and condensation thresholds, q=3 k=3") {
    CHECK(c_r(3, 3) == doctest::Approx(9.360).epsilon(6e-4));
    CHECK(c_r(3, 3) == doctest::Approx((8.0 / 3.0) * h_func(lambda_r(3, 3), 3, 3)));
    CHECK(c_r_asymptotic(3, 3) == doctest::Approx(3.0 * (std::log(4.0) + std::log(std::log(4.0)) + 1.0)));
    CHECK(c_cond(3, 3) == doctest::Approx(8.5 * std::log(3.0) - std::log(2.0)));

    auto rep = threshold_report(3, 3);
    CHECK(rep.first_regime_bound == doctest::Approx(8.0 * std::log(3.0)));
    CHECK(rep.c_cond == doctest::Approx(8.645).epsilon(1e-3));
}

TEST_CASE("c_cond monotone over the grid") {
    for (int q = 3; q <= 9; ++q)
        for (int k = 3; k <= 6; ++k) {
            CHECK(c_cond(q + 1, k) > c_cond(q, k));
            CHECK(c_cond(q, k + 1) > c_cond(q, k));
        }
}

TEST_CASE("fixed point above and below threshold") {
    FixedPoint above = fixed_point({3, 3, 12.0, 0});
    CHECK(above.converged);
    CHECK(above.lambda == doctest::Approx(4.2487).epsilon(1e-4));
    CHECK(above.rho == doctest::Approx(0.9717).epsilon(1e-3));
    CHECK(above.upsilon == doctest::Approx(above.rho).epsilon(1e-10));

    FixedPoint below = fixed_point({3, 3, 5.0, 0});
    CHECK(below.lambda == 0.0);
    CHECK(below.rho == 0.0);

    // just above c_r the solution jumps to rho_r = (1-e^{-lambda_r})^{q-1}
    const double rho_r = std::pow(1.0 - std::exp(-lambda_r(3, 3)), 2);
    FixedPoint near = fixed_point({3, 3, c_r(3, 3) + 1e-6, 0});
    CHECK(near.rho == doctest::Approx(rho_r).epsilon(1e-2));
    CHECK(rho_r == doctest::Approx(0.8160).epsilon(1e-3));
}

TEST_CASE("upsilon equals rho and tends to 1") {
    for (double c : {10.0, 12.0, 20.0, 50.0}) {
        FixedPoint fp = fixed_point({3, 3, c, 0});
        CHECK(std::abs(fp.upsilon - fp.rho) < 1e-10);
        CHECK(upsilon({3, 3, c, 0}) == doctest::Approx(fp.rho));
    }
    for (int q : {3, 4, 6})
        for (int k : {3, 4}) {
            ModelParams p{q, k, 3.0 * c_r(q, k), 0};
            FixedPoint fp = fixed_point(p);
            CHECK(std::abs(fp.upsilon - fp.rho) < 1e-10);
        }
    CHECK(upsilon({3, 3, 1e5, 0}) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(upsilon({3, 3, 5.0, 0}) == 0.0);
}

TEST_CASE("returned lambda is the largest root") {
    ModelParams p{3, 3, 12.0, 0};
    FixedPoint fp = fixed_point(p);
    const double a = alpha(p);
    auto residual = [&](double l) { return a * std::pow(1.0 - std::exp(-l), 4.0) - l; };
    CHECK(std::abs(residual(fp.lambda)) < 1e-9);
    for (double l = fp.lambda * 1.05; l < fp.lambda * 20; l *= 1.3)
        CHECK(residual(l) < 0);  // no root above
}
