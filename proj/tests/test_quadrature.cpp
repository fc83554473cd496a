#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "crie/errors.hpp"
#include "crie/quadrature.hpp"

#include "test_support.hpp"

using crie::integrate;
using crie::QuadratureConfig;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("xlogx convention") {
    CHECK(crie::xlogx(0.0) == 0.0);
    CHECK(crie::xlogx(-1e-18) == 0.0);  // round-off clamps to zero
    CHECK(crie::xlogx(1.0) == 0.0);
    CHECK(crie::xlogx(std::exp(-1.0)) == doctest::Approx(-std::exp(-1.0)).epsilon(1e-14));
    CHECK(crie::xlogx(2.0) == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-14));
}

TEST_CASE("polynomial and textbook integrals") {
    const auto r1 = integrate([](double x) { return x; }, 0.0, 1.0);
    CHECK(r1.converged);
    CHECK(r1.value == doctest::Approx(0.5).epsilon(1e-14));

    // -x ln x has the antiderivative x^2/4 - (x^2/2) ln x.
    const auto r2 = integrate([](double x) { return -crie::xlogx(x); }, 0.0, 1.0);
    CHECK(r2.converged);
    CHECK(r2.value == doctest::Approx(0.25).epsilon(1e-10));

    const auto r3 = integrate([](double x) { return std::exp(-x); }, 0.0, kInf);
    CHECK(r3.converged);
    CHECK(r3.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 1.0, 0.0), crie::InvalidParameter);
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, kInf, kInf), crie::InvalidParameter);
    QuadratureConfig bad;
    bad.abs_tol = -1.0;
    CHECK_THROWS_AS(integrate([](double) { return 0.0; }, 0.0, 1.0, bad),
                    crie::InvalidParameter);
}

TEST_CASE("not-converged results are flagged, not thrown") {
    // Non-integrable tail: the budget runs out.
    QuadratureConfig cfg;
    cfg.max_subdivisions = 50;
    const auto r = integrate([](double x) { return 1.0 / (1.0 + x); }, 0.0, kInf, cfg);
    CHECK_FALSE(r.converged);
    CHECK_THROWS_AS(
        crie::integrate_checked([](double x) { return 1.0 / (1.0 + x); }, 0.0, kInf, cfg),
        crie::NotConverged);
}

TEST_CASE("determinism: bit-identical repeat runs") {
    const auto f = [](double x) { return std::sin(x) * std::exp(-0.3 * x); };
    const auto a = integrate(f, 0.0, 20.0);
    const auto b = integrate(f, 0.0, 20.0);
    CHECK(a.value == b.value);
    CHECK(a.error_estimate == b.error_estimate);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("halving tolerances never worsens the fixed battery") {
    struct Item {
        std::function<double(double)> f;
        double a, b;
        double reference;
    };
    const double sqrt_pi_half = 1.2533141373155002512;  // int_0^inf exp(-x^2/2)
    const std::vector<Item> battery = {
        {[](double x) { return x * x * x; }, 0.0, 1.0, 0.25},
        {[](double x) { return -crie::xlogx(x); }, 0.0, 1.0, 0.25},
        {[](double x) { return std::exp(-x); }, 0.0, kInf, 1.0},
        {[](double x) { return 1.0 / (1.0 + x * x); }, 0.0, kInf, 1.5707963267948966192},
        {[](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846, 2.0},
        {[](double x) { return std::sqrt(x); }, 0.0, 1.0, 2.0 / 3.0},
        {[](double u) { return std::log(u * std::fabs(std::log(u))); }, 0.0, 1.0,
         -1.5772156649015328606},
        {[](double x) { return std::exp(-x * x / 2.0); }, 0.0, kInf, sqrt_pi_half},
        {[](double x) { return std::pow(1.0 + x, -4.0); }, 0.0, kInf, 1.0 / 3.0},
        {[](double x) { return std::log(x); }, 0.0, 1.0, -1.0},
    };

    for (const auto& item : battery) {
        QuadratureConfig cfg;
        cfg.abs_tol = 1e-4;
        cfg.rel_tol = 1e-3;
        double prev_err = kInf;
        for (int step = 0; step < 6; ++step) {
            const auto r = integrate(item.f, item.a, item.b, cfg);
            const double err = std::fabs(r.value - item.reference);
            CHECK(err <= prev_err);
            prev_err = err;
            cfg.abs_tol *= 0.5;
            cfg.rel_tol *= 0.5;
        }
        CHECK(prev_err <= 1e-6);
    }
}

TEST_CASE("cross-check against the independent Simpson oracle") {
    const auto f = [](double x) { return std::cos(3.0 * x) * std::exp(-x); };
    const auto r = integrate(f, 0.0, 5.0);
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(oracle::integrate(f, 0.0, 5.0)).epsilon(1e-10));
}
