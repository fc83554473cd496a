#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "crie/entropy.hpp"
#include "crie/errors.hpp"
#include "crie/shape_diag.hpp"

#include "test_support.hpp"

using namespace crie;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("monotone scan basics") {
    CHECK(scan_monotone([](double x) { return x; }, 0.0, 1.0, 33).direction ==
          Direction::increasing);
    CHECK(scan_monotone([](double) { return 3.0; }, 0.0, 1.0, 33).direction ==
          Direction::constant);
    CHECK(scan_monotone([](double x) { return (x - 0.5) * (x - 0.5); }, 0.0, 1.0, 33).direction ==
          Direction::mixed);
    CHECK(scan_monotone([](double x) { return -x; }, 0.0, 1.0, 33).direction ==
          Direction::decreasing);
    CHECK_THROWS_AS(scan_monotone([](double) { return kInf; }, 0.0, 1.0, 9), NonFiniteSample);
    CHECK_THROWS_AS(scan_monotone([](double x) { return x; }, 0.0, 1.0, 2), InvalidParameter);
}

TEST_CASE("aging classification") {
    CHECK(classify_aging(exponential(1.0)) == AgingClass::constant_hazard);
    CHECK(classify_aging(lomax(2.0, 1.0)) == AgingClass::dfr);
    CHECK(classify_aging(uniform(1.0)) == AgingClass::ifr);
    CHECK(classify_aging(beta_c(2.0)) == AgingClass::ifr);
}

TEST_CASE("trend certification: exponential and uniform are DCRIE on grids") {
    const auto cert_exp = certify_entropy_trend(exponential(1.0), 10.0, linspace(3.0, 9.0, 13));
    CHECK(cert_exp.verdict == EntropyTrend::dcrie);
    CHECK(cert_exp.entropy_scan.direction == Direction::decreasing);
    CHECK(cert_exp.sign_uniform);
    CHECK(cert_exp.max_identity_rel_err <= 1e-3);

    const auto cert_uni = certify_entropy_trend(uniform(1.0), 0.9, linspace(0.05, 0.8, 13));
    CHECK(cert_uni.verdict == EntropyTrend::dcrie);
    // Uniform closed forms: H = w/4 below m1 = w/2 at every cell.
    for (const auto& cell : cert_uni.cells) {
        CHECK(cell.entropy == doctest::Approx((0.9 - cell.tau1) / 4.0).epsilon(1e-8));
        CHECK(cell.mean_residual == doctest::Approx((0.9 - cell.tau1) / 2.0).epsilon(1e-8));
    }

    // betac(1) is the uniform on (0,1): same verdict.
    const auto cert_b1 = certify_entropy_trend(beta_c(1.0), 0.9, linspace(0.05, 0.8, 13));
    CHECK(cert_b1.verdict == EntropyTrend::dcrie);
}

TEST_CASE("derivative identity holds on 50 randomized cases") {
    cases::Rng rng(4242);
    const std::vector<DistPtr> zoo = {exponential(1.0), exponential(0.5), uniform(1.0),
                                      beta_c(0.5),      beta_c(2.0),      power_dist(0.3, 0.9),
                                      lomax(2.0, 1.0),  lomax(3.0, 1.0)};
    const QuadratureConfig cfg{1e-12, 1e-11, 2000};
    int tested = 0;
    while (tested < 50) {
        const auto& d = zoo[static_cast<std::size_t>(rng.pick(static_cast<int>(zoo.size())))];
        const double q1 = rng.uniform(0.05, 0.6);
        const double q2 = rng.uniform(q1 + 0.15, 0.95);
        const double t1 = d->quantile(q1);
        const double t2 = d->quantile(q2);
        if (t2 - t1 < 0.01) continue;
        ++tested;

        const TruncatedView v(d, Window(t1, t2), cfg);
        const double h = entropy(v);
        const double m1 = v.mean_residual();
        const double rhs = v.gfr1(t1) * (h - m1);

        const double step = 1e-4 * (t2 - t1);
        const auto h_at = [&](double a) {
            return entropy(TruncatedView(d, Window(a, t2), cfg));
        };
        const double fd = (h_at(t1 + step) - h_at(t1 - step)) / (2.0 * step);
        CHECK(std::fabs(fd - rhs) <= 1e-3 * std::max(1.0, std::fabs(rhs)));
    }
}

TEST_CASE("trend biconditional: sign of H - m1 matches the scan direction") {
    // On certified grids every cell must carry the matching sign.
    for (const auto& [d, tau2, lo, hi] :
         std::vector<std::tuple<DistPtr, double, double, double>>{
             {exponential(0.5), 10.0, 3.0, 9.0},
             {beta_c(2.0), 0.9, 0.05, 0.8},
             {lomax(2.0, 1.0), 6.0, 0.5, 5.0}}) {
        const auto cert = certify_entropy_trend(d, tau2, linspace(lo, hi, 17));
        if (cert.verdict == EntropyTrend::dcrie) {
            for (const auto& cell : cert.cells) {
                CHECK(cell.entropy <= cell.mean_residual + 1e-9);
            }
        }
        if (cert.verdict == EntropyTrend::icrie) {
            for (const auto& cell : cert.cells) {
                CHECK(cell.entropy >= cell.mean_residual - 1e-9);
            }
        }
    }
}

TEST_CASE("decreasing window mean residual forces the decreasing-trend signal") {
    // Wherever the m1(tau1, tau2) scan certifies decreasing in tau1, every
    // cell must sit on the H <= m1 side.
    for (const auto& d : {exponential(1.0), beta_c(2.0)}) {
        const double tau2 = std::isfinite(d->support_hi()) ? 0.9 : 8.0;
        const auto grid = linspace(0.1 * tau2, 0.85 * tau2, 17);
        const auto m1_scan = scan_monotone(
            [&](double t1) { return TruncatedView(d, Window(t1, tau2)).mean_residual(); },
            grid.front(), grid.back(), 17);
        REQUIRE(m1_scan.direction == Direction::decreasing);
        const auto cert = certify_entropy_trend(d, tau2, grid);
        for (const auto& cell : cert.cells) {
            CHECK(cell.entropy <= cell.mean_residual + 1e-9);
        }
    }
}

TEST_CASE("figure-style scans: m1 and H both fall in tau1") {
    for (double c : {1.0, 2.0, 5.0}) {
        const auto d = beta_c(c);
        double prev_h = kInf, prev_m = kInf;
        for (double t1 : linspace(0.01, 0.85, 25)) {
            const TruncatedView v(d, Window(t1, 0.9));
            const double h = entropy(v);
            const double m = v.mean_residual();
            CHECK(h < prev_h);
            CHECK(m < prev_m);
            prev_h = h;
            prev_m = m;
        }
    }
    for (double lam : {0.2, 0.5, 1.0}) {
        const auto d = exponential(lam);
        double prev_h = kInf, prev_m = kInf;
        for (double t1 : linspace(0.1, 9.0, 25)) {
            const TruncatedView v(d, Window(t1, 10.0));
            const double h = entropy(v);
            const double m = v.mean_residual();
            CHECK(h < prev_h);
            CHECK(m < prev_m);
            prev_h = h;
            prev_m = m;
        }
    }
}

TEST_CASE("stochastic order certification") {
    // Exp(2) <= Exp(1) in lr order: density ratio is increasing.
    const auto x = exponential(2.0);
    const auto y = exponential(1.0);
    CHECK(check_order(x, y, StochOrder::lr).outcome == OrderOutcome::certified);
    CHECK(check_order(x, y, StochOrder::hr).outcome == OrderOutcome::certified);
    CHECK(check_order(x, y, StochOrder::st).outcome == OrderOutcome::certified);

    // Reflexivity.
    CHECK(check_order(x, x, StochOrder::lr).outcome == OrderOutcome::certified);
    CHECK(check_order(x, x, StochOrder::st).outcome == OrderOutcome::certified);

    // Reversed pair is refuted.
    CHECK(check_order(y, x, StochOrder::st).outcome == OrderOutcome::refuted);
    CHECK(check_order(y, x, StochOrder::lr).outcome == OrderOutcome::refuted);
}

TEST_CASE("order implication chain on randomized exponential pairs") {
    cases::Rng rng(1212);
    for (int i = 0; i < 50; ++i) {
        const double lx = rng.uniform(0.2, 3.0);
        const double ly = rng.uniform(0.2, 3.0);
        const auto x = exponential(std::max(lx, ly));
        const auto y = exponential(std::min(lx, ly));
        if (check_order(x, y, StochOrder::lr).outcome == OrderOutcome::certified) {
            CHECK(check_order(x, y, StochOrder::hr).outcome == OrderOutcome::certified);
            CHECK(check_order(x, y, StochOrder::st).outcome == OrderOutcome::certified);
        }
    }
}

TEST_CASE("trend criterion integral equals m1 - H") {
    const TruncatedView v(exponential(1.0), Window(0.3, 2.0));
    CHECK(trend_criterion_integral(v) ==
          doctest::Approx(v.mean_residual() - entropy(v)).epsilon(1e-9));

    // Uniform closed form: m1 - H = w/2 - w/4 = w/4 > 0 (decreasing side).
    const TruncatedView vu(uniform(1.0), Window(0.2, 0.8));
    CHECK(trend_criterion_integral(vu) == doctest::Approx(0.15).epsilon(1e-9));
}

TEST_CASE("closure probes: affine maps preserve the decreasing trend") {
    const auto grid = linspace(0.2, 2.0, 9);

    const auto affine = closure_probe(exponential(1.0), Transform::affine(2.0, 3.0), 3.0, grid);
    CHECK(affine.base.verdict == EntropyTrend::dcrie);
    CHECK(affine.transformed.verdict == EntropyTrend::dcrie);
    CHECK(affine.criterion_consistent);
}

TEST_CASE("closure probe reports the convex-transform breakdown honestly") {
    // The published closure claim for increasing convex maps fails in
    // practice: squaring an Exp(1) flips the trend near the left edge
    // (H - m1 = +0.388 and dH/dtau1 = +1.03 at the image window (0.04, 9),
    // cross-checked in high precision). The probe must come back
    // inconclusive on a grid covering that region, not parrot the base
    // verdict.
    const auto wide = closure_probe(exponential(1.0), Transform::square(), 3.0,
                                    linspace(0.2, 2.0, 9));
    CHECK(wide.base.verdict == EntropyTrend::dcrie);
    CHECK(wide.transformed.verdict == EntropyTrend::inconclusive);
    CHECK(wide.transformed.entropy_scan.direction == Direction::mixed);

    // Away from the breakdown region the scan does certify the decreasing
    // trend for the squared variable.
    const auto narrow = closure_probe(exponential(1.0), Transform::square(), 3.0,
                                      linspace(1.0, 2.5, 9));
    CHECK(narrow.base.verdict == EntropyTrend::dcrie);
    CHECK(narrow.transformed.verdict == EntropyTrend::dcrie);
    CHECK(narrow.criterion_consistent);
}
