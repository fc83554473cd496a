#include <cmath>
#include <limits>
#include <vector>

#include <doctest.h>

#include "crie/distributions.hpp"
#include "crie/errors.hpp"
#include "crie/shape_diag.hpp"
#include "crie/truncation.hpp"

#include "test_support.hpp"

using namespace crie;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kE = std::exp(1.0);

TruncatedView view(const DistPtr& d, double t1, double t2) {
    return TruncatedView(d, Window(t1, t2));
}
}  // namespace

TEST_CASE("window parsing and validation") {
    const Window w = Window::parse("3:10");
    CHECK(w.tau1 == 3.0);
    CHECK(w.tau2 == 10.0);
    CHECK(Window::parse("3:inf").finite() == false);
    CHECK_THROWS_AS(Window::parse("5"), ParseError);
    CHECK_THROWS_AS(Window::parse("a:b"), ParseError);
    CHECK_THROWS_AS(Window(2.0, 1.0), InvalidWindow);
    CHECK_THROWS_AS(Window(2.0, 2.0), InvalidWindow);
    // Outside the admissible set: no mass between 5 and 6 under uniform(1).
    CHECK_THROWS_AS(view(uniform(1.0), 5.0, 6.0), DegenerateWindow);
}

TEST_CASE("truncated survival: endpoints and a hand value") {
    const auto v = view(exponential(1.0), 0.0, std::log(2.0));
    CHECK(v.survival(0.0) == doctest::Approx(1.0));
    CHECK(v.survival(std::log(2.0)) == doctest::Approx(0.0));
    // x = ln(4/3): (0.75 - 0.5) / (1 - 0.5) = 0.5
    CHECK(v.survival(std::log(4.0 / 3.0)) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK_THROWS_AS(v.survival(-0.1), OutOfWindow);
    CHECK_THROWS_AS(v.survival(1.0), OutOfWindow);

    // survival integrates trunc_pdf: quadrature cross-check on a second case
    const auto w = view(exponential(1.0), 0.0, 1.0);
    const double by_pdf = oracle::integrate(
        [&w](double t) { return w.pdf(t); }, std::log(4.0 / 3.0), 1.0);
    CHECK(w.survival(std::log(4.0 / 3.0)) == doctest::Approx(by_pdf).epsilon(1e-9));
}

TEST_CASE("windows reaching below the support clamp the survival at 1") {
    // tau1 < support_lo is admissible (F(tau1) < F(tau2)); the flat stretch
    // contributes nothing.
    const TruncatedView v(uniform(1.0), Window(-1.0, 0.5));
    CHECK(v.s1() == 1.0);
    CHECK(v.survival(-0.5) == doctest::Approx(1.0));
    CHECK(v.mean_residual() ==
          doctest::Approx(1.0 + TruncatedView(uniform(1.0), Window(0.0, 0.5)).mean_residual())
              .epsilon(1e-10));
}

TEST_CASE("truncated pdf: constant for uniform windows and normalized") {
    const auto v = view(uniform(1.0), 0.2, 0.6);
    for (double x = 0.2; x <= 0.6; x += 0.05) {
        CHECK(v.pdf(x) == doctest::Approx(2.5).epsilon(1e-13));
    }
    const auto ve = view(exponential(1.0), 0.0, std::log(2.0));
    CHECK(ve.pdf(0.0) == doctest::Approx(2.0).epsilon(1e-13));
    const double mass =
        oracle::integrate([&ve](double x) { return ve.pdf(x); }, 0.0, std::log(2.0));
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("generalized failure rates") {
    const auto vu = view(uniform(2.0), 0.4, 1.2);
    CHECK(vu.gfr1(0.4) == doctest::Approx(1.0 / 0.8).epsilon(1e-12));  // 1/width

    const auto ve = view(exponential(1.0), 0.0, std::log(2.0));
    CHECK(ve.gfr1(0.0) == doctest::Approx(2.0).epsilon(1e-12));  // 1/(1-0.5)

    // gfr2 at the left anchor: f(tau2)/(s1-s2) = 0.5/0.5 = 1.
    CHECK(ve.gfr2(0.0) == doctest::Approx(1.0).epsilon(1e-12));

    // tau2 -> inf: the window GFR is the plain hazard rate.
    const auto vinf = TruncatedView(exponential(0.7), Window(0.5, kInf));
    for (double x = 0.5; x < 4.0; x += 0.5) {
        CHECK(vinf.gfr1(x) == doctest::Approx(0.7).epsilon(1e-12));
    }
    CHECK_THROWS_AS(ve.gfr1(std::log(2.0)), OutOfWindow);
}

TEST_CASE("cumulative hazard is the negative log of truncated survival") {
    const auto v = view(exponential(1.0), 0.0, std::log(2.0));
    CHECK(v.cum_hazard(0.0) == doctest::Approx(0.0));
    CHECK(v.cum_hazard(std::log(4.0 / 3.0)) == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    // 200 random (dist, window, x) triples: survival == exp(-cum_hazard).
    cases::Rng rng(31);
    const std::vector<DistPtr> zoo = {exponential(1.0), uniform(1.0), beta_c(0.5),
                                      power_dist(0.3, 0.9), lomax(2.0, 1.0)};
    for (int i = 0; i < 200; ++i) {
        const auto& d = zoo[static_cast<std::size_t>(rng.pick(5))];
        const double q1 = rng.uniform(0.02, 0.6);
        const double q2 = rng.uniform(q1 + 0.2, 0.98);
        const TruncatedView vr(d, Window(d->quantile(q1), d->quantile(q2)));
        const double x = d->quantile(rng.uniform(q1 + 0.01, q2 - 0.01));
        CHECK(std::fabs(vr.survival(x) - std::exp(-vr.cum_hazard(x))) <= 1e-10);
    }
}

TEST_CASE("mean residual lifetime closed forms") {
    // Uniform: half the window width.
    const auto vu = view(uniform(2.0), 0.3, 1.1);
    CHECK(vu.mean_residual() == doctest::Approx(0.4).epsilon(1e-10));

    // Exponential(1) on (0,1): (1 - 2/e)/(1 - 1/e).
    const auto ve = view(exponential(1.0), 0.0, 1.0);
    const double expected = (1.0 - 2.0 / kE) / (1.0 - 1.0 / kE);
    CHECK(ve.mean_residual() == doctest::Approx(expected).epsilon(1e-10));
    CHECK(expected == doctest::Approx(0.418023).epsilon(1e-6));

    // tau2 -> inf reduces to the mean residual life; memoryless case 1/lambda.
    const auto vinf = TruncatedView(exponential(0.5), Window(3.0, kInf));
    CHECK(vinf.mean_residual() == doctest::Approx(2.0).epsilon(1e-9));

    // m1 equals the integral of exp(-cum_hazard).
    const double via_hazard =
        oracle::integrate([&ve](double x) { return std::exp(-ve.cum_hazard(x)); }, 0.0, 1.0);
    CHECK(ve.mean_residual() == doctest::Approx(via_hazard).epsilon(1e-9));
}

TEST_CASE("mean past lifetime and the mean identity") {
    const auto v = view(exponential(1.0), 0.0, 1.0);
    const double m1 = v.mean_residual();
    const double m2 = v.mean_past();
    CHECK(m1 + m2 == doctest::Approx(1.0).epsilon(1e-10));  // window width
    CHECK(std::fabs((0.0 + m1) - (1.0 - m2)) <= 1e-9);      // mu = tau1+m1 = tau2-m2
    CHECK(v.cond_mean() == doctest::Approx(0.418023).epsilon(1e-6));

    const auto vu = view(uniform(1.0), 0.2, 0.8);
    CHECK(vu.cond_mean() == doctest::Approx(0.5).epsilon(1e-10));
    CHECK_THROWS_AS(TruncatedView(exponential(1.0), Window(0.0, kInf)).mean_past(),
                    InfiniteResult);
}

TEST_CASE("exponential memorylessness: window analytics depend only on width") {
    const auto a = view(exponential(1.0), 3.0, 10.0);
    const auto b = view(exponential(1.0), 5.0, 12.0);
    CHECK(std::fabs(a.mean_residual() - b.mean_residual()) <= 1e-10);
    CHECK(std::fabs(a.mean_abs_difference() - b.mean_abs_difference()) <= 1e-10);
}

TEST_CASE("gfr identity with the mean residual derivative") {
    // h1(tau1,tau2) = (1 + d m1/d tau1)/m1, central difference step 1e-5*width.
    const std::vector<std::pair<DistPtr, Window>> casesv = {
        {exponential(1.0), Window(0.2, 1.4)},
        {uniform(1.0), Window(0.15, 0.75)},
        {lomax(2.0, 1.0), Window(0.5, 3.0)},
        {beta_c(0.5), Window(0.1, 0.8)},
    };
    for (const auto& [d, w] : casesv) {
        const double h = 1e-5 * w.width();
        const auto at = [&](double t1) {
            return TruncatedView(d, Window(t1, w.tau2)).mean_residual();
        };
        const double dm1 = (at(w.tau1 + h) - at(w.tau1 - h)) / (2.0 * h);
        const TruncatedView v(d, w);
        const double lhs = v.gfr1(w.tau1);
        const double rhs = (1.0 + dm1) / v.mean_residual();
        CHECK(std::fabs(lhs - rhs) <= 1e-4 * std::max(1.0, std::fabs(rhs)));
    }
}

TEST_CASE("conditional expectation via the survival representation") {
    const auto v = view(exponential(1.0), 0.0, 1.0);

    // identity map reduces to the conditional mean
    const double mu = v.cond_expect([](double x) { return x; }, [](double) { return 1.0; });
    CHECK(mu == doctest::Approx(v.cond_mean()).epsilon(1e-10));

    // constants are fixed points
    CHECK(v.cond_expect([](double) { return 7.5; }, [](double) { return 0.0; }) ==
          doctest::Approx(7.5));

    // E[X^2 | 0<=X<=1] for Exp(1): closed form (2 - 5/e)/(1 - 1/e),
    // cross-checked by direct quadrature.
    const double expected = (2.0 - 5.0 / kE) / (1.0 - 1.0 / kE);
    const double direct = oracle::integrate(
        [&v](double x) { return x * x * v.pdf(x); }, 0.0, 1.0);
    CHECK(expected == doctest::Approx(direct).epsilon(1e-9));
    CHECK(v.cond_second_moment_about(0.0) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(v.cond_second_moment_about(0.0) == doctest::Approx(0.2540698794).epsilon(1e-8));
}

TEST_CASE("conditional variance") {
    const auto vu = view(uniform(1.0), 0.2, 0.8);
    CHECK(vu.cond_var() == doctest::Approx(0.36 / 12.0).epsilon(1e-9));

    const auto ve = view(exponential(1.0), 0.0, 1.0);
    CHECK(ve.cond_var() == doctest::Approx(0.0793264058).epsilon(1e-7));

    // near-degenerate width
    const auto tiny = view(uniform(1.0), 0.5, 0.500001);
    CHECK(tiny.cond_var() <= 1e-12);
}

TEST_CASE("relevation survival") {
    const auto v = view(exponential(1.0), 0.0, std::log(2.0));
    CHECK(v.relevation_survival(0.0) == doctest::Approx(1.0));
    CHECK(v.relevation_survival(std::log(2.0)) == doctest::Approx(0.0));
    // 0.5 * (1 + ln 2)
    CHECK(v.relevation_survival(std::log(4.0 / 3.0)) ==
          doctest::Approx(0.8465735903).epsilon(1e-9));
    // nonincreasing in x
    double prev = 2.0;
    for (double x = 0.0; x <= std::log(2.0); x += 0.01) {
        const double r = v.relevation_survival(x);
        CHECK(r <= prev + 1e-12);
        prev = r;
    }
}

TEST_CASE("odds ratio of two truncated survivals") {
    const auto vx = view(exponential(1.0), 0.0, 1.0);
    const auto vy = view(exponential(2.0), 0.0, 1.0);
    CHECK(odds_ratio_g(vx, vx, 0.33) == doctest::Approx(1.0));
    CHECK(odds_ratio_g(vx, vy, 0.0) == doctest::Approx(1.0));
    // frozen from the closed survival values
    CHECK(odds_ratio_g(vx, vy, 0.5) == doctest::Approx(0.7123508634).epsilon(1e-9));
    CHECK_THROWS_AS(odds_ratio_g(vx, view(exponential(2.0), 0.0, 2.0), 0.5), InvalidWindow);
}

TEST_CASE("mean absolute difference of a truncated pair") {
    const auto vu = view(uniform(1.0), 0.0, 1.0);
    CHECK(vu.mean_abs_difference() == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

    const auto tiny = view(uniform(1.0), 0.5, 0.500001);
    CHECK(tiny.mean_abs_difference() <= 1e-5);

    // visible in the reference grid: 2H at that window is an upper bound
    const auto ve = view(exponential(0.5), 3.0, 10.0);
    CHECK(ve.mean_abs_difference() == doctest::Approx(1.6750496539).epsilon(1e-8));
    CHECK(ve.mean_abs_difference() <= 2.0 * 1.52470 + 1e-6);
}

TEST_CASE("re-anchored mean residual agrees with a fresh view") {
    const auto v = view(lomax(2.0, 1.0), 0.5, 4.0);
    for (double x = 0.5; x < 4.0; x += 0.5) {
        const double direct = TruncatedView(lomax(2.0, 1.0), Window(x, 4.0)).mean_residual();
        CHECK(v.mean_residual_at(x) == doctest::Approx(direct).epsilon(1e-9));
    }
}

TEST_CASE("monotone interplay of gfr and mean residual (within-window scans)") {
    // Where the re-anchored GFR rises, the re-anchored m1 falls, and dually.
    const std::vector<std::pair<DistPtr, Window>> casesv = {
        {exponential(1.0), Window(0.0, 1.0)},
        {uniform(1.0), Window(0.1, 0.9)},
        {lomax(2.0, 1.0), Window(0.0, kInf)},
    };
    for (const auto& [d, w] : casesv) {
        const TruncatedView v(d, w);
        const double hi = std::isinf(v.upper_limit()) ? d->quantile(0.99)
                                                      : v.upper_limit() - 1e-6 * w.width();
        const auto h_scan = scan_monotone([&v](double x) { return v.gfr1(x); }, w.tau1, hi, 99);
        const auto m_scan =
            scan_monotone([&v](double x) { return v.mean_residual_at(x); }, w.tau1, hi, 99);
        if (h_scan.direction == Direction::increasing) {
            CHECK(m_scan.direction == Direction::decreasing);
        }
        if (h_scan.direction == Direction::decreasing) {
            CHECK(m_scan.direction == Direction::increasing);
        }
    }
}

TEST_CASE("ratio characterization of monotone gfr") {
    // h1(x,y) increasing in x iff (S(x+t)-S(y))/(S(x)-S(y)) decreasing in x.
    const double t = 0.05;
    const std::vector<DistPtr> zoo = {exponential(1.0), uniform(1.0), lomax(2.0, 1.0)};
    for (const auto& d : zoo) {
        const double y = std::isfinite(d->support_hi()) ? 0.9 * d->support_hi() : 5.0;
        const TruncatedView v(d, Window(d->support_lo(), y));
        const double s2 = d->survival(y);
        const auto gfr_scan =
            scan_monotone([&v](double x) { return v.gfr1(x); }, d->support_lo(), y - 2.0 * t, 65);
        const auto ratio_scan = scan_monotone(
            [&](double x) { return (d->survival(x + t) - s2) / (d->survival(x) - s2); },
            d->support_lo(), y - 2.0 * t, 65);
        if (gfr_scan.direction == Direction::increasing) {
            CHECK(ratio_scan.direction == Direction::decreasing);
        } else if (gfr_scan.direction == Direction::decreasing) {
            CHECK(ratio_scan.direction == Direction::increasing);
        }
    }
}

TEST_CASE("odds ratio is nondecreasing under re-anchored gfr dominance") {
    // X with the larger rate dominates in GFR; g_{X,Y} then rises in x.
    const auto vx = view(exponential(2.0), 0.0, 1.0);
    const auto vy = view(exponential(1.0), 0.0, 1.0);
    double prev = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = 0.0099 * i;
        const double g = odds_ratio_g(vx, vy, x);
        CHECK(g >= prev - 1e-12);
        prev = g;
    }
}

TEST_CASE("equilibrium gfr fixed point for the exponential") {
    const auto d = exponential(1.3);
    const auto eq = equilibrium_of(d);
    const TruncatedView v(d, Window(0.2, 2.0));
    const TruncatedView veq(eq, Window(0.2, 2.0));
    for (int i = 0; i < 9; ++i) {
        const double x = 0.2 + 0.2 * i;
        CHECK(std::fabs(v.gfr1(x) - veq.gfr1(x)) <= 1e-9);
    }
}
