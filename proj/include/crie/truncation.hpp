#pragma once

#include <functional>
#include <string>
#include <string_view>

#include "crie/distributions.hpp"
#include "crie/quadrature.hpp"

namespace crie {

// Truncation interval (tau1, tau2]; tau2 may be +infinity ("3:inf").
struct Window {
    double tau1 = 0.0;
    double tau2 = 0.0;

    Window(double t1, double t2);
    static Window parse(std::string_view text);

    bool finite() const;
    double width() const;  // +inf for unbounded windows
    std::string describe() const;
};

// A distribution restricted to a window with F(tau1) < F(tau2). Caches the
// survival values at both endpoints; immutable and safe to use concurrently.
class TruncatedView {
  public:
    TruncatedView(DistPtr dist, Window window, QuadratureConfig quad = {});

    const DistPtr& dist() const { return dist_; }
    const Window& window() const { return window_; }
    const QuadratureConfig& quad() const { return quad_; }
    double tau1() const { return window_.tau1; }
    double tau2() const { return window_.tau2; }
    double s1() const { return s1_; }
    double s2() const { return s2_; }
    // min(tau2, support end): the finite upper limit used by integrals, or
    // +inf when both are unbounded.
    double upper_limit() const { return upper_; }

    double survival(double x) const;
    double cdf(double x) const;
    double pdf(double x) const;

    // Generalized failure rates with a free left anchor: gfr1(x) is the GFR
    // of the window re-anchored at x, f(x)/(S(x)-s2); gfr2 uses f(tau2).
    double gfr1(double x) const;
    double gfr2(double x) const;

    // -ln survival(x); zero at tau1.
    double cum_hazard(double x) const;

    double mean_residual() const;             // m1 = int survival over the window
    double mean_past() const;                 // m2 = int (1 - survival); finite windows
    double cond_mean() const;                 // tau1 + m1
    double mean_residual_at(double x) const;  // m1 with the window re-anchored at x

    // E[phi(X) | window] via phi(tau1) + int phi'(x) survival(x) dx.
    double cond_expect(const std::function<double(double)>& phi,
                       const std::function<double(double)>& dphi) const;
    double cond_second_moment_about(double c) const;  // E[(X-c)^2 | window]
    double cond_var() const;

    // survival(x) * (1 + cum_hazard(x)): the relevation-transform survival.
    double relevation_survival(double x) const;

    // E|X - Y| for i.i.d. X, Y conditioned on the window: 2 int u(1-u).
    double mean_abs_difference() const;

    TruncatedView with_config(QuadratureConfig cfg) const;
    TruncatedView reanchored(double tau1) const;

  private:
    void check_in_window(double x) const;

    DistPtr dist_;
    Window window_;
    QuadratureConfig quad_;
    double s1_ = 1.0, s2_ = 0.0;
    double upper_ = 0.0;
};

// Odds comparison of two truncated survivals on the same window:
// survival_Y(x) / survival_X(x); equals 1 at tau1.
double odds_ratio_g(const TruncatedView& vx, const TruncatedView& vy, double x);

}  // namespace crie
