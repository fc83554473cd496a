#pragma once

#include <span>
#include <string>
#include <vector>

#include "crie/entropy.hpp"
#include "crie/shape_diag.hpp"
#include "crie/truncation.hpp"

namespace crie {

enum class BoundKind { upper, lower };  // upper: lhs <= rhs, lower: lhs >= rhs

// A bound is flagged violated only when slack < -kSlackTolerance; the margin
// absorbs stacked quadrature error.
inline constexpr double kSlackTolerance = 1e-7;

struct BoundReport {
    std::string id;
    BoundKind kind = BoundKind::upper;
    bool hypotheses_met = true;
    std::string note;  // hypothesis evidence, or the reason a bound is inapplicable
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs for upper bounds, lhs - rhs for lower
    bool holds = false;  // meaningful only when hypotheses_met

    // "holds" / "violated" / "not applicable"
    std::string verdict_text() const;
    bool certified_and_violated() const { return hypotheses_met && !holds; }
};

// --- always-applicable bounds on H(X; tau1, tau2) ---------------------------

// H <= sqrt(Var(X | window)).
BoundReport bound_cond_sd(const TruncatedView& v);

// H <= 2 E[|X-mu| ln|X-mu| | window] + 4 e^{-1} / sqrt(s1 - s2).
BoundReport bound_abs_log_moment(const TruncatedView& v);

// H <= m1 ln((tau2 - tau1)/m1); finite windows.
BoundReport bound_logsum(const TruncatedView& v);

// int u(1-u) <= H  and  H <= m2 (the upper part needs a finite window).
std::vector<BoundReport> bound_survival_product(const TruncatedView& v);

// H >= E[(S(X)-s2) m1(X,tau2) | window] / (s1-s2).
BoundReport bound_weighted_mrl(const TruncatedView& v);

// H >= C exp(S(X; tau1, tau2)) with C = exp(int_0^1 ln(u |ln u|) du); finite
// windows. shannon_lower_constant() computes C by quadrature.
BoundReport bound_shannon_exp(const TruncatedView& v);
double shannon_lower_constant();

// E[|X - mu| | window] <= E[|X-Y| | window^2] <= 2H; reported as two bounds.
std::vector<BoundReport> bound_abs_difference(const TruncatedView& v);

// --- hypothesis-gated bounds -------------------------------------------------

// H >= int u^2 when the re-anchored GFR is nonincreasing on the window
// (covers the DFR unbounded-window case).
BoundReport bound_square_survival(const TruncatedView& v);

// Monotone-GFR two-sided chain: GFR nonincreasing in x gives
//   m1 <= H <= 0.5 h1(tau1,tau2) E[(X-tau1)^2 | window],
// nondecreasing reverses both comparisons.
std::vector<BoundReport> bound_gfr_monotone(const TruncatedView& v);

// lr-ordered pair: H_X <= H_Y - m1_X ln(m1_X/m1_Y), plus the weaker gap form
// H_X <= H_Y - (m1_X - m1_Y).
std::vector<BoundReport> bound_lr_pair(const TruncatedView& vx, const TruncatedView& vy);

// hr-ordered pair at tau2 = inf: E_X(t) <= E_Y(t) - m_X(t) ln(m_X(t)/m_Y(t)).
BoundReport bound_hr_dynamic(const DistPtr& x, const DistPtr& y, double t,
                             const QuadratureConfig& cfg = {});

// E(X;t) <= E[(X-t)^2 | X>t] / (2 m_X(t)^2); always applicable.
BoundReport bound_residual_second_moment(const DistPtr& dist, double t,
                                         const QuadratureConfig& cfg = {});

// GFR-dominance comparison: dominance of the re-anchored GFRs plus a
// monotone m1(x, tau2) scan orders H_X against H_Y.
BoundReport bound_gfr_dominance(const TruncatedView& vx, const TruncatedView& vy);

// H(X_e) <= H(X) when the re-anchored GFR is nondecreasing.
BoundReport bound_equilibrium_cmp(const TruncatedView& v);

// H(X^(p)) <= H(X) when m1(x, tau2) is nondecreasing in x.
BoundReport bound_tilt_cmp(const TruncatedView& v, double p);

// Trend-certified bounds. The mean-residual comparison follows the certified
// trend (DCRIE: H <= m1). The reciprocal-GFR comparison is recorded for
// inspection but never asserted: closed forms contradict its published
// orientation on the DCRIE side.
std::vector<BoundReport> bound_trend(const TruncatedView& v,
                                     const TrendCertification& certification);

// Global lower-bound integrals for the untruncated CRE: L_C = int S^2 and
// L_R = int S F. No verdict; both must undercut cre(dist).
std::pair<double, double> lower_bound_constants(const DistPtr& dist,
                                                const QuadratureConfig& cfg = {});

// Full single-distribution suite on one window. Bounds whose inputs fail
// (divergent moments, non-finite windows where required) come back
// inapplicable rather than erroring out.
std::vector<BoundReport> audit_window(const DistPtr& dist, const Window& w,
                                      const QuadratureConfig& cfg = {});

// Batch over windows; cases run concurrently, output order matches input.
std::vector<std::vector<BoundReport>> audit_windows(const DistPtr& dist,
                                                    std::span<const Window> windows,
                                                    const QuadratureConfig& cfg = {});

std::string to_json_line(const BoundReport& r);
std::string format_report_table(std::span<const BoundReport> reports);

}  // namespace crie
