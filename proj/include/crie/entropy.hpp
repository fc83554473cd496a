#pragma once

#include <string>

#include "crie/truncation.hpp"

namespace crie {

// Numerically distinct routes to the cumulative residual interval entropy.
// All four agree on valid inputs; `definition` is the default, the others
// exist for cross-verification.
enum class CrieMethod {
    definition,      // -int u ln u over the window
    via_mrl,         // E[m1(X, tau2) | window]
    via_covariance,  // Cov(X, -ln(S(X)-s2) | window) from closed conditional moments
    via_relevation,  // int relevation survival - m1
};

CrieMethod parse_crie_method(std::string_view name);
std::string to_string(CrieMethod m);

// Cumulative residual interval entropy H(X; tau1, tau2) >= 0.
double entropy(const TruncatedView& v, CrieMethod method = CrieMethod::definition);

// Shannon entropy of the truncated variable; may be negative.
double interval_shannon(const TruncatedView& v);

// -int trunc_cdf ln trunc_cdf over a finite window; equals the dynamic
// cumulative past entropy of the shifted variable.
double past_interval_entropy(const TruncatedView& v);

// -int (S/(s1-s2)) ln(S/(s1-s2)): the "modified" variant whose normalizer is
// not a valid survival function. Not sign-definite.
double modified_crie(const TruncatedView& v);

// Cumulative residual entropy -int S ln S over the support; the window
// (support_lo, inf) limit of crie. Throws InfiniteResult on divergent tails.
double cre(const DistPtr& dist, const QuadratureConfig& cfg = {});

// CRE of the residual lifetime at age t: crie over (t, inf).
double dynamic_cre(const DistPtr& dist, double t, const QuadratureConfig& cfg = {});

// Cumulative residual extropy -0.5 int S^2; nonpositive. Throws
// InfiniteResult when the squared tail is not integrable.
double crj(const DistPtr& dist, const QuadratureConfig& cfg = {});

// Survival-function Kullback-Leibler divergence between two truncated
// variables on the same window:
//   int uX ln(uX/uY) - (m1_X - m1_Y) >= 0, zero iff the truncated survivals
// coincide. Throws DivergentDivergence when uY vanishes strictly inside the
// window while uX does not.
double crikl(const TruncatedView& vx, const TruncatedView& vy);

// H(phi(X); tau1, tau2) for an increasing transform, evaluated by the
// change-of-variables integral on the base scale. The window is on the
// transformed axis.
double transform_crie(const DistPtr& base, const Transform& phi, const Window& y_window,
                      const QuadratureConfig& cfg = {});

}  // namespace crie
