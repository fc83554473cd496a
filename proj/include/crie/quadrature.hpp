#pragma once

#include <functional>

namespace crie {

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 2000;

    void validate() const;  // throws InvalidParameter
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

// u * ln(u) with the 0 ln 0 = 0 convention. Tiny negative round-off in u is
// clamped to zero so integrands built from survival differences stay finite
// at window endpoints.
double xlogx(double u) noexcept;

// Adaptive Gauss-Kronrod (G7,K15) integration of f over (a, b). b may be
// +infinity, in which case the substitution x = a + u/(1-u), u in [0,1), is
// applied before subdivision. Worst-interval-first refinement; deterministic:
// identical inputs produce bit-identical results.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureConfig& cfg = {});

// Same, but throws NotConverged when the subdivision budget is exhausted with
// the error estimate still above tolerance.
double integrate_checked(const std::function<double(double)>& f, double a, double b,
                         const QuadratureConfig& cfg = {});

}  // namespace crie
