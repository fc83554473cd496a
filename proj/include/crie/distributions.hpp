#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "crie/quadrature.hpp"

namespace crie {

class Distribution;
using DistPtr = std::shared_ptr<const Distribution>;

// Continuous distribution on [support_lo, support_hi), support_hi possibly
// +infinity. survival() clamps to 1 below the support and 0 above it.
// Implementations are immutable after construction and safe to share across
// threads.
class Distribution {
  public:
    virtual ~Distribution() = default;

    virtual double survival(double x) const = 0;
    virtual double cdf(double x) const { return 1.0 - survival(x); }
    virtual double pdf(double x) const = 0;

    // Generalized inverse of the cdf for q in (0,1). Closed form where the
    // family allows it, monotone bisection otherwise.
    virtual double quantile(double q) const;

    virtual double support_lo() const = 0;
    virtual double support_hi() const = 0;

    // +infinity when the corresponding moment diverges.
    virtual double mean() const;
    virtual double second_moment() const;

    // int_x^hi survival(t) dt. Closed forms for the parametric families keep
    // the re-anchored mean residual lifetime cheap; the fallback integrates.
    virtual double survival_tail_integral(double x) const;

    // Compact text form; round-trips through parse_distribution().
    virtual std::string describe() const = 0;

  protected:
    double quantile_by_bisection(double q) const;
};

DistPtr uniform(double b);
DistPtr exponential(double rate);
DistPtr power_dist(double shape, double scale);
DistPtr beta_c(double shape);
DistPtr lomax(double shape, double scale);

// Equilibrium (stationary-renewal) distribution: density survival/mean.
// Throws InfiniteMean when the base mean diverges.
DistPtr equilibrium_of(DistPtr base);

// Proportional-odds tilt: survival p*S/(1 - (1-p)*S), p in (0,1).
DistPtr tilt_pof(DistPtr base, double p);

// Y = a*X + b with a > 0, b >= 0.
DistPtr affine_of(DistPtr base, double a, double b);

// Strictly increasing differentiable map with its derivative and inverse.
struct Transform {
    std::function<double(double)> phi;
    std::function<double(double)> dphi;
    std::function<double(double)> inv;
    std::string name;
    bool is_affine = false;
    double affine_a = 1.0, affine_b = 0.0;

    static Transform affine(double a, double b);
    static Transform square();  // x^2: increasing convex on [0, inf)
    static Transform identity();
};

// Y = phi(X) for a general increasing transform. Monotonicity is probed on a
// quantile grid at construction; throws NonMonotoneTransform on failure.
DistPtr transformed(DistPtr base, Transform t);

// Right-continuous step survival of a sample; quantile is the
// left-continuous generalized inverse.
DistPtr empirical(std::vector<double> values);

// Parses the compact text forms: exp:0.5, uniform:1, power:0.1,0.9,
// betac:0.2, lomax:2,1, equilibrium(exp:1), tilt(exp:1;0.5),
// affine(exp:1;2,3). Nesting is allowed.
DistPtr parse_distribution(std::string_view text);

}  // namespace crie
