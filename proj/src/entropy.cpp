#include "crie/entropy.hpp"

#include <cmath>
#include <limits>

#include "crie/errors.hpp"

namespace crie {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double crie_definition(const TruncatedView& v) {
    return -integrate_checked([&v](double x) { return xlogx(v.survival(x)); }, v.tau1(),
                              v.upper_limit(), v.quad());
}

double crie_via_mrl(const TruncatedView& v) {
    const auto integrand = [&v](double x) {
        const double pdf = v.pdf(x);
        if (pdf <= 0.0) return 0.0;
        // In a machine-precision neighbourhood of the window end the
        // re-anchored view is degenerate; m1(x, tau2) -> (tau2 - x)/2 there,
        // and the whole product vanishes in the far tail.
        if (v.dist()->survival(x) - v.s2() < 1e-14) {
            const double up = v.upper_limit();
            return std::isfinite(up) ? 0.5 * (up - x) * pdf : 0.0;
        }
        return v.mean_residual_at(x) * pdf;
    };
    return integrate_checked(integrand, v.tau1(), v.upper_limit(), v.quad());
}

double crie_via_covariance(const TruncatedView& v) {
    // The two conditional moments have closed forms up to one quadrature:
    //   E[ln(S(X)-s2) | window]   = ln(s1-s2) - 1
    //   E[X ln(S(X)-s2) | window] = tau1 ln(s1-s2) + I/(s1-s2) - mu,
    // with I = int (S(x)-s2) ln(S(x)-s2) dx.
    const double mass = v.s1() - v.s2();
    const double log_mass = std::log(mass);
    const double mu = v.cond_mean();
    const double i = integrate_checked(
        [&v](double x) { return xlogx(v.dist()->survival(x) - v.s2()); }, v.tau1(),
        v.upper_limit(), v.quad());
    const double e_log = log_mass - 1.0;
    const double e_xlog = v.tau1() * log_mass + i / mass - mu;
    return -e_xlog + mu * e_log;
}

double crie_via_relevation(const TruncatedView& v) {
    const double rel = integrate_checked(
        [&v](double x) { return v.relevation_survival(x); }, v.tau1(), v.upper_limit(), v.quad());
    return rel - v.mean_residual();
}

// Local tail exponent of the survival function: log2 S(x)/S(2x) probed at
// large x. Used to reject divergent tail integrals before integrating.
double tail_exponent(const Distribution& d) {
    double x = std::max(1.0, d.support_lo() + 1.0);
    double p = kInf;
    for (int k = 0; k < 40; ++k) {
        const double s1 = d.survival(x);
        const double s2 = d.survival(2.0 * x);
        if (!(s1 > 1e-280) || !(s2 > 0.0)) break;
        p = std::log2(s1 / s2);
        x *= 2.0;
    }
    return p;
}

}  // namespace

CrieMethod parse_crie_method(std::string_view name) {
    if (name == "definition") return CrieMethod::definition;
    if (name == "mrl") return CrieMethod::via_mrl;
    if (name == "covariance") return CrieMethod::via_covariance;
    if (name == "relevation") return CrieMethod::via_relevation;
    throw ParseError("unknown crie method '" + std::string(name) + "'");
}

std::string to_string(CrieMethod m) {
    switch (m) {
        case CrieMethod::definition: return "definition";
        case CrieMethod::via_mrl: return "mrl";
        case CrieMethod::via_covariance: return "covariance";
        case CrieMethod::via_relevation: return "relevation";
    }
    return "?";
}

double entropy(const TruncatedView& v, CrieMethod method) {
    switch (method) {
        case CrieMethod::definition: return crie_definition(v);
        case CrieMethod::via_mrl: return crie_via_mrl(v);
        case CrieMethod::via_covariance: return crie_via_covariance(v);
        case CrieMethod::via_relevation: return crie_via_relevation(v);
    }
    throw InvalidParameter("bad CrieMethod");
}

double interval_shannon(const TruncatedView& v) {
    if (!v.window().finite()) throw InvalidWindow("interval entropy needs a finite window");
    return -integrate_checked([&v](double x) { return xlogx(v.pdf(x)); }, v.tau1(),
                              v.upper_limit(), v.quad());
}

double past_interval_entropy(const TruncatedView& v) {
    if (!v.window().finite()) throw InvalidWindow("past interval entropy needs a finite window");
    return -integrate_checked([&v](double x) { return xlogx(v.cdf(x)); }, v.tau1(), v.tau2(),
                              v.quad());
}

double modified_crie(const TruncatedView& v) {
    if (!v.window().finite()) throw InvalidWindow("modified crie needs a finite window");
    const double mass = v.s1() - v.s2();
    return -integrate_checked(
        [&v, mass](double x) { return xlogx(v.dist()->survival(x) / mass); }, v.tau1(), v.tau2(),
        v.quad());
}

double cre(const DistPtr& dist, const QuadratureConfig& cfg) {
    return dynamic_cre(dist, dist->support_lo(), cfg);
}

double dynamic_cre(const DistPtr& dist, double t, const QuadratureConfig& cfg) {
    if (std::isinf(dist->support_hi()) && !std::isfinite(dist->mean())) {
        throw InfiniteResult("tail of " + dist->describe() + " makes the entropy integral diverge");
    }
    const TruncatedView v(dist, Window(t, kInf), cfg);
    return entropy(v, CrieMethod::definition);
}

double crj(const DistPtr& dist, const QuadratureConfig& cfg) {
    if (std::isinf(dist->support_hi()) && tail_exponent(*dist) <= 0.5 + 1e-9) {
        throw InfiniteResult("squared survival of " + dist->describe() + " is not integrable");
    }
    const double i = integrate_checked(
        [&dist](double x) {
            const double s = dist->survival(x);
            return s * s;
        },
        dist->support_lo(), dist->support_hi(), cfg);
    return -0.5 * i;
}

double crikl(const TruncatedView& vx, const TruncatedView& vy) {
    if (vx.tau1() != vy.tau1() || vx.tau2() != vy.tau2()) {
        throw InvalidWindow("crikl requires the same window on both views");
    }
    // Beyond X's effective support the integrand vanishes; Y running out of
    // mass earlier than that is caught pointwise below.
    const double upper = vx.upper_limit();
    const auto integrand = [&vx, &vy](double x) {
        const double ux = vx.survival(x);
        if (!(ux > 0.0)) return 0.0;
        const double uy = vy.survival(x);
        if (!(uy > 0.0)) {
            throw DivergentDivergence("truncated survival of the comparison variable vanishes at x=" +
                                      std::to_string(x) + " inside the window");
        }
        return ux * (std::log(ux) - std::log(uy));
    };
    const double i = integrate_checked(integrand, vx.tau1(), upper, vx.quad());
    return i - (vx.mean_residual() - vy.mean_residual());
}

double transform_crie(const DistPtr& base, const Transform& phi, const Window& y_window,
                      const QuadratureConfig& cfg) {
    const double b1 = phi.inv(y_window.tau1);
    const double b2 = y_window.finite() ? phi.inv(y_window.tau2) : kInf;

    // Probe monotonicity on the base-scale window before integrating.
    const double probe_hi = std::isfinite(b2) ? b2 : b1 + std::max(1.0, std::fabs(b1));
    for (int i = 0; i <= 32; ++i) {
        const double x = b1 + (probe_hi - b1) * static_cast<double>(i) / 32.0;
        if (!(phi.dphi(x) > 0.0)) {
            throw NonMonotoneTransform("transform derivative not strictly positive at x=" +
                                       std::to_string(x));
        }
    }

    const TruncatedView v(base, Window(b1, b2), cfg);
    return -integrate_checked(
        [&v, &phi](double x) { return phi.dphi(x) * xlogx(v.survival(x)); }, v.tau1(),
        v.upper_limit(), cfg);
}

}  // namespace crie
