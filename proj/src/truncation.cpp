#include "crie/truncation.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "crie/errors.hpp"

namespace crie {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassFloor = 1e-14;  // below this, the window is degenerate

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

Window::Window(double t1, double t2) : tau1(t1), tau2(t2) {
    if (!std::isfinite(t1)) throw InvalidWindow("tau1 must be finite");
    if (std::isnan(t2) || !(t1 < t2)) {
        throw InvalidWindow("window requires tau1 < tau2 (got " + fmt(t1) + ", " + fmt(t2) + ")");
    }
}

Window Window::parse(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("window '" + std::string(text) + "' must look like '3:10' or '3:inf'");
    }
    const std::string lo(text.substr(0, colon));
    const std::string hi(text.substr(colon + 1));
    try {
        std::size_t p1 = 0, p2 = 0;
        const double t1 = std::stod(lo, &p1);
        double t2;
        if (hi == "inf" || hi == "+inf") {
            t2 = kInf;
            p2 = hi.size();
        } else {
            t2 = std::stod(hi, &p2);
        }
        if (p1 != lo.size() || p2 != hi.size()) throw std::invalid_argument("trailing junk");
        return Window(t1, t2);
    } catch (const InvalidWindow&) {
        throw;
    } catch (const std::exception&) {
        throw ParseError("window '" + std::string(text) + "' must look like '3:10' or '3:inf'");
    }
}

bool Window::finite() const { return std::isfinite(tau2); }
double Window::width() const { return tau2 - tau1; }
std::string Window::describe() const {
    return fmt(tau1) + ":" + (finite() ? fmt(tau2) : std::string("inf"));
}

TruncatedView::TruncatedView(DistPtr dist, Window window, QuadratureConfig quad)
    : dist_(std::move(dist)), window_(window), quad_(quad) {
    quad_.validate();
    s1_ = dist_->survival(window_.tau1);
    s2_ = window_.tau2 >= dist_->support_hi() ? 0.0 : dist_->survival(window_.tau2);
    if (!(s1_ - s2_ >= kMassFloor)) {
        throw DegenerateWindow("window " + window_.describe() + " carries no mass under " +
                               dist_->describe());
    }
    upper_ = std::min(window_.tau2, dist_->support_hi());
}

void TruncatedView::check_in_window(double x) const {
    if (std::isnan(x) || x < window_.tau1 || x > window_.tau2) {
        throw OutOfWindow("x=" + fmt(x) + " outside window " + window_.describe());
    }
}

double TruncatedView::survival(double x) const {
    check_in_window(x);
    const double u = (dist_->survival(x) - s2_) / (s1_ - s2_);
    return std::min(1.0, std::max(0.0, u));
}

double TruncatedView::cdf(double x) const { return 1.0 - survival(x); }

double TruncatedView::pdf(double x) const {
    check_in_window(x);
    return dist_->pdf(x) / (s1_ - s2_);
}

double TruncatedView::gfr1(double x) const {
    if (std::isnan(x) || x < window_.tau1 || x >= window_.tau2) {
        throw OutOfWindow("gfr1 needs x in [tau1, tau2)");
    }
    const double denom = dist_->survival(x) - s2_;
    if (!(denom >= kMassFloor)) {
        throw DegenerateWindow("survival mass vanishes at x=" + fmt(x));
    }
    return dist_->pdf(x) / denom;
}

double TruncatedView::gfr2(double x) const {
    if (std::isnan(x) || x < window_.tau1 || x >= window_.tau2) {
        throw OutOfWindow("gfr2 needs x in [tau1, tau2)");
    }
    const double denom = dist_->survival(x) - s2_;
    if (!(denom >= kMassFloor)) {
        throw DegenerateWindow("survival mass vanishes at x=" + fmt(x));
    }
    const double f2 = window_.finite() ? dist_->pdf(window_.tau2) : 0.0;
    return f2 / denom;
}

double TruncatedView::cum_hazard(double x) const {
    if (std::isnan(x) || x < window_.tau1 || x >= window_.tau2) {
        throw OutOfWindow("cum_hazard needs x in [tau1, tau2)");
    }
    const double u = (dist_->survival(x) - s2_) / (s1_ - s2_);
    return u > 0.0 ? -std::log(std::min(1.0, u)) : kInf;
}

double TruncatedView::mean_residual() const {
    return integrate_checked([this](double x) { return survival(x); }, window_.tau1, upper_, quad_);
}

double TruncatedView::mean_past() const {
    if (!window_.finite()) throw InfiniteResult("mean past lifetime needs a finite window");
    return integrate_checked([this](double x) { return cdf(x); }, window_.tau1, window_.tau2, quad_);
}

double TruncatedView::cond_mean() const { return window_.tau1 + mean_residual(); }

double TruncatedView::mean_residual_at(double x) const {
    if (std::isnan(x) || x < window_.tau1 || x >= window_.tau2) {
        throw OutOfWindow("mean_residual_at needs x in [tau1, tau2)");
    }
    const double denom = dist_->survival(x) - s2_;
    if (!(denom >= kMassFloor)) {
        throw DegenerateWindow("survival mass vanishes at x=" + fmt(x));
    }
    const double hi = dist_->support_hi();
    double tail;
    if (window_.finite()) {
        const double tx = dist_->survival_tail_integral(x);
        if (std::isfinite(tx)) {
            tail = tx - (window_.tau2 >= hi ? 0.0 : dist_->survival_tail_integral(window_.tau2)) -
                   (window_.tau2 - x) * s2_;
        } else {
            // Divergent tails (heavy equilibrium laws): the windowed integral
            // is still finite, take it directly.
            tail = integrate_checked([this](double t) { return dist_->survival(t); }, x,
                                     std::min(window_.tau2, hi), quad_) -
                   (window_.tau2 - x) * s2_;
        }
    } else {
        tail = dist_->survival_tail_integral(x);
        if (!std::isfinite(tail)) {
            throw InfiniteResult("mean residual life diverges beyond x=" + fmt(x));
        }
    }
    if (std::isnan(tail)) throw NotConverged("mean residual tail integral did not resolve");
    return std::max(0.0, tail) / denom;
}

double TruncatedView::cond_expect(const std::function<double(double)>& phi,
                                  const std::function<double(double)>& dphi) const {
    const double t1 = window_.tau1;
    return phi(t1) +
           integrate_checked([this, &dphi](double x) { return dphi(x) * survival(x); }, t1, upper_,
                             quad_);
}

double TruncatedView::cond_second_moment_about(double c) const {
    return cond_expect([c](double x) { return (x - c) * (x - c); },
                       [c](double x) { return 2.0 * (x - c); });
}

double TruncatedView::cond_var() const {
    const double mu = cond_mean();
    return std::max(0.0, cond_second_moment_about(mu));
}

double TruncatedView::relevation_survival(double x) const {
    const double u = survival(x);
    return u - xlogx(u);  // u * (1 + Lambda(x)) with Lambda = -ln u
}

double TruncatedView::mean_abs_difference() const {
    return 2.0 * integrate_checked(
                     [this](double x) {
                         const double u = survival(x);
                         return u * (1.0 - u);
                     },
                     window_.tau1, upper_, quad_);
}

TruncatedView TruncatedView::with_config(QuadratureConfig cfg) const {
    return TruncatedView(dist_, window_, cfg);
}

TruncatedView TruncatedView::reanchored(double tau1) const {
    return TruncatedView(dist_, Window(tau1, window_.tau2), quad_);
}

double odds_ratio_g(const TruncatedView& vx, const TruncatedView& vy, double x) {
    if (vx.tau1() != vy.tau1() || vx.tau2() != vy.tau2()) {
        throw InvalidWindow("odds_ratio_g requires the same window on both views");
    }
    if (std::isnan(x) || x < vx.tau1() || x >= vx.tau2()) {
        throw OutOfWindow("odds_ratio_g needs x in [tau1, tau2)");
    }
    const double ux = vx.survival(x);
    if (!(ux > 0.0)) throw DegenerateWindow("denominator truncated survival vanished");
    return vy.survival(x) / ux;
}

}  // namespace crie
