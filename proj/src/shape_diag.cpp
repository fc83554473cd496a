#include "crie/shape_diag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "crie/errors.hpp"

namespace crie {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

MonotoneVerdict verdict_from_samples(const std::vector<double>& ys) {
    double scale = 0.0;
    for (double y : ys) {
        if (!std::isfinite(y)) throw NonFiniteSample("non-finite sample in monotonicity scan");
        scale = std::max(scale, std::fabs(y));
    }
    const double margin = 1e-9 * std::max(1.0, scale);

    double max_rise = 0.0, max_fall = 0.0;
    for (std::size_t i = 1; i < ys.size(); ++i) {
        const double d = ys[i] - ys[i - 1];
        max_rise = std::max(max_rise, d);
        max_fall = std::max(max_fall, -d);
    }

    MonotoneVerdict v;
    v.grid_size = static_cast<int>(ys.size());
    const bool rises = max_rise > margin;
    const bool falls = max_fall > margin;
    if (rises && falls) {
        v.direction = Direction::mixed;
        v.max_violation = std::min(max_rise, max_fall);
    } else if (rises) {
        v.direction = Direction::increasing;
        v.max_violation = max_fall;
    } else if (falls) {
        v.direction = Direction::decreasing;
        v.max_violation = max_rise;
    } else {
        v.direction = Direction::constant;
        v.max_violation = std::max(max_rise, max_fall);
    }
    return v;
}

}  // namespace

std::string to_string(Direction d) {
    switch (d) {
        case Direction::increasing: return "increasing";
        case Direction::decreasing: return "decreasing";
        case Direction::constant: return "constant";
        case Direction::mixed: return "mixed";
    }
    return "?";
}

std::string to_string(AgingClass c) {
    switch (c) {
        case AgingClass::ifr: return "IFR";
        case AgingClass::dfr: return "DFR";
        case AgingClass::constant_hazard: return "constant";
        case AgingClass::mixed: return "mixed";
    }
    return "?";
}

std::string to_string(EntropyTrend t) {
    switch (t) {
        case EntropyTrend::icrie: return "ICRIE";
        case EntropyTrend::dcrie: return "DCRIE";
        case EntropyTrend::inconclusive: return "inconclusive";
    }
    return "?";
}

std::string to_string(StochOrder o) {
    switch (o) {
        case StochOrder::st: return "st";
        case StochOrder::hr: return "hr";
        case StochOrder::lr: return "lr";
    }
    return "?";
}

std::string to_string(OrderOutcome o) {
    switch (o) {
        case OrderOutcome::certified: return "certified";
        case OrderOutcome::refuted: return "refuted";
        case OrderOutcome::inconclusive: return "inconclusive";
    }
    return "?";
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw InvalidParameter("linspace needs n >= 2");
    std::vector<double> xs(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        xs[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    xs.back() = hi;
    return xs;
}

MonotoneVerdict scan_monotone(const std::function<double(double)>& f, double lo, double hi, int n) {
    if (n < 3) throw InvalidParameter("monotone scan needs at least 3 points");
    if (!(lo < hi)) throw InvalidParameter("monotone scan needs lo < hi");
    std::vector<double> ys;
    ys.reserve(static_cast<std::size_t>(n));
    for (double x : linspace(lo, hi, n)) ys.push_back(f(x));
    return verdict_from_samples(ys);
}

AgingClass classify_aging(const DistPtr& dist, int grid_n) {
    const double lo = dist->quantile(0.01);
    const double hi = dist->quantile(0.99);
    const auto hazard = [&dist](double x) {
        const double s = dist->survival(x);
        return dist->pdf(x) / s;
    };
    const MonotoneVerdict v = scan_monotone(hazard, lo, hi, grid_n);
    switch (v.direction) {
        case Direction::increasing: return AgingClass::ifr;
        case Direction::decreasing: return AgingClass::dfr;
        case Direction::constant: return AgingClass::constant_hazard;
        case Direction::mixed: return AgingClass::mixed;
    }
    return AgingClass::mixed;
}

double trend_criterion_integral(const TruncatedView& v) {
    return integrate_checked(
        [&v](double x) {
            const double u = v.survival(x);
            return xlogx(u) + u;
        },
        v.tau1(), v.upper_limit(), v.quad());
}

TrendCertification certify_entropy_trend(const DistPtr& dist, double tau2,
                                         const std::vector<double>& tau1_grid,
                                         const QuadratureConfig& cfg) {
    if (tau1_grid.size() < 2) throw InvalidParameter("trend certification needs >= 2 grid points");
    if (!std::isfinite(tau2)) throw InvalidParameter("trend certification needs finite tau2");

    TrendCertification out;
    out.cells.reserve(tau1_grid.size());

    const auto entropy_at = [&](double t1) {
        return entropy(TruncatedView(dist, Window(t1, tau2), cfg));
    };

    std::vector<double> hs;
    hs.reserve(tau1_grid.size());
    int neg = 0, pos = 0;
    for (double t1 : tau1_grid) {
        const TruncatedView v(dist, Window(t1, tau2), cfg);
        TrendCell cell;
        cell.tau1 = t1;
        cell.entropy = entropy(v);
        cell.mean_residual = v.mean_residual();
        cell.gfr = v.gfr1(t1);

        // Central difference in tau1; skipped when the left probe would leave
        // the support interior (H is flat in tau1 below the support).
        const double width = std::min(tau2, dist->support_hi()) - t1;
        const double step = 1e-4 * width;
        if (width >= 1e-3 && t1 - step > dist->support_lo()) {
            cell.d_entropy_fd = (entropy_at(t1 + step) - entropy_at(t1 - step)) / (2.0 * step);
            const double rhs = cell.gfr * (cell.entropy - cell.mean_residual);
            cell.identity_rel_err =
                std::fabs(cell.d_entropy_fd - rhs) / std::max(1.0, std::fabs(rhs));
        } else {
            cell.d_entropy_fd = std::numeric_limits<double>::quiet_NaN();
            cell.identity_rel_err = 0.0;
        }
        out.max_identity_rel_err = std::max(out.max_identity_rel_err, cell.identity_rel_err);

        const double tol = 1e-9 * std::max(1.0, std::fabs(cell.entropy));
        if (cell.entropy - cell.mean_residual <= tol) ++neg;
        if (cell.entropy - cell.mean_residual >= -tol) ++pos;

        hs.push_back(cell.entropy);
        out.cells.push_back(cell);
    }

    out.entropy_scan = verdict_from_samples(hs);
    const auto n = static_cast<int>(tau1_grid.size());
    const bool all_neg = neg == n;
    const bool all_pos = pos == n;
    out.sign_uniform = all_neg || all_pos;

    if (out.entropy_scan.direction == Direction::decreasing && all_neg) {
        out.verdict = EntropyTrend::dcrie;
    } else if (out.entropy_scan.direction == Direction::increasing && all_pos) {
        out.verdict = EntropyTrend::icrie;
    } else {
        out.verdict = EntropyTrend::inconclusive;
    }
    return out;
}

OrderCertification check_order(const DistPtr& x, const DistPtr& y, StochOrder order, int grid_n) {
    if (grid_n < 3) throw InvalidParameter("order check needs at least 3 grid points");
    const double lo = std::max(x->quantile(0.005), y->quantile(0.005));
    const double hi = std::min(x->quantile(0.995), y->quantile(0.995));
    OrderCertification out;
    if (!(lo < hi)) return out;  // supports barely overlap: inconclusive

    const auto grid = linspace(lo, hi, grid_n);
    if (order == StochOrder::st) {
        // S_X <= S_Y pointwise; margin absorbs round-off.
        double worst = kInf;
        for (double t : grid) {
            const double sx = x->survival(t);
            const double sy = y->survival(t);
            if (!std::isfinite(sx) || !std::isfinite(sy)) {
                out.outcome = OrderOutcome::inconclusive;
                out.worst_point = t;
                return out;
            }
            const double m = sy - sx;
            if (m < worst) {
                worst = m;
                out.worst_point = t;
            }
        }
        out.worst_margin = worst;
        out.outcome = worst >= -1e-9 ? OrderOutcome::certified : OrderOutcome::refuted;
        return out;
    }

    // hr and lr orders: the defining ratio must be nondecreasing.
    std::vector<double> ratio;
    ratio.reserve(grid.size());
    for (double t : grid) {
        double num, den;
        if (order == StochOrder::hr) {
            num = y->survival(t);
            den = x->survival(t);
        } else {
            num = y->pdf(t);
            den = x->pdf(t);
        }
        if (!std::isfinite(num) || !(den > 0.0) || !std::isfinite(den)) {
            out.outcome = OrderOutcome::inconclusive;
            out.worst_point = t;
            return out;
        }
        ratio.push_back(num / den);
    }

    double worst = kInf;
    for (std::size_t i = 1; i < ratio.size(); ++i) {
        const double d = ratio[i] - ratio[i - 1];
        if (d < worst) {
            worst = d;
            out.worst_point = grid[i];
        }
    }
    const double scale = 1e-9 * std::max(1.0, *std::max_element(ratio.begin(), ratio.end()));
    out.worst_margin = worst;
    out.outcome = worst >= -scale ? OrderOutcome::certified : OrderOutcome::refuted;
    return out;
}

ClosureReport closure_probe(const DistPtr& dist, const Transform& t, double tau2,
                            const std::vector<double>& tau1_grid, const QuadratureConfig& cfg) {
    ClosureReport out;
    out.base = certify_entropy_trend(dist, tau2, tau1_grid, cfg);

    const DistPtr mapped =
        t.is_affine ? affine_of(dist, t.affine_a, t.affine_b) : transformed(dist, t);
    std::vector<double> mapped_grid;
    mapped_grid.reserve(tau1_grid.size());
    for (double t1 : tau1_grid) mapped_grid.push_back(t.phi(t1));
    out.transformed = certify_entropy_trend(mapped, t.phi(tau2), mapped_grid, cfg);

    const auto criterion_ok = [](EntropyTrend trend, double value) {
        const double tol = 1e-9 * std::max(1.0, std::fabs(value));
        if (trend == EntropyTrend::dcrie) return value >= -tol;
        if (trend == EntropyTrend::icrie) return value <= tol;
        return true;
    };

    out.criterion_consistent = true;
    for (double t1 : tau1_grid) {
        const double c = trend_criterion_integral(TruncatedView(dist, Window(t1, tau2), cfg));
        out.base_criterion.push_back(c);
        out.criterion_consistent =
            out.criterion_consistent && criterion_ok(out.base.verdict, c);
    }
    for (std::size_t i = 0; i < mapped_grid.size(); ++i) {
        const double c = trend_criterion_integral(
            TruncatedView(mapped, Window(mapped_grid[i], t.phi(tau2)), cfg));
        out.transformed_criterion.push_back(c);
        out.criterion_consistent =
            out.criterion_consistent && criterion_ok(out.transformed.verdict, c);
    }
    return out;
}

}  // namespace crie
