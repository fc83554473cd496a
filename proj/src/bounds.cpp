#include "crie/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "crie/errors.hpp"
#include "crie/parallel.hpp"

namespace crie {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

BoundReport make_report(std::string id, BoundKind kind, double lhs, double rhs) {
    BoundReport r;
    r.id = std::move(id);
    r.kind = kind;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = kind == BoundKind::upper ? rhs - lhs : lhs - rhs;
    r.holds = r.slack >= -kSlackTolerance;
    return r;
}

BoundReport inapplicable(std::string id, BoundKind kind, std::string why) {
    BoundReport r;
    r.id = std::move(id);
    r.kind = kind;
    r.hypotheses_met = false;
    r.note = std::move(why);
    r.lhs = r.rhs = r.slack = std::numeric_limits<double>::quiet_NaN();
    return r;
}

// Scan of the re-anchored GFR x -> h1(x, tau2) over [tau1, tau2).
MonotoneVerdict gfr_scan(const TruncatedView& v, int n = 257) {
    const double hi = v.upper_limit();
    if (std::isinf(hi)) {
        const double cap = std::max(v.dist()->quantile(0.995), v.tau1() + 1.0);
        return scan_monotone([&v](double x) { return v.gfr1(x); }, v.tau1(), cap, n);
    }
    const double span = hi - v.tau1();
    return scan_monotone([&v](double x) { return v.gfr1(x); }, v.tau1(),
                         hi - 1e-6 * span, n);
}

// Scan of x -> m1(x, tau2) over [tau1, tau2).
MonotoneVerdict mrl_scan(const TruncatedView& v, int n = 257) {
    const double hi = v.upper_limit();
    if (std::isinf(hi)) {
        // Unbounded window: scan the mean residual life on a quantile range.
        const double lo = v.tau1();
        const double cap = v.dist()->quantile(0.995);
        return scan_monotone([&v](double x) { return v.mean_residual_at(x); }, lo,
                             std::max(cap, lo + 1.0), n);
    }
    const double span = hi - v.tau1();
    return scan_monotone([&v](double x) { return v.mean_residual_at(x); }, v.tau1(),
                         hi - 1e-6 * span, n);
}

}  // namespace

std::string BoundReport::verdict_text() const {
    if (!hypotheses_met) return "not applicable";
    return holds ? "holds" : "violated";
}

BoundReport bound_cond_sd(const TruncatedView& v) {
    const double var = v.cond_var();
    if (!std::isfinite(var)) {
        return inapplicable("cond_sd_upper", BoundKind::upper, "conditional variance diverges");
    }
    auto r = make_report("cond_sd_upper", BoundKind::upper, entropy(v), std::sqrt(var));
    r.note = "H <= sqrt(Var(X|window))";
    return r;
}

BoundReport bound_abs_log_moment(const TruncatedView& v) {
    const double mu = v.cond_mean();
    const double moment = integrate_checked(
        [&v, mu](double x) { return xlogx(std::fabs(x - mu)) * v.pdf(x); }, v.tau1(),
        v.upper_limit(), v.quad());
    const double rhs = 2.0 * moment + 4.0 * std::exp(-1.0) / std::sqrt(v.s1() - v.s2());
    auto r = make_report("abs_log_moment_upper", BoundKind::upper, entropy(v), rhs);
    r.note = "H <= 2 E[|X-mu| ln|X-mu|] + 4/(e sqrt(mass))";
    return r;
}

BoundReport bound_logsum(const TruncatedView& v) {
    if (!v.window().finite()) {
        return inapplicable("logsum_upper", BoundKind::upper, "needs a finite window");
    }
    const double m1 = v.mean_residual();
    const double rhs = m1 * std::log(v.window().width() / m1);
    auto r = make_report("logsum_upper", BoundKind::upper, entropy(v), rhs);
    r.note = "H <= m1 ln(width/m1)";
    return r;
}

std::vector<BoundReport> bound_survival_product(const TruncatedView& v) {
    std::vector<BoundReport> out;
    const double h = entropy(v);
    const double lower = 0.5 * v.mean_abs_difference();  // int u(1-u)
    auto lo = make_report("survival_product_lower", BoundKind::lower, h, lower);
    lo.note = "H >= int u(1-u)";
    out.push_back(lo);

    if (v.window().finite()) {
        auto up = make_report("mean_past_upper", BoundKind::upper, h, v.mean_past());
        up.note = "H <= m2";
        out.push_back(up);
    } else {
        out.push_back(
            inapplicable("mean_past_upper", BoundKind::upper, "m2 diverges on unbounded windows"));
    }
    return out;
}

BoundReport bound_weighted_mrl(const TruncatedView& v) {
    const double mass = v.s1() - v.s2();
    const auto integrand = [&v](double x) {
        const double w = v.dist()->survival(x) - v.s2();
        if (w < 1e-14) return 0.0;
        return w * v.mean_residual_at(x) * v.dist()->pdf(x);
    };
    const double rhs =
        integrate_checked(integrand, v.tau1(), v.upper_limit(), v.quad()) / (mass * mass);
    auto r = make_report("weighted_mrl_lower", BoundKind::lower, entropy(v), rhs);
    r.note = "H >= E[(S(X)-s2) m1(X,tau2)]/mass";
    return r;
}

double shannon_lower_constant() {
    static const double c = [] {
        const QuadratureConfig cfg{1e-12, 1e-12, 2000};
        return std::exp(integrate_checked(
            [](double u) { return std::log(u * std::fabs(std::log(u))); }, 0.0, 1.0, cfg));
    }();
    return c;
}

BoundReport bound_shannon_exp(const TruncatedView& v) {
    if (!v.window().finite()) {
        return inapplicable("shannon_exp_lower", BoundKind::lower, "needs a finite window");
    }
    const double rhs = shannon_lower_constant() * std::exp(interval_shannon(v));
    auto r = make_report("shannon_exp_lower", BoundKind::lower, entropy(v), rhs);
    r.note = "H >= C exp(S), C ~ 0.2065";
    return r;
}

std::vector<BoundReport> bound_abs_difference(const TruncatedView& v) {
    std::vector<BoundReport> out;
    const double mu = v.cond_mean();
    const double mean_dev = integrate_checked(
        [&v, mu](double x) { return std::fabs(x - mu) * v.pdf(x); }, v.tau1(), v.upper_limit(),
        v.quad());
    const double pair_diff = v.mean_abs_difference();

    auto a = make_report("abs_diff_jensen_lower", BoundKind::lower, pair_diff, mean_dev);
    a.note = "E|X-Y| >= E|X-mu|";
    out.push_back(a);

    auto b = make_report("abs_diff_entropy_upper", BoundKind::upper, pair_diff, 2.0 * entropy(v));
    b.note = "E|X-Y| <= 2H";
    out.push_back(b);
    return out;
}

BoundReport bound_square_survival(const TruncatedView& v) {
    const MonotoneVerdict scan = gfr_scan(v);
    if (scan.direction != Direction::decreasing && scan.direction != Direction::constant) {
        return inapplicable("square_survival_lower", BoundKind::lower,
                            "re-anchored GFR scan: " + to_string(scan.direction));
    }
    const double rhs = integrate_checked(
        [&v](double x) {
            const double u = v.survival(x);
            return u * u;
        },
        v.tau1(), v.upper_limit(), v.quad());
    auto r = make_report("square_survival_lower", BoundKind::lower, entropy(v), rhs);
    r.note = "GFR nonincreasing: H >= int u^2";
    return r;
}

std::vector<BoundReport> bound_gfr_monotone(const TruncatedView& v) {
    const MonotoneVerdict scan = gfr_scan(v);
    // A flat GFR satisfies both chains with equality; report it on the
    // nonincreasing branch.
    const bool decreasing =
        scan.direction == Direction::decreasing || scan.direction == Direction::constant;
    const bool increasing = scan.direction == Direction::increasing;
    if (!decreasing && !increasing) {
        return {inapplicable("gfr_monotone_mrl", BoundKind::lower,
                             "re-anchored GFR scan: " + to_string(scan.direction)),
                inapplicable("gfr_monotone_moment", BoundKind::upper,
                             "re-anchored GFR scan: " + to_string(scan.direction))};
    }

    const double h = entropy(v);
    const double m1 = v.mean_residual();
    const double cap =
        0.5 * v.gfr1(v.tau1()) * v.cond_second_moment_about(v.tau1());

    // Decreasing GFR: m1 <= H <= cap; increasing reverses both.
    std::vector<BoundReport> out;
    auto a = make_report("gfr_monotone_mrl", decreasing ? BoundKind::lower : BoundKind::upper, h,
                         m1);
    a.note = decreasing ? "GFR decreasing: H >= m1" : "GFR increasing: H <= m1";
    out.push_back(a);
    auto b = make_report("gfr_monotone_moment", decreasing ? BoundKind::upper : BoundKind::lower,
                         h, cap);
    b.note = decreasing ? "GFR decreasing: H <= h1/2 E[(X-tau1)^2]"
                        : "GFR increasing: H >= h1/2 E[(X-tau1)^2]";
    out.push_back(b);
    return out;
}

std::vector<BoundReport> bound_lr_pair(const TruncatedView& vx, const TruncatedView& vy) {
    const OrderCertification cert = check_order(vx.dist(), vy.dist(), StochOrder::lr);
    if (cert.outcome != OrderOutcome::certified) {
        const std::string why =
            "lr order " + to_string(cert.outcome) + " at x=" + std::to_string(cert.worst_point);
        return {inapplicable("lr_order_upper", BoundKind::upper, why),
                inapplicable("lr_order_gap_upper", BoundKind::upper, why)};
    }
    const double hx = entropy(vx);
    const double hy = entropy(vy);
    const double m1x = vx.mean_residual();
    const double m1y = vy.mean_residual();

    std::vector<BoundReport> out;
    auto a = make_report("lr_order_upper", BoundKind::upper, hx,
                         hy - m1x * std::log(m1x / m1y));
    a.note = "X <=lr Y: H_X <= H_Y - m1_X ln(m1_X/m1_Y)";
    out.push_back(a);
    auto b = make_report("lr_order_gap_upper", BoundKind::upper, hx, hy - (m1x - m1y));
    b.note = "X <=lr Y: H_X <= H_Y - (m1_X - m1_Y)";
    out.push_back(b);
    return out;
}

BoundReport bound_hr_dynamic(const DistPtr& x, const DistPtr& y, double t,
                             const QuadratureConfig& cfg) {
    const OrderCertification cert = check_order(x, y, StochOrder::hr);
    if (cert.outcome != OrderOutcome::certified) {
        return inapplicable("hr_order_dynamic_upper", BoundKind::upper,
                            "hr order " + to_string(cert.outcome) + " at x=" +
                                std::to_string(cert.worst_point));
    }
    const TruncatedView vx(x, Window(t, kInf), cfg);
    const TruncatedView vy(y, Window(t, kInf), cfg);
    const double mx = vx.mean_residual();
    const double my = vy.mean_residual();
    auto r = make_report("hr_order_dynamic_upper", BoundKind::upper, dynamic_cre(x, t, cfg),
                         dynamic_cre(y, t, cfg) - mx * std::log(mx / my));
    r.note = "X <=hr Y: E_X(t) <= E_Y(t) - m_X ln(m_X/m_Y)";
    return r;
}

BoundReport bound_residual_second_moment(const DistPtr& dist, double t,
                                         const QuadratureConfig& cfg) {
    const TruncatedView v(dist, Window(t, kInf), cfg);
    const double m = v.mean_residual();
    const double second = v.cond_second_moment_about(t);
    if (!std::isfinite(second)) {
        return inapplicable("residual_second_moment_upper", BoundKind::upper,
                            "residual second moment diverges");
    }
    // E(X;t) <= E[(X-t)^2 | X>t] / (2 m); sharp for exponentials at every
    // rate, which also pins the power of m in the denominator.
    auto r = make_report("residual_second_moment_upper", BoundKind::upper,
                         dynamic_cre(dist, t, cfg), second / (2.0 * m));
    r.note = "E(X;t) <= E[(X-t)^2|X>t]/(2 m)";
    return r;
}

// The sound dominance rule: when the re-anchored GFR of A sits below that of
// B across the window and m1_A(x, tau2) is nondecreasing, H_B <= H_A. The
// published two-case comparison also asserts the mirrored hypothesis set
// (dominated GFR plus decreasing m1 on the dominating side); that variant
// fails numerically -- the equilibrium of a uniform violates it on narrow
// right-shifted windows -- so only the orientation above is certified, tried
// with both role assignments.
BoundReport dominance_report(std::string id, const TruncatedView& vx, const TruncatedView& vy,
                             const std::string& lx, const std::string& ly) {
    if (vx.tau1() != vy.tau1() || vx.tau2() != vy.tau2()) {
        throw InvalidWindow("gfr dominance comparison needs a common window");
    }
    const double hi = std::min(vx.upper_limit(), vy.upper_limit());
    const auto grid =
        linspace(vx.tau1(),
                 std::isinf(hi) ? std::max(vx.dist()->quantile(0.995), vx.tau1() + 1.0)
                                : hi - 1e-6 * (hi - vx.tau1()),
                 257);
    double min_diff = kInf, max_diff = -kInf;
    for (double x : grid) {
        const double d = vy.gfr1(x) - vx.gfr1(x);
        min_diff = std::min(min_diff, d);
        max_diff = std::max(max_diff, d);
    }
    const bool x_below_y = min_diff >= -1e-9;  // h_X <= h_Y pointwise
    const bool y_below_x = max_diff <= 1e-9;

    const auto nondecreasing = [](const MonotoneVerdict& m) {
        return m.direction == Direction::increasing || m.direction == Direction::constant;
    };

    if (x_below_y && nondecreasing(mrl_scan(vx))) {
        auto r = make_report(std::move(id), BoundKind::upper, entropy(vy), entropy(vx));
        r.note = "h_" + lx + " <= h_" + ly + " and m1_" + lx + " nondecreasing: H_" + ly +
                 " <= H_" + lx;
        return r;
    }
    if (y_below_x && nondecreasing(mrl_scan(vy))) {
        auto r = make_report(std::move(id), BoundKind::upper, entropy(vx), entropy(vy));
        r.note = "h_" + ly + " <= h_" + lx + " and m1_" + ly + " nondecreasing: H_" + lx +
                 " <= H_" + ly;
        return r;
    }
    return inapplicable(std::move(id), BoundKind::upper,
                        "no certified dominance with a nondecreasing dominated-side m1");
}

BoundReport bound_gfr_dominance(const TruncatedView& vx, const TruncatedView& vy) {
    return dominance_report("gfr_dominance_cmp", vx, vy, "X", "Y");
}

BoundReport bound_equilibrium_cmp(const TruncatedView& v) {
    if (!std::isfinite(v.dist()->mean())) {
        return inapplicable("equilibrium_cmp", BoundKind::upper, "base mean diverges");
    }
    const DistPtr eq = equilibrium_of(v.dist());
    const TruncatedView ve(eq, v.window(), v.quad());
    return dominance_report("equilibrium_cmp", v, ve, "X", "Xe");
}

BoundReport bound_tilt_cmp(const TruncatedView& v, double p) {
    const DistPtr tilted = tilt_pof(v.dist(), p);
    const TruncatedView vt(tilted, v.window(), v.quad());
    return dominance_report("tilt_cmp", v, vt, "X", "Xp");
}

std::vector<BoundReport> bound_trend(const TruncatedView& v,
                                     const TrendCertification& certification) {
    std::vector<BoundReport> out;
    if (certification.verdict == EntropyTrend::inconclusive) {
        out.push_back(inapplicable("trend_mrl_bound", BoundKind::upper,
                                   "trend certification inconclusive"));
        out.push_back(inapplicable("trend_gfr_reciprocal", BoundKind::lower,
                                   "trend certification inconclusive"));
        return out;
    }

    const bool dcrie = certification.verdict == EntropyTrend::dcrie;
    const double h = entropy(v);
    const double m1 = v.mean_residual();
    auto a = make_report("trend_mrl_bound", dcrie ? BoundKind::upper : BoundKind::lower, h, m1);
    a.note = dcrie ? "DCRIE: H <= m1" : "ICRIE: H >= m1";
    out.push_back(a);

    // The reciprocal-GFR side of the published chain fails closed-form checks
    // in its DCRIE orientation (uniform: H = w/4 < w = 1/h1), so it is
    // recorded for inspection, never asserted.
    auto b = make_report("trend_gfr_reciprocal", dcrie ? BoundKind::lower : BoundKind::upper, h,
                         1.0 / v.gfr1(v.tau1()));
    b.hypotheses_met = false;
    b.note = std::string(dcrie ? "DCRIE" : "ICRIE") +
             ": H vs 1/h1 recorded only; published orientation contradicts closed forms";
    out.push_back(b);
    return out;
}

std::pair<double, double> lower_bound_constants(const DistPtr& dist, const QuadratureConfig& cfg) {
    const double lo = dist->support_lo();
    const double hi = dist->support_hi();
    const QuadratureResult lc = integrate(
        [&dist](double x) {
            const double s = dist->survival(x);
            return s * s;
        },
        lo, hi, cfg);
    const QuadratureResult lr = integrate(
        [&dist](double x) { return dist->survival(x) * dist->cdf(x); }, lo, hi, cfg);
    if (!lc.converged || !lr.converged) {
        throw InfiniteResult("lower-bound integrals do not converge for " + dist->describe());
    }
    return {lc.value, lr.value};
}

std::vector<BoundReport> audit_window(const DistPtr& dist, const Window& w,
                                      const QuadratureConfig& cfg) {
    const TruncatedView v(dist, w, cfg);
    std::vector<BoundReport> out;

    const auto guarded = [&out](const char* id, BoundKind kind, auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            out.push_back(inapplicable(id, kind, e.what()));
        }
    };

    guarded("cond_sd_upper", BoundKind::upper, [&] { out.push_back(bound_cond_sd(v)); });
    guarded("abs_log_moment_upper", BoundKind::upper,
            [&] { out.push_back(bound_abs_log_moment(v)); });
    guarded("logsum_upper", BoundKind::upper, [&] { out.push_back(bound_logsum(v)); });
    guarded("survival_product_lower", BoundKind::lower, [&] {
        for (auto& r : bound_survival_product(v)) out.push_back(std::move(r));
    });
    guarded("weighted_mrl_lower", BoundKind::lower,
            [&] { out.push_back(bound_weighted_mrl(v)); });
    guarded("shannon_exp_lower", BoundKind::lower, [&] { out.push_back(bound_shannon_exp(v)); });
    guarded("abs_diff_entropy_upper", BoundKind::upper, [&] {
        for (auto& r : bound_abs_difference(v)) out.push_back(std::move(r));
    });
    guarded("square_survival_lower", BoundKind::lower,
            [&] { out.push_back(bound_square_survival(v)); });
    guarded("gfr_monotone_mrl", BoundKind::lower, [&] {
        for (auto& r : bound_gfr_monotone(v)) out.push_back(std::move(r));
    });
    guarded("equilibrium_cmp", BoundKind::upper, [&] { out.push_back(bound_equilibrium_cmp(v)); });
    guarded("tilt_cmp", BoundKind::upper, [&] { out.push_back(bound_tilt_cmp(v, 0.5)); });

    if (w.finite()) {
        guarded("trend_mrl_bound", BoundKind::upper, [&] {
            const double lo_grid = w.tau1;
            const double hi_grid = w.tau1 + 0.9 * (v.upper_limit() - w.tau1);
            const auto cert =
                certify_entropy_trend(dist, w.tau2, linspace(lo_grid, hi_grid, 17), cfg);
            for (auto& r : bound_trend(v, cert)) out.push_back(std::move(r));
        });
    } else {
        guarded("residual_second_moment_upper", BoundKind::upper,
                [&] { out.push_back(bound_residual_second_moment(dist, w.tau1, cfg)); });
    }
    return out;
}

std::vector<std::vector<BoundReport>> audit_windows(const DistPtr& dist,
                                                    std::span<const Window> windows,
                                                    const QuadratureConfig& cfg) {
    std::vector<std::vector<BoundReport>> out(windows.size());
    detail::parallel_for(windows.size(),
                         [&](std::size_t i) { out[i] = audit_window(dist, windows[i], cfg); });
    return out;
}

std::string to_json_line(const BoundReport& r) {
    nlohmann::json j;
    j["id"] = r.id;
    j["kind"] = r.kind == BoundKind::upper ? "upper" : "lower";
    j["hypotheses_met"] = r.hypotheses_met;
    j["verdict"] = r.verdict_text();
    j["note"] = r.note;
    if (std::isfinite(r.lhs)) j["lhs"] = r.lhs;
    if (std::isfinite(r.rhs)) j["rhs"] = r.rhs;
    if (std::isfinite(r.slack)) j["slack"] = r.slack;
    return j.dump();
}

std::string format_report_table(std::span<const BoundReport> reports) {
    std::ostringstream os;
    os << std::left << std::setw(30) << "bound" << std::setw(6) << "kind" << std::setw(15)
       << "verdict" << std::right << std::setw(14) << "lhs" << std::setw(14) << "rhs"
       << std::setw(13) << "slack"
       << "  note\n";
    os << std::string(102, '-') << "\n";
    for (const auto& r : reports) {
        os << std::left << std::setw(30) << r.id << std::setw(6)
           << (r.kind == BoundKind::upper ? "<=" : ">=") << std::setw(15) << r.verdict_text();
        os << std::right << std::fixed << std::setprecision(6);
        if (std::isfinite(r.lhs)) {
            os << std::setw(14) << r.lhs << std::setw(14) << r.rhs << std::setw(13) << r.slack;
        } else {
            os << std::setw(14) << "-" << std::setw(14) << "-" << std::setw(13) << "-";
        }
        os.unsetf(std::ios::fixed);
        os << "  " << r.note << "\n";
    }
    return os.str();
}

}  // namespace crie
