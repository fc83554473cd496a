#include "crie/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <random>
#include <string>

#include "crie/errors.hpp"
#include "crie/parallel.hpp"
#include "crie/quadrature.hpp"

namespace crie {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Step decomposition of the empirical truncated survival over a window:
// constant value `u` on [lo, hi).
struct Step {
    double lo, hi, u;
};

std::vector<Step> truncated_steps(const SampleData& s, const Window& w) {
    const auto& v = s.values();
    const double s2 = w.finite() ? s.edf_survival(w.tau2) : 0.0;
    const double denom = s.edf_survival_left(w.tau1) - s2;  // window mass
    if (!(denom > 0.0)) {
        throw InsufficientData("no observations fall inside window " + w.describe());
    }

    // Breakpoints: tau1, the distinct observations strictly inside, and the
    // window end (the largest observation when tau2 is infinite).
    auto lo_it = std::upper_bound(v.begin(), v.end(), w.tau1);
    auto hi_it = w.finite() ? std::lower_bound(v.begin(), v.end(), w.tau2) : v.end();

    std::size_t distinct = 0;
    for (auto it = lo_it; it != hi_it; ++it) {
        if (it == lo_it || *it != *(it - 1)) ++distinct;
    }
    if (distinct < 2) {
        throw InsufficientData("need at least 2 distinct observations strictly inside " +
                               w.describe());
    }

    const double end = w.finite() ? w.tau2 : v.back();
    std::vector<Step> steps;
    steps.reserve(distinct + 2);
    double prev = w.tau1;
    const auto push = [&](double next) {
        if (next > prev) {
            const double u = std::min(1.0, std::max(0.0, (s.edf_survival(prev) - s2) / denom));
            steps.push_back(Step{prev, next, u});
            prev = next;
        }
    };
    for (auto it = lo_it; it != hi_it; ++it) {
        if (it == lo_it || *it != *(it - 1)) push(*it);
    }
    push(end);
    return steps;
}

}  // namespace

SampleData::SampleData(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw InsufficientData("sample needs at least one observation");
    for (double x : values_) {
        if (!std::isfinite(x)) throw NonFiniteSample("sample values must be finite");
    }
    std::sort(values_.begin(), values_.end());
}

SampleData SampleData::read(std::istream& in) {
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        std::size_t b = line.find_last_not_of(" \t\r");
        const std::string tok = line.substr(a, b - a + 1);
        try {
            std::size_t pos = 0;
            const double x = std::stod(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument(tok);
            if (!std::isfinite(x)) throw std::invalid_argument(tok);
            values.push_back(x);
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": expected a decimal value, got '" +
                             tok + "'");
        }
    }
    return SampleData(std::move(values));
}

double SampleData::edf_survival(double x) const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(values_.end() - it) / static_cast<double>(values_.size());
}

double SampleData::edf_survival_left(double x) const {
    const auto it = std::lower_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(values_.end() - it) / static_cast<double>(values_.size());
}

DistPtr SampleData::distribution() const { return empirical(values_); }

double empirical_mean_residual(const SampleData& s, const Window& w) {
    double m = 0.0;
    for (const Step& st : truncated_steps(s, w)) m += (st.hi - st.lo) * st.u;
    return m;
}

double empirical_crie(const SampleData& s, const Window& w) {
    double h = 0.0;
    for (const Step& st : truncated_steps(s, w)) h -= (st.hi - st.lo) * xlogx(st.u);
    return h;
}

double crikl_statistic(const SampleData& s, const DistPtr& hypothesized, const Window& w) {
    const auto steps = truncated_steps(s, w);
    const TruncatedView view(hypothesized, w);

    const double total_width = steps.back().hi - steps.front().lo;
    constexpr int kBudget = 4096;

    double cross = 0.0;     // int u_hat ln v
    double m_emp = 0.0;     // int u_hat
    double m_hyp = 0.0;     // int v over the same range
    double entropy = 0.0;   // -int u_hat ln u_hat

    const auto eval_v = [&view, &w](double x) {
        return view.survival(std::min(x, w.tau2));
    };

    for (std::size_t j = 0; j < steps.size(); ++j) {
        const Step& st = steps[j];
        const double width = st.hi - st.lo;
        m_emp += width * st.u;
        entropy -= width * xlogx(st.u);

        const bool last = j + 1 == steps.size();
        const bool singular_end = last && w.finite() && st.u > 0.0;
        const int cells = std::max(1, static_cast<int>(std::lround(
                                          kBudget * width / total_width)));
        const double h = width / cells;
        const int smooth_cells = singular_end ? cells - 1 : cells;

        for (int c = 0; c < smooth_cells; ++c) {
            const double mid = st.lo + (c + 0.5) * h;
            const double vm = eval_v(mid);
            m_hyp += h * vm;
            if (st.u > 0.0) {
                if (!(vm > 0.0)) {
                    throw DivergentDivergence(
                        "hypothesized truncated survival vanishes inside the window at x=" +
                        std::to_string(mid));
                }
                cross += h * st.u * std::log(vm);
            }
        }
        if (singular_end) {
            // v -> 0 at tau2 while the empirical step stays positive; refine
            // the final cell geometrically toward the endpoint so the log
            // singularity is integrated accurately.
            double a = st.hi - h;
            double half = h;
            for (int k = 0; k < 50 && half > 1e-300; ++k) {
                const bool final_slice = k == 49;
                const double b = final_slice ? st.hi : a + 0.5 * half;
                const double mid = 0.5 * (a + b);
                const double vm = eval_v(mid);
                const double width_k = b - a;
                if (!(vm > 0.0)) break;  // endpoint reached at machine precision
                m_hyp += width_k * vm;
                cross += width_k * st.u * std::log(vm);
                if (final_slice) break;
                a = b;
                half *= 0.5;
            }
        }
    }

    // Hypothesized mass between the last observation and an infinite tau2.
    if (!w.finite()) {
        const double tail = hypothesized->survival_tail_integral(steps.back().hi);
        if (!std::isfinite(tail)) {
            throw InfiniteResult("hypothesized tail integral diverges beyond the sample range");
        }
        m_hyp += tail / (view.s1() - view.s2());
    }

    // int u_hat ln(u_hat / v) - (m1_emp - m1_hyp)
    return (-entropy - cross) - (m_emp - m_hyp);
}

GofResult bootstrap_gof(const SampleData& s, const DistPtr& hypothesized, const Window& w,
                        int replicates, std::uint64_t seed) {
    if (replicates < 99) throw InvalidParameter("bootstrap needs at least 99 replicates");

    GofResult out;
    out.replicates = replicates;
    out.seed = seed;
    out.statistic = crikl_statistic(s, hypothesized, w);

    out.replicate_statistics.assign(static_cast<std::size_t>(replicates), 0.0);
    const std::size_t n = s.size();
    detail::parallel_for(static_cast<std::size_t>(replicates), [&](std::size_t r) {
        const SampleData resample(sample_from(hypothesized, n, seed, r + 1));
        out.replicate_statistics[r] = crikl_statistic(resample, hypothesized, w);
    });

    int count = 0;
    for (double stat : out.replicate_statistics) {
        if (stat >= out.statistic) ++count;
    }
    out.p_value = (1.0 + count) / (replicates + 1.0);
    return out;
}

std::vector<double> sample_from(const DistPtr& dist, std::size_t n, std::uint64_t seed,
                                std::uint64_t stream) {
    std::mt19937_64 eng(splitmix64(seed + stream * 0x9E3779B97F4A7C15ull));
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // 53-bit mantissa draw strictly inside (0,1); stable across platforms.
        const double u = (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
        out.push_back(dist->quantile(u));
    }
    return out;
}

}  // namespace crie
