#include "crie/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

#include "crie/errors.hpp"

namespace crie {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tail integrals and moments in the base class fall back to quadrature with
// this fixed tight budget so that derived quantities stay well below the
// tolerances requested by callers one level up.
const QuadratureConfig kInternalQuad{1e-12, 1e-12, 2000};

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw InvalidParameter(std::string(what) + " must be positive and finite");
    }
}

double clamp01(double v) {
    return std::min(1.0, std::max(0.0, v));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

class UniformDist final : public Distribution {
  public:
    explicit UniformDist(double b) : b_(b) { require_positive(b, "uniform upper endpoint"); }

    double survival(double x) const override {
        if (x <= 0.0) return 1.0;
        if (x >= b_) return 0.0;
        return 1.0 - x / b_;
    }
    double cdf(double x) const override {
        if (x <= 0.0) return 0.0;
        if (x >= b_) return 1.0;
        return x / b_;
    }
    double pdf(double x) const override { return (x < 0.0 || x > b_) ? 0.0 : 1.0 / b_; }
    double quantile(double q) const override {
        check_q(q);
        return q * b_;
    }
    double support_lo() const override { return 0.0; }
    double support_hi() const override { return b_; }
    double mean() const override { return 0.5 * b_; }
    double second_moment() const override { return b_ * b_ / 3.0; }
    double survival_tail_integral(double x) const override {
        if (x >= b_) return 0.0;
        const double lo = std::max(x, 0.0);
        double v = (b_ - lo) * (b_ - lo) / (2.0 * b_);
        if (x < 0.0) v += -x;  // survival is 1 below the support
        return v;
    }
    std::string describe() const override { return "uniform:" + fmt(b_); }

  private:
    static void check_q(double q) {
        if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("quantile needs q in (0,1)");
    }
    double b_;
};

class ExponentialDist final : public Distribution {
  public:
    explicit ExponentialDist(double rate) : rate_(rate) { require_positive(rate, "exponential rate"); }

    double survival(double x) const override { return x <= 0.0 ? 1.0 : std::exp(-rate_ * x); }
    double cdf(double x) const override { return x <= 0.0 ? 0.0 : -std::expm1(-rate_ * x); }
    double pdf(double x) const override { return x < 0.0 ? 0.0 : rate_ * std::exp(-rate_ * x); }
    double quantile(double q) const override {
        if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("quantile needs q in (0,1)");
        return -std::log1p(-q) / rate_;
    }
    double support_lo() const override { return 0.0; }
    double support_hi() const override { return kInf; }
    double mean() const override { return 1.0 / rate_; }
    double second_moment() const override { return 2.0 / (rate_ * rate_); }
    double survival_tail_integral(double x) const override {
        if (x <= 0.0) return -x + 1.0 / rate_;
        return std::exp(-rate_ * x) / rate_;
    }
    std::string describe() const override { return "exp:" + fmt(rate_); }

  private:
    double rate_;
};

// Survival 1 - (x/b)^a on [0, b]. beta_c(c) is the b = 1 case.
class PowerDist final : public Distribution {
  public:
    PowerDist(double a, double b, bool beta_tag) : a_(a), b_(b), beta_tag_(beta_tag) {
        require_positive(a, "power shape");
        require_positive(b, "power scale");
    }

    double survival(double x) const override {
        if (x <= 0.0) return 1.0;
        if (x >= b_) return 0.0;
        return 1.0 - std::pow(x / b_, a_);
    }
    double cdf(double x) const override {
        if (x <= 0.0) return 0.0;
        if (x >= b_) return 1.0;
        return std::pow(x / b_, a_);
    }
    double pdf(double x) const override {
        if (x < 0.0 || x > b_) return 0.0;
        return (a_ / b_) * std::pow(x / b_, a_ - 1.0);
    }
    double quantile(double q) const override {
        if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("quantile needs q in (0,1)");
        return b_ * std::pow(q, 1.0 / a_);
    }
    double support_lo() const override { return 0.0; }
    double support_hi() const override { return b_; }
    double mean() const override { return a_ * b_ / (a_ + 1.0); }
    double second_moment() const override { return a_ * b_ * b_ / (a_ + 2.0); }
    double survival_tail_integral(double x) const override {
        if (x >= b_) return 0.0;
        const double lo = std::max(x, 0.0);
        const double y = lo / b_;
        const double v = (b_ - lo) - (b_ / (a_ + 1.0)) * (1.0 - std::pow(y, a_ + 1.0));
        return x < 0.0 ? v - x : v;
    }
    std::string describe() const override {
        return beta_tag_ ? "betac:" + fmt(a_) : "power:" + fmt(a_) + "," + fmt(b_);
    }

  private:
    double a_, b_;
    bool beta_tag_;
};

class LomaxDist final : public Distribution {
  public:
    LomaxDist(double alpha, double lambda) : alpha_(alpha), lambda_(lambda) {
        require_positive(alpha, "lomax shape");
        require_positive(lambda, "lomax scale");
    }

    double survival(double x) const override {
        return x <= 0.0 ? 1.0 : std::pow(lambda_ / (lambda_ + x), alpha_);
    }
    double pdf(double x) const override {
        if (x < 0.0) return 0.0;
        return (alpha_ / lambda_) * std::pow(lambda_ / (lambda_ + x), alpha_ + 1.0);
    }
    double quantile(double q) const override {
        if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("quantile needs q in (0,1)");
        return lambda_ * (std::pow(1.0 - q, -1.0 / alpha_) - 1.0);
    }
    double support_lo() const override { return 0.0; }
    double support_hi() const override { return kInf; }
    double mean() const override { return alpha_ > 1.0 ? lambda_ / (alpha_ - 1.0) : kInf; }
    double second_moment() const override {
        return alpha_ > 2.0 ? 2.0 * lambda_ * lambda_ / ((alpha_ - 1.0) * (alpha_ - 2.0)) : kInf;
    }
    double survival_tail_integral(double x) const override {
        if (alpha_ <= 1.0) return kInf;
        const double lo = std::max(x, 0.0);
        const double v = lambda_ * std::pow(lambda_ / (lambda_ + lo), alpha_ - 1.0) / (alpha_ - 1.0);
        return x < 0.0 ? v - x : v;
    }
    std::string describe() const override { return "lomax:" + fmt(alpha_) + "," + fmt(lambda_); }

  private:
    double alpha_, lambda_;
};

class EquilibriumDist final : public Distribution {
  public:
    explicit EquilibriumDist(DistPtr base) : base_(std::move(base)), mean_(base_->mean()) {
        if (!std::isfinite(mean_)) {
            throw InfiniteMean("equilibrium distribution requires a finite base mean");
        }
    }

    double survival(double x) const override {
        if (x <= base_->support_lo()) return 1.0;
        if (x >= base_->support_hi()) return 0.0;
        return clamp01(base_->survival_tail_integral(x) / mean_);
    }
    double pdf(double x) const override {
        if (x < base_->support_lo() || x > base_->support_hi()) return 0.0;
        return base_->survival(x) / mean_;
    }
    double support_lo() const override { return base_->support_lo(); }
    double support_hi() const override { return base_->support_hi(); }
    double mean() const override {
        const double m2 = base_->second_moment();
        return std::isfinite(m2) ? m2 / (2.0 * mean_) : kInf;
    }
    std::string describe() const override { return "equilibrium(" + base_->describe() + ")"; }

  private:
    DistPtr base_;
    double mean_;
};

class TiltDist final : public Distribution {
  public:
    TiltDist(DistPtr base, double p) : base_(std::move(base)), p_(p) {
        if (!(p > 0.0 && p < 1.0)) throw InvalidParameter("tilt parameter must lie in (0,1)");
    }

    double survival(double x) const override {
        const double s = base_->survival(x);
        return p_ * s / (1.0 - (1.0 - p_) * s);
    }
    double pdf(double x) const override {
        const double s = base_->survival(x);
        const double d = 1.0 - (1.0 - p_) * s;
        return p_ * base_->pdf(x) / (d * d);
    }
    double quantile(double q) const override {
        if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("quantile needs q in (0,1)");
        const double t = 1.0 - q;  // target tilted survival
        const double s = t / (p_ + t * (1.0 - p_));
        return base_->quantile(1.0 - s);
    }
    double support_lo() const override { return base_->support_lo(); }
    double support_hi() const override { return base_->support_hi(); }
    std::string describe() const override {
        return "tilt(" + base_->describe() + ";" + fmt(p_) + ")";
    }

  private:
    DistPtr base_;
    double p_;
};

class AffineDist final : public Distribution {
  public:
    AffineDist(DistPtr base, double a, double b) : base_(std::move(base)), a_(a), b_(b) {
        if (!(a > 0.0) || !std::isfinite(a)) throw InvalidParameter("affine slope must be positive");
        if (!(b >= 0.0) || !std::isfinite(b)) throw InvalidParameter("affine offset must be nonnegative");
    }

    double survival(double x) const override { return base_->survival((x - b_) / a_); }
    double cdf(double x) const override { return base_->cdf((x - b_) / a_); }
    double pdf(double x) const override { return base_->pdf((x - b_) / a_) / a_; }
    double quantile(double q) const override { return a_ * base_->quantile(q) + b_; }
    double support_lo() const override { return a_ * base_->support_lo() + b_; }
    double support_hi() const override {
        const double hi = base_->support_hi();
        return std::isinf(hi) ? kInf : a_ * hi + b_;
    }
    double mean() const override { return a_ * base_->mean() + b_; }
    double second_moment() const override {
        return a_ * a_ * base_->second_moment() + 2.0 * a_ * b_ * base_->mean() + b_ * b_;
    }
    double survival_tail_integral(double x) const override {
        return a_ * base_->survival_tail_integral((x - b_) / a_);
    }
    std::string describe() const override {
        return "affine(" + base_->describe() + ";" + fmt(a_) + "," + fmt(b_) + ")";
    }

  private:
    DistPtr base_;
    double a_, b_;
};

class TransformedDist final : public Distribution {
  public:
    TransformedDist(DistPtr base, Transform t) : base_(std::move(base)), t_(std::move(t)) {
        // Probe strict monotonicity on an interior quantile grid.
        for (int i = 1; i <= 33; ++i) {
            const double x = base_->quantile(static_cast<double>(i) / 34.0);
            if (!(t_.dphi(x) > 0.0)) {
                throw NonMonotoneTransform("transform derivative not strictly positive at x=" + fmt(x));
            }
        }
    }

    double survival(double y) const override { return base_->survival(t_.inv(y)); }
    double cdf(double y) const override { return base_->cdf(t_.inv(y)); }
    double pdf(double y) const override {
        const double x = t_.inv(y);
        const double d = t_.dphi(x);
        return d > 0.0 ? base_->pdf(x) / d : 0.0;
    }
    double quantile(double q) const override { return t_.phi(base_->quantile(q)); }
    double support_lo() const override { return t_.phi(base_->support_lo()); }
    double support_hi() const override {
        const double hi = base_->support_hi();
        return std::isinf(hi) ? kInf : t_.phi(hi);
    }
    std::string describe() const override {
        return t_.name + "(" + base_->describe() + ")";
    }

  private:
    DistPtr base_;
    Transform t_;
};

class EmpiricalDist final : public Distribution {
  public:
    explicit EmpiricalDist(std::vector<double> values) : v_(std::move(values)) {
        if (v_.empty()) throw InsufficientData("empirical distribution needs at least one observation");
        for (double x : v_) {
            if (!std::isfinite(x)) throw NonFiniteSample("empirical observations must be finite");
        }
        std::sort(v_.begin(), v_.end());
        suffix_.resize(v_.size() + 1, 0.0);
        for (std::size_t i = v_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + v_[i];
    }

    double survival(double x) const override {
        const auto it = std::upper_bound(v_.begin(), v_.end(), x);
        return static_cast<double>(v_.end() - it) / static_cast<double>(v_.size());
    }
    double cdf(double x) const override {
        const auto it = std::upper_bound(v_.begin(), v_.end(), x);
        return static_cast<double>(it - v_.begin()) / static_cast<double>(v_.size());
    }
    double pdf(double) const override { return 0.0; }
    double quantile(double q) const override {
        if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("quantile needs q in (0,1)");
        const auto n = v_.size();
        const std::size_t k = static_cast<std::size_t>(std::ceil(q * static_cast<double>(n)));
        return v_[std::min(n - 1, std::max<std::size_t>(k, 1) - 1)];
    }
    double support_lo() const override { return v_.front(); }
    double support_hi() const override { return v_.back(); }
    double mean() const override { return suffix_[0] / static_cast<double>(v_.size()); }
    double second_moment() const override {
        double s = 0.0;
        for (double x : v_) s += x * x;
        return s / static_cast<double>(v_.size());
    }
    double survival_tail_integral(double x) const override {
        // (1/n) * sum_i (x_i - x)^+
        const auto it = std::upper_bound(v_.begin(), v_.end(), x);
        const std::size_t idx = static_cast<std::size_t>(it - v_.begin());
        const double above = static_cast<double>(v_.size() - idx);
        return (suffix_[idx] - above * x) / static_cast<double>(v_.size());
    }
    std::string describe() const override {
        return "empirical(n=" + std::to_string(v_.size()) + ")";
    }

  private:
    std::vector<double> v_;
    std::vector<double> suffix_;
};

}  // namespace

double Distribution::quantile(double q) const {
    return quantile_by_bisection(q);
}

double Distribution::quantile_by_bisection(double q) const {
    if (!(q > 0.0 && q < 1.0)) throw InvalidParameter("quantile needs q in (0,1)");
    double lo = support_lo();
    double hi = support_hi();
    if (std::isinf(hi)) {
        double step = std::max(1.0, std::fabs(lo));
        hi = lo + step;
        while (cdf(hi) < q && step < 1e300) {
            step *= 2.0;
            hi = lo + step;
        }
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (cdf(mid) < q ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double Distribution::mean() const {
    const double lo = support_lo();
    const QuadratureResult r =
        integrate([this](double x) { return survival(x); }, lo, support_hi(), kInternalQuad);
    if (!r.converged && r.error_estimate > 1e-6 * std::max(1.0, std::fabs(r.value))) return kInf;
    return lo + r.value;
}

double Distribution::second_moment() const {
    const double lo = support_lo();
    const QuadratureResult r = integrate([this](double x) { return x * survival(x); }, lo,
                                         support_hi(), kInternalQuad);
    if (!r.converged && r.error_estimate > 1e-6 * std::max(1.0, std::fabs(r.value))) return kInf;
    return lo * lo + 2.0 * r.value;
}

double Distribution::survival_tail_integral(double x) const {
    const double hi = support_hi();
    if (x >= hi) return 0.0;
    const QuadratureResult r =
        integrate([this](double t) { return survival(t); }, x, hi, kInternalQuad);
    if (!r.converged && r.error_estimate > 1e-6 * std::max(1.0, std::fabs(r.value))) return kInf;
    return r.value;
}

DistPtr uniform(double b) { return std::make_shared<UniformDist>(b); }
DistPtr exponential(double rate) { return std::make_shared<ExponentialDist>(rate); }
DistPtr power_dist(double shape, double scale) {
    return std::make_shared<PowerDist>(shape, scale, false);
}
DistPtr beta_c(double shape) { return std::make_shared<PowerDist>(shape, 1.0, true); }
DistPtr lomax(double shape, double scale) { return std::make_shared<LomaxDist>(shape, scale); }

DistPtr equilibrium_of(DistPtr base) { return std::make_shared<EquilibriumDist>(std::move(base)); }
DistPtr tilt_pof(DistPtr base, double p) { return std::make_shared<TiltDist>(std::move(base), p); }
DistPtr affine_of(DistPtr base, double a, double b) {
    return std::make_shared<AffineDist>(std::move(base), a, b);
}
DistPtr transformed(DistPtr base, Transform t) {
    return std::make_shared<TransformedDist>(std::move(base), std::move(t));
}
DistPtr empirical(std::vector<double> values) {
    return std::make_shared<EmpiricalDist>(std::move(values));
}

Transform Transform::affine(double a, double b) {
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidParameter("affine slope must be positive");
    if (!(b >= 0.0) || !std::isfinite(b)) throw InvalidParameter("affine offset must be nonnegative");
    Transform t;
    t.phi = [a, b](double x) { return a * x + b; };
    t.dphi = [a](double) { return a; };
    t.inv = [a, b](double y) { return (y - b) / a; };
    t.name = "affine";
    t.is_affine = true;
    t.affine_a = a;
    t.affine_b = b;
    return t;
}

Transform Transform::square() {
    Transform t;
    t.phi = [](double x) { return x * x; };
    t.dphi = [](double x) { return 2.0 * x; };
    t.inv = [](double y) { return y > 0.0 ? std::sqrt(y) : 0.0; };
    t.name = "square";
    return t;
}

Transform Transform::identity() {
    return affine(1.0, 0.0);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<double> parse_params(std::string_view s, std::size_t expected, const char* what) {
    std::vector<double> out;
    std::string buf(s);
    std::istringstream is(buf);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(tok, &pos);
            while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
            if (pos != tok.size()) throw std::invalid_argument(tok);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("bad numeric parameter '" + tok + "' in " + what);
        }
    }
    if (out.size() != expected) {
        throw ParseError(std::string(what) + " expects " + std::to_string(expected) +
                         " parameter(s), got " + std::to_string(out.size()));
    }
    return out;
}

// Splits "inner;params" at the top-level semicolon (nesting-aware).
std::pair<std::string_view, std::string_view> split_top_semicolon(std::string_view s) {
    int depth = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        else if (s[i] == ')') --depth;
        else if (s[i] == ';' && depth == 0) return {s.substr(0, i), s.substr(i + 1)};
    }
    return {s, {}};
}

}  // namespace

DistPtr parse_distribution(std::string_view text) {
    const std::string_view s = trim(text);
    if (s.empty()) throw ParseError("empty distribution spec");

    const auto wrapped = [&](std::string_view prefix) -> std::string_view {
        if (s.size() > prefix.size() + 1 && s.substr(0, prefix.size()) == prefix && s.back() == ')') {
            return trim(s.substr(prefix.size(), s.size() - prefix.size() - 1));
        }
        return {};
    };

    if (auto inner = wrapped("equilibrium("); !inner.empty()) {
        return equilibrium_of(parse_distribution(inner));
    }
    if (auto inner = wrapped("tilt("); !inner.empty()) {
        const auto [spec, params] = split_top_semicolon(inner);
        if (params.empty()) throw ParseError("tilt(...) expects 'spec;p'");
        const auto p = parse_params(params, 1, "tilt");
        return tilt_pof(parse_distribution(spec), p[0]);
    }
    if (auto inner = wrapped("affine("); !inner.empty()) {
        const auto [spec, params] = split_top_semicolon(inner);
        if (params.empty()) throw ParseError("affine(...) expects 'spec;a,b'");
        const auto ab = parse_params(params, 2, "affine");
        return affine_of(parse_distribution(spec), ab[0], ab[1]);
    }

    const auto colon = s.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("distribution spec '" + std::string(s) + "' is missing ':'");
    }
    const std::string_view name = trim(s.substr(0, colon));
    const std::string_view args = trim(s.substr(colon + 1));
    if (name == "exp") return exponential(parse_params(args, 1, "exp")[0]);
    if (name == "uniform") return uniform(parse_params(args, 1, "uniform")[0]);
    if (name == "betac") return beta_c(parse_params(args, 1, "betac")[0]);
    if (name == "power") {
        const auto p = parse_params(args, 2, "power");
        return power_dist(p[0], p[1]);
    }
    if (name == "lomax") {
        const auto p = parse_params(args, 2, "lomax");
        return lomax(p[0], p[1]);
    }
    throw ParseError("unknown distribution family '" + std::string(name) + "'");
}

}  // namespace crie
