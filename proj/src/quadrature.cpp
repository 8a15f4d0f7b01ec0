#include "plw/quadrature.hpp"

#include <cmath>
#include <limits>

namespace plw {

namespace {

constexpr double kScanHalfWidth = 20.0;
constexpr double kScanStep = 1.0 / 64.0;
constexpr double kWindowPad = 0.125;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double softplus(double y) { return y > 30.0 ? y + std::log1p(std::exp(-y)) : std::log1p(std::exp(y)); }

double log_add_exp(double a, double b) {
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + std::log1p(std::exp(lo - hi));
}

double finite_or_neg_inf(double v) { return std::isfinite(v) ? v : kNegInf; }

// log of (dx/ds) * x^(k+lambda) * exp(-x^2 - t/x), evaluated in double
// through logarithms so that extreme nodes do not overflow.
double log_term(double log_x, double log_dxds, double power, double t) {
    const double x_sq = std::exp(2.0 * log_x);
    const double t_over_x = t * std::exp(-log_x);
    return finite_or_neg_inf(log_dxds + power * log_x - x_sq - t_over_x);
}

double left_log_term(double s, double power, double t, double log_x0) {
    const double a = M_PI * std::sinh(s);
    const double sp = softplus(-a);
    const double log_x = log_x0 - sp;
    const double log_dxds = log_x0 + std::log(M_PI * std::cosh(s)) - a - 2.0 * sp;
    return log_term(log_x, log_dxds, power, t);
}

double right_log_term(double s, double power, double t, double log_x0) {
    const double v = s - std::exp(-s);
    const double log_x = log_add_exp(log_x0, v);
    const double log_dxds = v + softplus(-s);
    return log_term(log_x, log_dxds, power, t);
}

struct Scan {
    std::vector<double> s;
    std::vector<double> left;
    std::vector<double> right;
};

Scan scan(double power, double t, double log_x0) {
    Scan out;
    for (double s = -kScanHalfWidth; s <= kScanHalfWidth; s += kScanStep) {
        out.s.push_back(s);
        out.left.push_back(left_log_term(s, power, t, log_x0));
        out.right.push_back(right_log_term(s, power, t, log_x0));
    }
    return out;
}

void widen(SWindow& w, bool& seen, double s) {
    if (!seen) {
        w = {s, s};
        seen = true;
    } else {
        w.lo = std::min(w.lo, s);
        w.hi = std::max(w.hi, s);
    }
}

void sinh_cosh(const Real& s, Real& sh, Real& ch) {
    sh = s;
    ch = s;
    mpfr_sinh_cosh(sh.get(), ch.get(), s.get(), MPFR_RNDN);
}

QuadratureNode left_node(const Real& s, const Real& x0, const Real& pi, const Parameters& params) {
    Real sh, ch;
    sinh_cosh(s, sh, ch);
    const Real e = exp(-(pi * sh));
    const Real one_plus = e + 1L;
    Real x = x0 / one_plus;
    Real dxds = x0 * pi * ch * e / (one_plus * one_plus);
    Real w = eval_weight(x, params);
    return {std::move(x), dxds * w};
}

QuadratureNode right_node(const Real& s, const Real& x0, const Parameters& params) {
    const Real em = exp(-s);
    const Real ev = exp(s - em);
    Real x = x0 + ev;
    Real dxds = ev * (em + 1L);
    Real w = eval_weight(x, params);
    return {std::move(x), dxds * w};
}

}  // namespace

DeQuadrature::DeQuadrature(const Parameters& params, int k_min, int k_max) : params_(params) {
    if (k_min > k_max) throw std::invalid_argument("DeQuadrature: k_min > k_max");
    const Bits prec = params.precision();
    x0_ = max(Real::one(prec), cbrt(params.t / 2L));

    const double lambda = params.lambda.to_double();
    const double t = params.t.to_double();
    const double log_x0 = std::log(x0_.to_double());
    const double drop = (params.policy.working_digits() + 5) * std::log(10.0);

    bool seen_left = false;
    bool seen_right = false;
    for (int k : {k_min, k_max, (k_min + k_max) / 2, 0}) {
        const Scan sc = scan(k + lambda, t, log_x0);
        double peak = kNegInf;
        for (std::size_t i = 0; i < sc.s.size(); ++i) peak = std::max({peak, sc.left[i], sc.right[i]});
        if (!std::isfinite(peak)) throw NumericError("DeQuadrature: integrand underflows everywhere");
        const double threshold = peak - drop;
        for (std::size_t i = 0; i < sc.s.size(); ++i) {
            if (sc.left[i] >= threshold) widen(left_, seen_left, sc.s[i]);
            if (sc.right[i] >= threshold) widen(right_, seen_right, sc.s[i]);
        }
    }
    if (!seen_left || !seen_right) throw NumericError("DeQuadrature: empty truncation window");
    for (SWindow* w : {&left_, &right_}) {
        w->lo -= kWindowPad;
        w->hi += kWindowPad;
        if (w->lo <= -kScanHalfWidth || w->hi >= kScanHalfWidth)
            throw NumericError("DeQuadrature: truncation window exceeds the scanned range");
    }
    add_level();
}

std::span<const QuadratureNode> DeQuadrature::level_nodes(int level) const {
    return levels_.at(static_cast<std::size_t>(level));
}

Real DeQuadrature::step(int level) const {
    Real h(kInitialStep, params_.precision());
    mpfr_div_2ui(h.get(), h.get(), static_cast<unsigned long>(level), MPFR_RNDN);
    return h;
}

std::size_t DeQuadrature::node_count() const {
    std::size_t n = 0;
    for (const auto& l : levels_) n += l.size();
    return n;
}

void DeQuadrature::add_level() {
    const int level = levels();
    const double h = kInitialStep / std::ldexp(1.0, level);
    const long stride = level == 0 ? 1 : 2;

    struct Pending {
        long j;
        bool left;
    };
    std::vector<Pending> pending;
    for (const auto& [window, is_left] : {std::pair{left_, true}, std::pair{right_, false}}) {
        long j = static_cast<long>(std::ceil(window.lo / h));
        if (level > 0 && j % 2 == 0) ++j;
        for (; static_cast<double>(j) * h <= window.hi; j += stride) pending.push_back({j, is_left});
    }

    const Real step_h = step(level);
    const Real pi = Real::pi(params_.precision());
    std::vector<QuadratureNode> nodes(pending.size());
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(pending.size()); ++i) {
        const auto& p = pending[static_cast<std::size_t>(i)];
        const Real s = step_h * p.j;
        nodes[static_cast<std::size_t>(i)] = p.left ? left_node(s, x0_, pi, params_) : right_node(s, x0_, params_);
    }
    levels_.push_back(std::move(nodes));
}

namespace detail {

Real max_relative_change(const std::vector<Real>& prev, const std::vector<Real>& next,
                         std::span<const Real> scale) {
    Real worst(0L, next.empty() ? MPFR_PREC_MIN : next.front().precision());
    for (std::size_t i = 0; i < next.size(); ++i) {
        Real diff = abs(next[i] - prev[i]);
        Real denom = abs(next[i]);
        if (i < scale.size() && denom < scale[i]) denom = scale[i];
        if (!denom.is_zero()) diff /= denom;
        if (worst < diff) worst = std::move(diff);
    }
    return worst;
}

}  // namespace detail

Real working_tolerance(const NumericPolicy& policy) {
    return pow10_neg(policy.working_digits() - kGuardDigits, policy.precision_bits);
}

}  // namespace plw
