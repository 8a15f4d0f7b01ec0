#include "plw/moments.hpp"

#include <stdexcept>

namespace plw {

namespace {

// Adds weight * x^k for k = k_min, ..., k_min + width - 1.
struct PowerAccumulator {
    int k_min;

    void operator()(const QuadratureNode& node, std::span<Real> acc) const {
        Real p = node.weight;
        for (int j = 0; j < -k_min; ++j) mpfr_div(p.get(), p.get(), node.x.get(), MPFR_RNDN);
        for (int j = 0; j < k_min; ++j) mpfr_mul(p.get(), p.get(), node.x.get(), MPFR_RNDN);
        for (std::size_t i = 0; i < acc.size(); ++i) {
            acc[i] += p;
            mpfr_mul(p.get(), p.get(), node.x.get(), MPFR_RNDN);
        }
    }
};

void check_window(int k_min, int k_max) {
    if (k_min > -2) throw std::invalid_argument("compute_moments: k_min must be <= -2");
    if (k_max < k_min) throw std::invalid_argument("compute_moments: k_max < k_min");
}

}  // namespace

MomentTable::MomentTable(Parameters params, int k_min, std::vector<Real> mu,
                         std::shared_ptr<const DeQuadrature> quadrature, int level, Real change)
    : params_(std::move(params)),
      k_min_(k_min),
      mu_(std::move(mu)),
      quadrature_(std::move(quadrature)),
      level_(level),
      change_(std::move(change)) {}

const Real& MomentTable::mu(int k) const {
    if (!contains(k))
        throw std::out_of_range("moment index " + std::to_string(k) + " outside [" + std::to_string(k_min()) +
                                ", " + std::to_string(k_max()) + "]");
    return mu_[static_cast<std::size_t>(k - k_min_)];
}

MomentTable compute_moments(const Parameters& params, int k_min, int k_max) {
    check_window(k_min, k_max);
    auto quad = std::make_shared<DeQuadrature>(params, k_min, k_max);
    const auto width = static_cast<std::size_t>(k_max - k_min + 1);
    RefinedIntegral result = integrate_refined(*quad, width, PowerAccumulator{k_min}, working_tolerance(params.policy),
                                               params.policy.max_quadrature_levels);
    return MomentTable(params, k_min, std::move(result.values), std::move(quad), result.level,
                       std::move(result.change));
}

MomentTable compute_moments_serial(const Parameters& params, int k_min, int k_max) {
    check_window(k_min, k_max);
    auto quad = std::make_shared<DeQuadrature>(params, k_min, k_max);
    const auto width = static_cast<std::size_t>(k_max - k_min + 1);
    const Real tol = working_tolerance(params.policy);
    const Bits prec = params.precision();
    const PowerAccumulator acc{k_min};

    std::vector<Real> cumulative(width, Real(0L, prec));
    std::vector<Real> previous;
    for (int level = 0; level < params.policy.max_quadrature_levels; ++level) {
        while (quad->levels() <= level) quad->add_level();
        auto partial = sum_nodes_serial(quad->level_nodes(level), width, prec, acc);
        const Real h = quad->step(level);
        std::vector<Real> estimate(width);
        for (std::size_t i = 0; i < width; ++i) {
            cumulative[i] += partial[i];
            estimate[i] = cumulative[i] * h;
        }
        if (level > 0) {
            Real change = detail::max_relative_change(previous, estimate);
            if (level >= 2 && change <= tol)
                return MomentTable(params, k_min, std::move(estimate), std::move(quad), level, std::move(change));
        }
        previous = std::move(estimate);
    }
    throw QuadratureNonConvergence("compute_moments_serial: no convergence");
}

Real moment_t_derivative_check(const MomentTable& at_t, const MomentTable& at_t_plus_h,
                               const MomentTable& at_t_minus_h, int k) {
    const Parameters& p = at_t.params();
    for (const MomentTable* other : {&at_t_plus_h, &at_t_minus_h}) {
        if (other->params().lambda != p.lambda || other->params().precision() != p.precision())
            throw std::invalid_argument("moment_t_derivative_check: tables differ in lambda or precision");
    }
    const Real h = at_t_plus_h.params().t - p.t;
    if (h <= 0L) throw std::invalid_argument("moment_t_derivative_check: step must be positive");
    const Real h_minus = p.t - at_t_minus_h.params().t;
    if (abs(h - h_minus) > abs(h) * pow10_neg(p.policy.working_digits() / 2, p.precision()))
        throw std::invalid_argument("moment_t_derivative_check: tables are not equally spaced in t");
    if (!at_t.contains(k - 1)) throw std::out_of_range("moment_t_derivative_check: missing index k-1");
    const Real central = (at_t_plus_h.mu(k) - at_t_minus_h.mu(k)) / (2L * h);
    return abs(central + at_t.mu(k - 1));
}

nlohmann::ordered_json moments_to_json(const MomentTable& table) {
    const int digits = table.params().policy.target_digits;
    nlohmann::ordered_json doc;
    doc["lambda"] = table.params().lambda.to_string(digits);
    doc["t"] = table.params().t.to_string(digits);
    doc["precision_bits"] = table.params().precision();
    nlohmann::ordered_json mu = nlohmann::ordered_json::object();
    for (int k = table.k_min(); k <= table.k_max(); ++k) mu[std::to_string(k)] = table.mu(k).to_string(digits);
    doc["moments"] = std::move(mu);
    return doc;
}

MomentJson moments_from_json(const nlohmann::ordered_json& doc) {
    MomentJson out;
    out.lambda = doc.at("lambda").get<std::string>();
    out.t = doc.at("t").get<std::string>();
    out.precision_bits = doc.at("precision_bits").get<Bits>();
    for (const auto& [key, value] : doc.at("moments").items())
        out.moments.emplace_back(std::stoi(key), Real::from_string(value.get<std::string>(), out.precision_bits));
    return out;
}

}  // namespace plw
