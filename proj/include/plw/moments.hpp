#pragma once

#include "plw/quadrature.hpp"
#include "plw/weight.hpp"

#include <nlohmann/json.hpp>

#include <memory>
#include <string>
#include <vector>

namespace plw {

/// mu_k = int_0^inf x^(k+lambda) exp(-x^2 - t/x) dx for k in [k_min, k_max].
class MomentTable {
public:
    MomentTable(Parameters params, int k_min, std::vector<Real> mu,
                std::shared_ptr<const DeQuadrature> quadrature, int level, Real change);

    const Parameters& params() const { return params_; }
    int k_min() const { return k_min_; }
    int k_max() const { return k_min_ + static_cast<int>(mu_.size()) - 1; }
    bool contains(int k) const { return k >= k_min() && k <= k_max(); }

    /// Throws std::out_of_range outside [k_min, k_max].
    const Real& mu(int k) const;

    /// The node set the table was integrated on, refined to `level`.
    const std::shared_ptr<const DeQuadrature>& quadrature() const { return quadrature_; }
    int quadrature_level() const { return level_; }
    /// Largest relative change between the last two refinement levels.
    const Real& quadrature_change() const { return change_; }

private:
    Parameters params_;
    int k_min_;
    std::vector<Real> mu_;
    std::shared_ptr<const DeQuadrature> quadrature_;
    int level_;
    Real change_;
};

/// Integrates all moments on one shared node set, refining until successive
/// levels agree to the working precision. Requires k_min <= -2 and
/// k_min <= k_max. Throws QuadratureNonConvergence past the policy's level cap.
MomentTable compute_moments(const Parameters& params, int k_min, int k_max);

/// Serial reference for compute_moments (same nodes, sequential sums).
MomentTable compute_moments_serial(const Parameters& params, int k_min, int k_max);

/// |(mu_k(t+h) - mu_k(t-h)) / (2h) + mu_{k-1}(t)|, from d mu_k/dt = -mu_{k-1}.
/// h is read off the tables, which must be equally spaced in t and share
/// lambda and precision.
Real moment_t_derivative_check(const MomentTable& at_t, const MomentTable& at_t_plus_h,
                               const MomentTable& at_t_minus_h, int k);

/// {"lambda", "t", "precision_bits", "moments": {"k": value}} with decimal
/// strings printed to the policy's target digits.
nlohmann::ordered_json moments_to_json(const MomentTable& table);

/// Parsed moment values keyed by k.
struct MomentJson {
    std::string lambda;
    std::string t;
    Bits precision_bits = 0;
    std::vector<std::pair<int, Real>> moments;
};
MomentJson moments_from_json(const nlohmann::ordered_json& doc);

}  // namespace plw
