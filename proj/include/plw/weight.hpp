#pragma once

// The weight w(x; t) = x^lambda * exp(-x^2 - t/x) on (0, inf) and the
// quantities derived from it directly.

#include "plw/numeric_policy.hpp"
#include "plw/real.hpp"

#include <string>

namespace plw {

/// One problem instance (lambda, t) with its numeric policy. lambda and t
/// are held at the policy's working precision.
struct Parameters {
    Real lambda;
    Real t;
    NumericPolicy policy;

    /// Validates lambda >= 0, t > 0 and the policy. Throws ConfigError.
    static Parameters make(const Real& lambda, const Real& t, const NumericPolicy& policy);
    static Parameters make(const std::string& lambda, const std::string& t, const NumericPolicy& policy);

    Bits precision() const { return policy.precision_bits; }

    /// Same instance re-rounded to a different policy (e.g. audit precision).
    Parameters with_policy(const NumericPolicy& other) const;
    /// Same lambda and policy, different t.
    Parameters with_t(const Real& new_t) const;
};

/// x^lambda * exp(-x^2 - t/x); 0 at x = 0. Throws std::domain_error for x < 0.
Real eval_weight(const Real& x, const Parameters& params);

/// v'(z) = 2z - lambda/z - t/z^2 for the potential v = -ln w.
/// Throws std::domain_error for z <= 0.
Real eval_potential_derivative(const Real& z, const Parameters& params);

/// d/dx(sigma w) - tau w with sigma = x^2, tau = -2x^3 + (lambda+2)x + t,
/// differentiated in closed form. Zero up to rounding.
struct PearsonResidual {
    Real residual;
    /// |d/dx(sigma w)| + |tau w|, the scale for normalizing `residual`.
    Real scale;
};
PearsonResidual pearson_residual(const Real& x, const Parameters& params);

}  // namespace plw
