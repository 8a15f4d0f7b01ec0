#include "plw/weight.hpp"

#include "plw/errors.hpp"

#include <stdexcept>

namespace plw {

Parameters Parameters::make(const Real& lambda, const Real& t, const NumericPolicy& policy) {
    policy.validate();
    if (!lambda.is_finite() || lambda < 0L) throw ConfigError("lambda must be >= 0");
    if (!t.is_finite() || t <= 0L) throw ConfigError("t must be > 0");
    Parameters p{Real(0L, policy.precision_bits), Real(0L, policy.precision_bits), policy};
    mpfr_set(p.lambda.get(), lambda.get(), MPFR_RNDN);
    mpfr_set(p.t.get(), t.get(), MPFR_RNDN);
    return p;
}

Parameters Parameters::make(const std::string& lambda, const std::string& t, const NumericPolicy& policy) {
    policy.validate();
    try {
        return make(Real::from_string(lambda, policy.precision_bits),
                    Real::from_string(t, policy.precision_bits), policy);
    } catch (const std::invalid_argument& e) {
        if (dynamic_cast<const ConfigError*>(&e) != nullptr) throw;
        throw ConfigError(e.what());
    }
}

Parameters Parameters::with_policy(const NumericPolicy& other) const { return make(lambda, t, other); }

Parameters Parameters::with_t(const Real& new_t) const { return make(lambda, new_t, policy); }

Real eval_weight(const Real& x, const Parameters& params) {
    if (x < 0L) throw std::domain_error("eval_weight: x must be >= 0");
    if (x.is_zero()) return Real::zero(params.precision());
    Real exponent = -(x * x) - params.t / x;
    if (!params.lambda.is_zero()) exponent += params.lambda * log(x);
    return exp(exponent);
}

Real eval_potential_derivative(const Real& z, const Parameters& params) {
    if (z <= 0L) throw std::domain_error("eval_potential_derivative: z must be > 0");
    return 2L * z - params.lambda / z - params.t / (z * z);
}

PearsonResidual pearson_residual(const Real& x, const Parameters& params) {
    if (x <= 0L) throw std::domain_error("pearson_residual: x must be > 0");
    const Real w = eval_weight(x, params);
    // w'(x) = w * (lambda/x - 2x + t/x^2)
    const Real dw = w * (params.lambda / x - 2L * x + params.t / (x * x));
    const Real lhs = 2L * x * w + x * x * dw;
    const Real tau = -2L * x * x * x + (params.lambda + 2L) * x + params.t;
    const Real rhs = tau * w;
    return {lhs - rhs, abs(lhs) + abs(rhs)};
}

}  // namespace plw
