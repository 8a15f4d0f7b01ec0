#include "plw/numeric_policy.hpp"

#include "plw/errors.hpp"

#include <cmath>
#include <string>

namespace plw {

namespace {

const double kLog2Of10 = std::log2(10.0);

}  // namespace

void NumericPolicy::validate() const {
    if (precision_bits < 64)
        throw ConfigError("precision_bits must be >= 64, got " + std::to_string(precision_bits));
    if (target_digits < 1)
        throw ConfigError("target_digits must be positive");
    if (target_digits > working_digits() - kGuardDigits)
        throw ConfigError("target_digits " + std::to_string(target_digits) +
                          " exceeds what " + std::to_string(precision_bits) +
                          " bits support with a guard of " + std::to_string(kGuardDigits) + " digits");
    if (audit_factor < 2) throw ConfigError("audit_factor must be >= 2");
    if (digits_per_degree < 0) throw ConfigError("digits_per_degree must be nonnegative");
    if (max_quadrature_levels < 2) throw ConfigError("max_quadrature_levels must be >= 2");
}

int NumericPolicy::working_digits() const {
    return static_cast<int>(std::floor(static_cast<double>(precision_bits) / kLog2Of10));
}

Real NumericPolicy::identity_tolerance() const { return pow10_neg(target_digits - 5, precision_bits); }

Real NumericPolicy::target_epsilon() const { return pow10_neg(target_digits, precision_bits); }

NumericPolicy NumericPolicy::audited() const {
    NumericPolicy p = *this;
    p.precision_bits = precision_bits * audit_factor;
    return p;
}

NumericPolicy NumericPolicy::scaled(double factor) const {
    NumericPolicy p = *this;
    p.precision_bits = static_cast<Bits>(std::ceil(static_cast<double>(precision_bits) * factor));
    return p;
}

Bits required_precision(int n_max, int target_digits, double digits_per_degree) {
    if (n_max < 0) throw ConfigError("n_max must be nonnegative");
    if (target_digits < 10) throw ConfigError("target_digits must be >= 10");
    double digits = target_digits + digits_per_degree * n_max + kGuardDigits;
    auto bits = static_cast<Bits>(std::ceil(digits * kLog2Of10));
    return bits < 64 ? 64 : bits;
}

NumericPolicy make_policy(int n_max, int target_digits, double digits_per_degree) {
    NumericPolicy p;
    p.target_digits = target_digits;
    p.digits_per_degree = digits_per_degree;
    p.precision_bits = required_precision(n_max, target_digits, digits_per_degree);
    p.validate();
    return p;
}

}  // namespace plw
