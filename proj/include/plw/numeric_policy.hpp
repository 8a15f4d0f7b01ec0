#pragma once

#include "plw/real.hpp"

namespace plw {

/// Decimal digits held back from the working precision when checking that
/// a requested target is attainable.
inline constexpr int kGuardDigits = 10;

/// Numeric policy for one pipeline run. Immutable once built.
struct NumericPolicy {
    Bits precision_bits = 133;
    /// Significant decimal digits requested for final outputs.
    int target_digits = 30;
    /// Precision multiplier for re-verification runs.
    int audit_factor = 2;
    /// Extra decimal digits budgeted per polynomial degree for Hankel
    /// ill-conditioning.
    double digits_per_degree = 2.0;
    /// Cap on quadrature refinement levels.
    int max_quadrature_levels = 14;

    /// Throws ConfigError if the invariants do not hold.
    void validate() const;

    /// Decimal digits carried by the working precision.
    int working_digits() const;

    /// 10^-(target_digits - 5): pass threshold for exact identities.
    Real identity_tolerance() const;
    /// 10^-target_digits.
    Real target_epsilon() const;

    /// Same policy with precision multiplied by audit_factor.
    NumericPolicy audited() const;
    /// Same policy with precision scaled by `factor`.
    NumericPolicy scaled(double factor) const;
};

/// ceil((target_digits + c*n_max + guard) * log2(10)), at least 64.
/// Monotone nondecreasing in both n_max and target_digits.
Bits required_precision(int n_max, int target_digits, double digits_per_degree = 2.0);

/// Policy sized for polynomials up to degree n_max.
NumericPolicy make_policy(int n_max, int target_digits, double digits_per_degree = 2.0);

}  // namespace plw
