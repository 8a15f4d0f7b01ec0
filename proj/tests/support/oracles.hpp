#pragma once

// Test-only oracles, written independently of the production paths.

#include "plw/real.hpp"

#include <vector>

namespace plw::oracle {

/// mu_k by the substitution x = e^u and a plain trapezoidal sum on the whole
/// line (the integrand decays double-exponentially in both directions).
/// Accurate to roughly the working precision of `prec` for moderate k.
Real moment(long k, const Real& lambda, const Real& t, Bits prec);

/// Determinant by Gaussian elimination with partial pivoting (row-major n x n).
Real determinant(std::vector<Real> a, std::size_t n);

/// D_n = det[mu_{i+j}], 0 <= i, j < n; D_0 = 1.
Real hankel_det(const std::vector<Real>& mu, std::size_t n);

/// Hankel determinant with the last column's index shifted by one:
/// columns 0..n-2 and n of [mu_{i+j}], rows 0..n-1. For n >= 1.
Real shifted_hankel_det(const std::vector<Real>& mu, std::size_t n);

}  // namespace plw::oracle
