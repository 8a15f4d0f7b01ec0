#pragma once

#include "plw/moments.hpp"
#include "plw/quadrature.hpp"

#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

namespace plw {

/// Recurrence data of the monic orthogonal polynomials
///     x P_n = P_{n+1} + alpha_n P_n + beta_n P_{n-1}.
///
/// alpha is held for n = 0..N. The factorization that produces alpha_N also
/// yields h_{N+1}, so h, beta and p extend to index N+1; beta_0 is stored as
/// 0 by convention and p(0) = 0.
class RecurrenceTable {
public:
    RecurrenceTable(Parameters params, int n, std::vector<Real> alpha, std::vector<Real> beta, std::vector<Real> h,
                    std::vector<Real> p, std::shared_ptr<const DeQuadrature> quadrature);

    const Parameters& params() const { return params_; }
    int N() const { return n_; }

    /// Bounds-checked accessors: alpha for 0..N; beta, h, p for 0..N+1.
    const Real& alpha(int n) const;
    const Real& beta(int n) const;
    const Real& h(int n) const;
    const Real& p(int n) const;

    std::span<const Real> alphas() const { return alpha_; }
    std::span<const Real> betas() const { return beta_; }

    /// Node set inherited from the moment table.
    const std::shared_ptr<const DeQuadrature>& quadrature() const { return quadrature_; }

    /// Copy with beta_n replaced (fault-injection hook for verification tests).
    RecurrenceTable with_beta(int n, const Real& value) const;

private:
    Parameters params_;
    int n_;
    std::vector<Real> alpha_;
    std::vector<Real> beta_;
    std::vector<Real> h_;
    std::vector<Real> p_;
    std::shared_ptr<const DeQuadrature> quadrature_;
};

/// Factors the (N+2)x(N+2) Hankel matrix M = L L^T and reads off
///     h_n = L_nn^2, beta_n = h_n / h_{n-1},
///     alpha_n = L_{n+1,n}/L_nn - L_{n,n-1}/L_{n-1,n-1},
///     p(n) = -sum_{j<n} alpha_j.
/// Needs moments for k = 0..2N+2. Throws CholeskyBreakdown when the working
/// precision cannot resolve the matrix.
RecurrenceTable recurrence_from_moments(const MomentTable& moments, int N);
RecurrenceTable recurrence_from_moments_serial(const MomentTable& moments, int N);

/// P_n(x) by forward recurrence. Requires 0 <= n <= N.
Real eval_polynomial(const RecurrenceTable& rec, int n, const Real& x);

/// P_0(x), ..., P_{out.size()-1}(x). out.size() must not exceed N + 1.
void eval_polynomials(const RecurrenceTable& rec, const Real& x, std::span<Real> out);

/// |int P_m P_n w - h_n delta_mn| / h_max(m,n), by quadrature on the
/// recurrence table's node set.
Real orthogonality_residual(const RecurrenceTable& rec, int m, int n);

/// Comment header (lambda, t, precision_bits, target_digits) followed by
/// "n,alpha,beta,h,p" rows for n = 0..N.
void write_recurrence_csv(std::ostream& os, const RecurrenceTable& rec);

}  // namespace plw
