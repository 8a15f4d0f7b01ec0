#pragma once

// Ladder-operator auxiliary quantities
//     R_n = t/h_n     int P_n^2 w / y dy,
//     r_n = t/h_{n-1} int P_n P_{n-1} w / y dy,
// which fix A_n(z) = 2 + 2 alpha_n/z + R_n/z^2 and
// B_n(z) = (2 beta_n - n)/z + r_n/z^2.
//
// Two independent routes: closed forms in the recurrence coefficients
// (production) and direct quadrature (verification oracle).

#include "plw/recurrence.hpp"
#include "plw/residual.hpp"

#include <optional>
#include <string>
#include <vector>

namespace plw {

enum class LadderSource { Identity, Integral };

const char* to_string(LadderSource source);

class LadderTable {
public:
    LadderTable(Parameters params, int n, std::vector<Real> R, std::vector<Real> r, std::vector<Real> sum_alpha,
                LadderSource source, std::vector<int> r_fallback = {});

    const Parameters& params() const { return params_; }
    int N() const { return n_; }
    LadderSource source() const { return source_; }

    /// R_n for 0 <= n <= N.
    const Real& R(int n) const;
    /// r_n for 0 <= n <= N; r_0 = 0 since P_{-1} = 0.
    const Real& r(int n) const;
    /// sum_{j<n} R_j for 0 <= n <= N+1.
    const Real& sum_R(int n) const;
    /// sum_{j<n} alpha_j for 0 <= n <= N+1.
    const Real& sum_alpha(int n) const;

    /// Indices where r_n came from quadrature because the closed form's
    /// denominator 2n + lambda - 4 beta_n was too close to zero.
    const std::vector<int>& r_fallback() const { return r_fallback_; }

private:
    Parameters params_;
    int n_;
    std::vector<Real> R_;
    std::vector<Real> r_;
    std::vector<Real> sum_R_;
    std::vector<Real> sum_alpha_;
    LadderSource source_;
    std::vector<int> r_fallback_;
};

/// R_n = 2 alpha_n^2 + 2 beta_n + 2 beta_{n+1} - 2n - 1 - lambda, 0 <= n <= N.
Real R_from_identity(const RecurrenceTable& rec, int n);

/// r_n = [n t - 2 t beta_n - 2 alpha_n beta_n R_{n-1} - 2 alpha_{n-1} beta_n R_n]
///       / (2n + lambda - 4 beta_n), with R_{n-1}, R_n in closed form.
/// 1 <= n <= N. Empty when |2n + lambda - 4 beta_n| <= 10^(-target_digits/2).
std::optional<Real> r_from_identity(const RecurrenceTable& rec, int n);

/// Raw integrals on the recurrence table's node set, n = 0..N:
/// diag[n] = int P_n^2 w / y, off[n] = int P_n P_{n-1} w / y (off[0] = 0),
/// and the same with 1/y^2.
struct LadderIntegrals {
    std::vector<Real> diag;
    std::vector<Real> off;
    std::vector<Real> diag_sq;
    std::vector<Real> off_sq;
    int level = 0;
};
LadderIntegrals compute_ladder_integrals(const RecurrenceTable& rec);

/// Production ladder: closed forms, with quadrature only where the r_n
/// denominator guard fires.
LadderTable ladder_from_identities(const RecurrenceTable& rec);
LadderTable ladder_from_integrals(const RecurrenceTable& rec, const LadderIntegrals& integrals);
LadderTable ladder_from_integrals(const RecurrenceTable& rec);

/// Coefficient identities from comparing Laurent coefficients of the
/// compatibility conditions: m1, m2, s1, s2, s3, s4. Requires 1 <= n <= N-1.
std::vector<ResidualEntry> coefficient_identity_residuals(const RecurrenceTable& rec, const LadderTable& ladder,
                                                          int n);

/// A sample point for the pointwise compatibility checks.
struct ZSample {
    std::string label;
    Real z;
};
std::vector<ZSample> default_z_samples(Bits prec);

/// S1, S2 and S2' evaluated pointwise at each z. Requires 1 <= n <= N-1.
std::vector<ResidualEntry> compat_pointwise_residuals(const RecurrenceTable& rec, const LadderTable& ladder, int n,
                                                      const std::vector<ZSample>& z_samples);

/// Integration-by-parts identities relating the 1/y and 1/y^2 integrals:
///   e1: lambda I_n/h_n = 2 alpha_n - t J_n/h_n
///   e2: lambda I'_n/h_{n-1} = -n + 2 beta_n - t J'_n/h_{n-1}   (n >= 1)
std::vector<ResidualEntry> lemma_integral_residuals(const RecurrenceTable& rec, const LadderIntegrals& integrals,
                                                    int n);

/// |R_integral - R_identity| / |R_identity| and likewise for r (n >= 1).
std::vector<ResidualEntry> cross_path_residuals(const LadderTable& identity, const LadderTable& integral, int n);

/// Default subset of n for the quadrature oracle: all n <= 20, then every
/// 10th, capped at `last`.
std::vector<int> default_integral_subset(int last);

}  // namespace plw
