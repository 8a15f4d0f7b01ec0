#pragma once

// Residuals of the second-order difference system (d1, d2), the
// differential-difference system (dd1, dd2) and the logarithmic-derivative
// identities used to prove it (eq1, eq2).
//
// t-derivatives come from fresh pipeline runs at t +- h (and t +- h/2 for a
// Richardson step), never from the ladder identities being tested.

#include "plw/pipeline.hpp"
#include "plw/residual.hpp"

#include <vector>

namespace plw {

/// d1 and d2 at 1 <= n <= N-1, in the recurrence coefficients only.
std::vector<ResidualEntry> residual_theorem1(const RecurrenceTable& rec, int n);

/// Raw (unnormalized) d1 and d2, with magnitudes.
struct Theorem1Terms {
    Tracked d1;
    Tracked d2;
};
Theorem1Terms theorem1_terms(const RecurrenceTable& rec, int n);

/// Proof-chain check: d2 = 2 (X - D r_n) + D (m1 - al2), where
/// D = 2n + lambda - 4 beta_n, X is the r_n numerator, and
///     al2: alpha_n - [r_n - r_{n+1} - 2 beta_n (alpha_n + alpha_{n-1})
///                     + 2 beta_{n+1} (alpha_{n+1} + alpha_n)].
/// Returns entries "al2" and "chain-d2".
std::vector<ResidualEntry> proof_chain_residuals(const RecurrenceTable& rec, const LadderTable& ladder, int n);

/// Pipelines at t and t +- h, plus t +- h/2 when built with half steps.
class TGrid {
public:
    /// Runs the 3 (or 5) pipelines, in parallel across points. Requires
    /// 0 < h < t. Every point uses center.policy.
    static TGrid build(const Parameters& center, int N, const Real& h, bool half_steps);

    const Real& t() const { return center_.params().t; }
    const Real& h() const { return h_; }
    int N() const { return center_.recurrence.N(); }
    bool has_half_steps() const { return minus_half_.has_value(); }

    const PipelineResult& center() const { return center_; }
    const PipelineResult& plus() const { return plus_; }
    const PipelineResult& minus() const { return minus_; }
    /// Throws std::logic_error without half steps.
    const PipelineResult& plus_half() const;
    const PipelineResult& minus_half() const;

private:
    TGrid(Real h, PipelineResult center, PipelineResult plus, PipelineResult minus,
          std::optional<PipelineResult> plus_half, std::optional<PipelineResult> minus_half);

    Real h_;
    PipelineResult center_;
    PipelineResult plus_;
    PipelineResult minus_;
    std::optional<PipelineResult> plus_half_;
    std::optional<PipelineResult> minus_half_;
};

/// Which difference quotient approximates d/dt.
enum class StepMode {
    Full,        // (f(t+h) - f(t-h)) / 2h
    Half,        // same with h/2
    Richardson,  // (4 D(h/2) - D(h)) / 3
};

const char* to_string(StepMode mode);

/// Raw terms of the t-derivative identities at n.
struct Theorem2Terms {
    Tracked dd1;
    Tracked dd2;
    Tracked eq1;
    Tracked eq2;
    /// t beta_n' - beta_n (R_{n-1} - R_n)
    Tracked beta_ladder;
    /// t alpha_n' - (r_n - r_{n+1})
    Tracked al4;
};
Theorem2Terms theorem2_terms(const TGrid& grid, int n, StepMode mode);

/// max(C h_eff^2, 10 * 10^-(target-5) / h_eff), h_eff the step of `mode`.
Real difference_tolerance(const TGrid& grid, StepMode mode);
inline constexpr long kDifferenceConstant = 100;

/// dd1, dd2 at 1 <= n <= N-1.
std::vector<ResidualEntry> residual_theorem2(const TGrid& grid, int n, StepMode mode = StepMode::Full);
/// eq1, eq2 at 1 <= n <= N-1.
std::vector<ResidualEntry> residual_logderiv(const TGrid& grid, int n, StepMode mode = StepMode::Full);

/// Default step 10^-(target_digits/3).
Real default_step(const NumericPolicy& policy);

}  // namespace plw
