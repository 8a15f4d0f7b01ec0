#pragma once

// One full computation for a single (lambda, t): moments, recurrence
// coefficients and the identity-path ladder table.

#include "plw/ladder.hpp"
#include "plw/moments.hpp"
#include "plw/recurrence.hpp"

#include <nlohmann/json.hpp>

#include <iosfwd>
#include <string>

namespace plw {

struct PipelineResult {
    MomentTable moments;
    RecurrenceTable recurrence;
    LadderTable ladder;
    /// Factorizations attempted; > 1 when a Cholesky breakdown forced a
    /// precision increase.
    int attempts = 1;

    const Parameters& params() const { return recurrence.params(); }
};

/// Retries allowed after a Cholesky breakdown, each at audit_factor times
/// the previous precision.
inline constexpr int kMaxPrecisionRetries = 3;

/// Moments k = -2..2N+2, recurrence to N, ladder by the closed forms.
/// Throws CholeskyBreakdown if every retry breaks down.
PipelineResult run_pipeline(const Parameters& params, int N);

/// Agreement of a run with its recomputation at audit_factor times the
/// precision: max over alpha, beta, h, p, R, r of |x - x'| / max(|x'|, 1).
struct AuditResult {
    Real max_difference;
    /// Name and index of the worst quantity.
    std::string worst;
    int worst_n = 0;
    bool pass = false;
};
AuditResult audit_against(const PipelineResult& base, const PipelineResult& audit);
AuditResult audit_pipeline(const PipelineResult& base);

/// Comment header, then n,alpha,beta,h,p,R,r for n = 0..N at target digits.
void write_pipeline_csv(std::ostream& os, const PipelineResult& run);
/// {"lambda", "t", "precision_bits", "target_digits", "rows": [{n, alpha, beta, h, p, R, r}]}
nlohmann::ordered_json pipeline_to_json(const PipelineResult& run);

}  // namespace plw
