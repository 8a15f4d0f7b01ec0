#include "plw/pipeline.hpp"

#include "plw/errors.hpp"

#include <ostream>

namespace plw {

PipelineResult run_pipeline(const Parameters& params, int N) {
    if (N < 1) throw ConfigError("N must be >= 1");
    Parameters current = params;
    for (int attempt = 1;; ++attempt) {
        MomentTable moments = compute_moments(current, -2, 2 * N + 2);
        try {
            RecurrenceTable rec = recurrence_from_moments(moments, N);
            LadderTable ladder = ladder_from_identities(rec);
            return PipelineResult{std::move(moments), std::move(rec), std::move(ladder), attempt};
        } catch (const CholeskyBreakdown&) {
            if (attempt > kMaxPrecisionRetries) throw;
            current = current.with_policy(current.policy.audited());
        }
    }
}

AuditResult audit_against(const PipelineResult& base, const PipelineResult& audit) {
    const RecurrenceTable& a = base.recurrence;
    const RecurrenceTable& b = audit.recurrence;
    if (a.N() != b.N()) throw std::invalid_argument("audit_against: runs differ in N");
    const Bits prec = b.params().precision();
    AuditResult out{Real(0L, prec), "", 0, false};
    auto compare = [&](const char* name, int n, const Real& x, const Real& ref) {
        Real d = abs(x - ref) / max(abs(ref), Real::one(prec));
        if (d > out.max_difference || out.worst.empty()) {
            out.max_difference = std::move(d);
            out.worst = name;
            out.worst_n = n;
        }
    };
    for (int n = 0; n <= a.N(); ++n) {
        compare("alpha", n, a.alpha(n), b.alpha(n));
        compare("beta", n, a.beta(n), b.beta(n));
        compare("h", n, a.h(n), b.h(n));
        compare("p", n, a.p(n), b.p(n));
        compare("R", n, base.ladder.R(n), audit.ladder.R(n));
        compare("r", n, base.ladder.r(n), audit.ladder.r(n));
    }
    out.pass = out.max_difference <= base.params().policy.target_epsilon();
    return out;
}

AuditResult audit_pipeline(const PipelineResult& base) {
    const Parameters& params = base.params();
    return audit_against(base, run_pipeline(params.with_policy(params.policy.audited()), base.recurrence.N()));
}

void write_pipeline_csv(std::ostream& os, const PipelineResult& run) {
    const RecurrenceTable& rec = run.recurrence;
    const Parameters& params = rec.params();
    const int digits = params.policy.target_digits;
    os << "# lambda = " << params.lambda.to_string(digits) << '\n'
       << "# t = " << params.t.to_string(digits) << '\n'
       << "# precision_bits = " << params.precision() << '\n'
       << "# target_digits = " << digits << '\n'
       << "n,alpha,beta,h,p,R,r\n";
    for (int n = 0; n <= rec.N(); ++n)
        os << n << ',' << rec.alpha(n).to_string(digits) << ',' << rec.beta(n).to_string(digits) << ','
           << rec.h(n).to_string(digits) << ',' << rec.p(n).to_string(digits) << ','
           << run.ladder.R(n).to_string(digits) << ',' << run.ladder.r(n).to_string(digits) << '\n';
}

nlohmann::ordered_json pipeline_to_json(const PipelineResult& run) {
    const RecurrenceTable& rec = run.recurrence;
    const Parameters& params = rec.params();
    const int digits = params.policy.target_digits;
    nlohmann::ordered_json doc;
    doc["lambda"] = params.lambda.to_string(digits);
    doc["t"] = params.t.to_string(digits);
    doc["precision_bits"] = params.precision();
    doc["target_digits"] = digits;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int n = 0; n <= rec.N(); ++n) {
        nlohmann::ordered_json row;
        row["n"] = n;
        row["alpha"] = rec.alpha(n).to_string(digits);
        row["beta"] = rec.beta(n).to_string(digits);
        row["h"] = rec.h(n).to_string(digits);
        row["p"] = rec.p(n).to_string(digits);
        row["R"] = run.ladder.R(n).to_string(digits);
        row["r"] = run.ladder.r(n).to_string(digits);
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    return doc;
}

}  // namespace plw
