#pragma once

// Runs the selected identity suites at one (lambda, t) and collects every
// (identity, n) residual into a report.

#include "plw/asymptotics.hpp"
#include "plw/run_config.hpp"
#include "plw/theorems.hpp"

#include <optional>
#include <vector>

namespace plw {

struct VerifyOptions {
    std::vector<Suite> suites = default_suites();
    /// Finite-difference step for diffdiff; default_step(policy) if unset.
    std::optional<Real> h;
    bool richardson = false;
    /// Multiply beta at this index by 1 + 10^-(target_digits/3) before
    /// checking (fault injection).
    std::optional<int> corrupt_beta;
    /// Empty means default_z_samples.
    std::vector<ZSample> z_samples;
    double slope_band = kDefaultSlopeBand;
};

/// Sample points for the Pearson check.
std::vector<ZSample> pearson_samples(Bits prec);

/// Suite by suite:
///   difference  d1, d2, al2, chain-d2 for 1 <= n <= N-1
///   compat      m1, m2, s1..s4 and S1, S2, S2' at each z, 1 <= n <= N-1
///   ladder      R-cross, r-cross, e1, e2 on default_integral_subset(N-1),
///               sum-rule for 0 <= n <= N
///   diffdiff    dd1, dd2, eq1, eq2 for 1 <= n <= N-1
///   pearson     pointwise Pearson equation
///   asym        slope and remainder-dominance checks (N >= 64)
ResidualReport verify_point(const Parameters& params, int N, const VerifyOptions& options);

/// Asymptotic fits for both coefficients of an existing run.
struct AsymptoticRun {
    AsymptoticModel model;
    DecayFit alpha;
    DecayFit beta;
};
AsymptoticRun fit_asymptotics(const RecurrenceTable& rec, const std::vector<int>& samples);

/// Report entries for the asym suite.
std::vector<ResidualEntry> asymptotic_entries(const RecurrenceTable& rec, const AsymptoticRun& run, double band);

}  // namespace plw
