#include "plw/verify.hpp"

#include "plw/errors.hpp"

#include <algorithm>

namespace plw {

namespace {

bool selected(const VerifyOptions& options, Suite suite) {
    return std::find(options.suites.begin(), options.suites.end(), suite) != options.suites.end();
}

void add_all(ResidualReport& report, std::vector<ResidualEntry> entries) {
    for (auto& e : entries) report.add(std::move(e));
}

void difference_suite(ResidualReport& report, const PipelineResult& run) {
    const RecurrenceTable& rec = run.recurrence;
    for (int n = 1; n <= rec.N() - 1; ++n) {
        add_all(report, residual_theorem1(rec, n));
        add_all(report, proof_chain_residuals(rec, run.ladder, n));
    }
}

void compat_suite(ResidualReport& report, const PipelineResult& run, const std::vector<ZSample>& z) {
    const RecurrenceTable& rec = run.recurrence;
    for (int n = 1; n <= rec.N() - 1; ++n) {
        add_all(report, coefficient_identity_residuals(rec, run.ladder, n));
        add_all(report, compat_pointwise_residuals(rec, run.ladder, n, z));
    }
}

void ladder_suite(ResidualReport& report, const PipelineResult& run) {
    const RecurrenceTable& rec = run.recurrence;
    const Parameters& params = rec.params();
    const LadderIntegrals integrals = compute_ladder_integrals(rec);
    const LadderTable integral = ladder_from_integrals(rec, integrals);
    for (int n : default_integral_subset(rec.N() - 1)) {
        add_all(report, cross_path_residuals(run.ladder, integral, n));
        add_all(report, lemma_integral_residuals(rec, integrals, n));
    }
    const Real tol = params.policy.identity_tolerance();
    for (int n = 0; n <= rec.N(); ++n) {
        const Tracked sum = Tracked(run.ladder.sum_alpha(n)) + Tracked(rec.p(n));
        report.add(make_entry("sum-rule", n, params.lambda, params.t, sum, tol));
    }
}

void diffdiff_suite(ResidualReport& report, const Parameters& params, int N, const VerifyOptions& options) {
    const Real h = options.h ? *options.h : default_step(params.policy);
    const TGrid grid = TGrid::build(params, N, h, options.richardson);
    const StepMode mode = options.richardson ? StepMode::Richardson : StepMode::Full;
    for (int n = 1; n <= N - 1; ++n) {
        add_all(report, residual_theorem2(grid, n, mode));
        add_all(report, residual_logderiv(grid, n, mode));
    }
}

void pearson_suite(ResidualReport& report, const Parameters& params) {
    const Real tol = params.policy.identity_tolerance();
    for (const ZSample& sample : pearson_samples(params.precision())) {
        const PearsonResidual p = pearson_residual(sample.z, params);
        Real normalized = abs(p.residual);
        if (!p.scale.is_zero()) normalized /= p.scale;
        report.add(make_entry("pearson@x=" + sample.label, 0, params.lambda, params.t, normalized, p.scale, tol));
    }
}

}  // namespace

std::vector<ZSample> pearson_samples(Bits prec) {
    std::vector<ZSample> out;
    for (const char* x : {"0.1", "0.3", "1", "2", "5"}) out.push_back({x, Real::from_string(x, prec)});
    return out;
}

AsymptoticRun fit_asymptotics(const RecurrenceTable& rec, const std::vector<int>& samples) {
    AsymptoticModel model = expansion_coefficients(rec.params().lambda, rec.params().t);
    DecayFit alpha = decay_fit(rec, model, Which::Alpha, samples);
    DecayFit beta = decay_fit(rec, model, Which::Beta, samples);
    return {std::move(model), std::move(alpha), std::move(beta)};
}

std::vector<ResidualEntry> asymptotic_entries(const RecurrenceTable& rec, const AsymptoticRun& run, double band) {
    const Parameters& params = rec.params();
    const Bits prec = params.precision();
    const Real one = Real::one(prec);
    std::vector<ResidualEntry> out;
    for (const DecayFit* fit : {&run.alpha, &run.beta}) {
        const std::string name = to_string(fit->which);
        out.push_back(make_entry("asym-slope-" + name, fit->n_max, params.lambda, params.t,
                                 Real(std::abs(fit->slope - fit->expected_slope()), prec), one, Real(band, prec)));
        for (const DecayPoint& p : fit->points)
            out.push_back(make_entry("asym-dominance-" + name, p.n, params.lambda, params.t,
                                     abs(p.residual) / p.last_term, p.last_term, one));
    }
    return out;
}

ResidualReport verify_point(const Parameters& params, int N, const VerifyOptions& options) {
    ResidualReport report(params.policy);
    const bool needs_pipeline = selected(options, Suite::Difference) || selected(options, Suite::Compat) ||
                                selected(options, Suite::Ladder) || selected(options, Suite::Asym);
    if (selected(options, Suite::Asym) && N < 64) throw ConfigError("the asym suite needs nmax >= 64");

    if (needs_pipeline) {
        PipelineResult run = run_pipeline(params, N);
        if (options.corrupt_beta) {
            const int k = *options.corrupt_beta;
            const Real factor = Real::one(params.precision()) + pow10_neg(params.policy.target_digits / 3,
                                                                          params.precision());
            run.recurrence = run.recurrence.with_beta(k, run.recurrence.beta(k) * factor);
            run.ladder = ladder_from_identities(run.recurrence);
        }
        const std::vector<ZSample> z =
            options.z_samples.empty() ? default_z_samples(params.precision()) : options.z_samples;
        if (selected(options, Suite::Difference)) difference_suite(report, run);
        if (selected(options, Suite::Compat)) compat_suite(report, run, z);
        if (selected(options, Suite::Ladder)) ladder_suite(report, run);
        if (selected(options, Suite::Asym)) {
            const AsymptoticRun fits = fit_asymptotics(run.recurrence, default_asym_samples(N));
            add_all(report, asymptotic_entries(run.recurrence, fits, options.slope_band));
        }
    }
    if (selected(options, Suite::DiffDiff)) diffdiff_suite(report, params, N, options);
    if (selected(options, Suite::Pearson)) pearson_suite(report, params);
    return report;
}

}  // namespace plw
