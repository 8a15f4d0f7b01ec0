// Acceptance run: one PASS/FAIL line per criterion.
//     acceptance                  all criteria
//     acceptance --criterion K    only K (repeatable)

#include "plw/asymptotics.hpp"
#include "plw/errors.hpp"
#include "plw/pipeline.hpp"
#include "plw/theorems.hpp"

#include "oracles.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace plw;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Point {
    const char* lambda;
    const char* t;
};

const std::vector<Point>& identity_grid() {
    static const std::vector<Point> grid = [] {
        std::vector<Point> g;
        for (const char* l : {"0", "1", "2.5"})
            for (const char* t : {"0.5", "1", "2"}) g.push_back({l, t});
        return g;
    }();
    return grid;
}

std::string where(const Point& p) { return std::string("(") + p.lambda + ", " + p.t + ")"; }

std::string sci(const Real& x) { return x.to_string(3); }

// Largest residual over a set of entries, with its label.
struct Worst {
    Real value = Real(0L, 64);
    std::string label = "none";

    void take(const ResidualEntry& e, const Point& p) {
        if (!(e.residual <= value)) {
            value = e.residual;
            label = e.identity + " n=" + std::to_string(e.n) + " at " + where(p);
        }
    }
    void take(const Real& r, const std::string& what) {
        if (!(r <= value)) {
            value = r;
            label = what;
        }
    }
};

constexpr int kGridN = 50;
constexpr int kDigits = 30;

PipelineResult grid_run(const Point& p) {
    return run_pipeline(Parameters::make(p.lambda, p.t, make_policy(kGridN + 1, kDigits)), kGridN);
}

Outcome criterion1() {
    const Real tol = pow10_neg(25, 64);
    Worst worst;
    for (const Point& p : identity_grid()) {
        const PipelineResult run = grid_run(p);
        for (int n = 1; n <= 49; ++n)
            for (const auto& e : residual_theorem1(run.recurrence, n)) worst.take(e, p);
    }
    return {worst.value <= tol, "max d1/d2 residual " + sci(worst.value) + " (" + worst.label + "), bound 1e-25"};
}

Outcome criterion2() {
    const Real tol = pow10_neg(25, 64);
    Worst worst;
    std::size_t count = 0;
    for (const Point& p : identity_grid()) {
        const PipelineResult run = grid_run(p);
        const auto z = default_z_samples(run.params().precision());
        for (int n = 1; n <= 49; ++n) {
            for (const auto& e : coefficient_identity_residuals(run.recurrence, run.ladder, n)) worst.take(e, p), ++count;
            for (const auto& e : compat_pointwise_residuals(run.recurrence, run.ladder, n, z)) worst.take(e, p), ++count;
        }
    }
    return {worst.value <= tol, std::to_string(count) + " residuals, max " + sci(worst.value) + " (" + worst.label +
                                    "), bound 1e-25"};
}

Outcome criterion3() {
    const Real tol = pow10_neg(25, 64);
    Worst worst;
    for (const Point& p : identity_grid()) {
        const PipelineResult run = grid_run(p);
        const LadderTable integral = ladder_from_integrals(run.recurrence);
        for (int n = 0; n <= 20; ++n)
            for (const auto& e : cross_path_residuals(run.ladder, integral, n)) worst.take(e, p);
    }
    return {worst.value <= tol, "max relative gap " + sci(worst.value) + " (" + worst.label + "), bound 1e-25"};
}

Outcome criterion4() {
    const int N = 31;
    const Real bound = pow10_neg(18, 64);
    Worst worst;
    double lo = 1e9, hi = -1e9;
    std::size_t ratios = 0, floored = 0;
    for (const Point& p : identity_grid()) {
        const Parameters params = Parameters::make(p.lambda, p.t, make_policy(N + 1, 60));
        const Real h = pow10_neg(10, params.precision());
        const TGrid grid = TGrid::build(params, N, h, true);
        // residuals below this are set by rounding in the differences, not by h
        const Real floor = params.policy.target_epsilon() / (h / 2L) * 1000L;
        for (int n = 1; n <= 30; ++n) {
            auto full = residual_theorem2(grid, n, StepMode::Full);
            auto half = residual_theorem2(grid, n, StepMode::Half);
            const auto lf = residual_logderiv(grid, n, StepMode::Full);
            const auto lh = residual_logderiv(grid, n, StepMode::Half);
            full.insert(full.end(), lf.begin(), lf.end());
            half.insert(half.end(), lh.begin(), lh.end());
            for (std::size_t i = 0; i < full.size(); ++i) {
                worst.take(full[i], p);
                if (half[i].residual <= floor) {
                    ++floored;
                    continue;
                }
                const double r = (full[i].residual / half[i].residual).to_double();
                lo = std::min(lo, r);
                hi = std::max(hi, r);
                ++ratios;
            }
        }
    }
    const bool pass = worst.value <= bound && ratios > 0 && lo >= 3.5 && hi <= 4.5;
    char buf[160];
    std::snprintf(buf, sizeof buf, "; halving ratio in [%.4f, %.4f] over %zu residuals (%zu at rounding floor)", lo,
                  hi, ratios, floored);
    return {pass, "max residual at h=1e-10 " + sci(worst.value) + " (" + worst.label + "), bound 1e-18" + buf};
}

Outcome criterion5() {
    const int N = 10;
    const Real tol = pow10_neg(25, 64);
    Worst worst;
    for (const Point& p : {Point{"1", "1"}, Point{"2.5", "0.5"}}) {
        const PipelineResult run =
            run_pipeline(Parameters::make(p.lambda, p.t, make_policy(N + 1, kDigits)), N);
        const Bits ob = 500;
        const Real l = Real::from_string(p.lambda, ob);
        const Real t = Real::from_string(p.t, ob);
        std::vector<Real> mu;
        for (long k = 0; k <= 2 * N + 2; ++k) mu.push_back(oracle::moment(k, l, t, ob));
        auto rel = [](const Real& a, const Real& b) { return abs(a - b) / abs(b); };
        for (int n = 0; n <= N; ++n) {
            const auto un = static_cast<std::size_t>(n);
            const Real h_ref = oracle::hankel_det(mu, un + 1) / oracle::hankel_det(mu, un);
            worst.take(rel(run.recurrence.h(n), h_ref), "h_" + std::to_string(n) + " at " + where(p));
            if (n >= 1) {
                const Real p_ref = -oracle::shifted_hankel_det(mu, un) / oracle::hankel_det(mu, un);
                worst.take(rel(run.recurrence.p(n), p_ref), "p_" + std::to_string(n) + " at " + where(p));
            }
        }
    }
    return {worst.value <= tol, "max relative gap to determinant ratios " + sci(worst.value) + " (" + worst.label +
                                    "), bound 1e-25"};
}

Outcome criterion6() {
    const int N = 200;
    const PipelineResult run = run_pipeline(Parameters::make("1", "1", make_policy(N + 1, kDigits)), N);
    const Bits b = run.params().precision();
    const Real n(200L, b);
    const Real c = sqrt(Real(2L, b) / 3L);
    const Real da = abs(run.recurrence.alpha(N) / sqrt(n) - c) / c;
    const Real db = abs(run.recurrence.beta(N) / n - Real::one(b) / 6L) * 6L;
    const Real band = Real(0.02, b);
    return {da <= band && db <= band, "alpha_200/sqrt(200) off by " + sci(da) + ", beta_200/200 off by " + sci(db) +
                                          " (relative), bound 0.02"};
}

Outcome criterion7() {
    const int N = 256;
    const std::vector<int> samples{64, 91, 128, 181, 256};
    const PipelineResult run = run_pipeline(Parameters::make("1", "1", make_policy(N + 1, kDigits)), N);
    const AsymptoticModel model = expansion_coefficients(run.params().lambda, run.params().t);
    const DecayFit a = decay_fit(run.recurrence, model, Which::Alpha, samples);
    const DecayFit b = decay_fit(run.recurrence, model, Which::Beta, samples);
    const bool pa = a.slope >= -2.8 && a.slope <= -2.2;
    const bool pb = b.slope >= -2.3 && b.slope <= -1.7;
    char buf[200];
    std::snprintf(buf, sizeof buf, "alpha slope %.3f in [-2.8, -2.2]: %s; beta slope %.3f in [-2.3, -1.7]: %s",
                  a.slope, pa ? "yes" : "no", b.slope, pb ? "yes" : "no");
    return {pa && pb, buf};
}

Outcome criterion8() {
    Worst worst;
    for (const Point& p : identity_grid()) {
        const PipelineResult base = grid_run(p);
        const PipelineResult high = run_pipeline(base.params().with_policy(base.params().policy.audited()), kGridN);
        const AuditResult a = audit_against(base, high);
        worst.take(a.max_difference, a.worst + "_" + std::to_string(a.worst_n) + " at " + where(p));
        const LadderTable lo = ladder_from_integrals(base.recurrence);
        const LadderTable hi = ladder_from_integrals(high.recurrence);
        for (int n = 0; n <= 20; ++n) {
            auto gap = [](const Real& x, const Real& y) { return abs(x - y) / max(abs(y), Real::one(y.precision())); };
            worst.take(gap(lo.R(n), hi.R(n)), "integral R_" + std::to_string(n) + " at " + where(p));
            worst.take(gap(lo.r(n), hi.r(n)), "integral r_" + std::to_string(n) + " at " + where(p));
        }
    }
    const Real tol = pow10_neg(kDigits, 64);
    return {worst.value <= tol, "max difference against doubled precision " + sci(worst.value) + " (" + worst.label +
                                    "), bound 1e-30"};
}

Outcome criterion9() {
    Worst worst;
    const Bits ob = 500;
    for (const Point& p : {Point{"0", "1"}, Point{"1", "1"}}) {
        const Parameters params = Parameters::make(p.lambda, p.t, make_policy(2, kDigits));
        const MomentTable table = compute_moments(params, -2, 2);
        const Real l = Real::from_string(p.lambda, ob);
        const Real t = Real::from_string(p.t, ob);
        for (int k : {-1, 0}) {
            const Real ref = oracle::moment(k, l, t, ob);
            worst.take(abs(table.mu(k) - ref) / abs(ref), "mu_" + std::to_string(k) + " at " + where(p));
        }
    }
    const Parameters zero = Parameters::make("0", "1", make_policy(2, kDigits));
    const Real mu2 = compute_moments(zero, -2, 2).mu(2);
    const Real half_gauss = sqrt(Real::pi(zero.precision())) / 4L;
    const bool below = mu2 < half_gauss;
    const Real tol = pow10_neg(kDigits, 64);
    return {worst.value <= tol && below, "max relative gap to oracle " + sci(worst.value) + " (" + worst.label +
                                             "); mu_2(0, 1) = " + mu2.to_string(12) + (below ? " < " : " >= ") +
                                             "sqrt(pi)/4 = " + half_gauss.to_string(12)};
}

const char* const kTitles[] = {
    "",
    "difference equations on the (lambda, t) grid",
    "compatibility and coefficient identities",
    "ladder quantities from integrals vs closed forms",
    "t-derivative equations and second-order convergence",
    "Cholesky vs determinant oracle",
    "leading order at n = 200",
    "remainder order of the large-n expansions",
    "doubled-precision audit",
    "quadrature vs oracle moments",
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance criteria"};
    std::vector<int> chosen;
    app.add_option("--criterion", chosen, "criterion number 1-9 (repeatable)")->check(CLI::Range(1, 9));
    CLI11_PARSE(app, argc, argv);
    if (chosen.empty())
        for (int k = 1; k <= 9; ++k) chosen.push_back(k);

    const std::function<Outcome()> criteria[] = {nullptr,     criterion1, criterion2, criterion3, criterion4,
                                                 criterion5, criterion6, criterion7, criterion8, criterion9};
    bool all = true;
    for (int k : chosen) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        char head[96];
        std::snprintf(head, sizeof head, "criterion %d: %s", k, o.pass ? "PASS" : "FAIL");
        std::cout << head << "  " << kTitles[k] << "; " << o.detail;
        std::cout << " [" << static_cast<long>(secs + 0.5) << " s]" << std::endl;
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
