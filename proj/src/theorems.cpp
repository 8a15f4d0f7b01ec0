#include "plw/theorems.hpp"

#include "plw/errors.hpp"

#include <array>
#include <exception>
#include <stdexcept>

namespace plw {

namespace {

void require_interior(int N, int n, const char* what) {
    if (n < 1 || n > N - 1)
        throw std::out_of_range(std::string(what) + ": n must lie in [1, N-1], got " + std::to_string(n));
}

// Pieces shared by d1, d2 and the r_n closed form.
struct DifferenceParts {
    Tracked u;  // R_{n-1} in closed form
    Tracked v;  // R_n in closed form
    Tracked x;  // r_n numerator
    Tracked y;
    Tracked d;  // 2n + lambda - 4 beta_n
};

DifferenceParts difference_parts(const RecurrenceTable& rec, int n) {
    const Tracked a(rec.alpha(n));
    const Tracked a_prev(rec.alpha(n - 1));
    const Tracked b(rec.beta(n));
    const Tracked b_prev(rec.beta(n - 1));
    const Tracked b_next(rec.beta(n + 1));
    const Tracked lambda(rec.params().lambda);
    const Tracked t(rec.params().t);

    DifferenceParts p;
    p.u = 2L * a_prev * a_prev + 2L * b + 2L * b_prev - 2L * n + 1L - lambda;
    p.v = 2L * a * a + 2L * b + 2L * b_next - 2L * n - 1L - lambda;
    p.x = n * t - 2L * t * b - 2L * a * b * p.u - 2L * a_prev * b * p.v;
    p.y = (lambda + n) * t - 2L * t * b + 2L * a * b * p.u + 2L * a_prev * b * p.v;
    p.d = lambda + 2L * n - 4L * b;
    return p;
}

Tracked d2_bracket(const RecurrenceTable& rec, int n) {
    const Tracked a(rec.alpha(n));
    const Tracked a_prev(rec.alpha(n - 1));
    const Tracked a_next(rec.alpha(n + 1));
    const Tracked b(rec.beta(n));
    const Tracked b_next(rec.beta(n + 1));
    const Tracked lambda(rec.params().lambda);
    const Tracked t(rec.params().t);
    return 2L * a * a * a - (lambda + 2L * n + 2L) * a - t + 4L * a * b_next - 2L * a_prev * b +
           2L * a_next * b_next;
}

using Reading = Real (*)(const RecurrenceTable&, const LadderTable&, int);

Real read_alpha(const RecurrenceTable& rec, const LadderTable&, int n) { return rec.alpha(n); }
Real read_beta(const RecurrenceTable& rec, const LadderTable&, int n) { return rec.beta(n); }
Real read_log_h(const RecurrenceTable& rec, const LadderTable&, int n) { return log(rec.h(n)); }
Real read_p(const RecurrenceTable& rec, const LadderTable&, int n) { return rec.p(n); }

Real read(const PipelineResult& point, Reading f, int n) { return f(point.recurrence, point.ladder, n); }

// t * d/dt of the reading at the grid center.
Real t_derivative(const TGrid& grid, Reading f, int n, StepMode mode) {
    auto central = [&](const PipelineResult& plus, const PipelineResult& minus, const Real& step) {
        return (read(plus, f, n) - read(minus, f, n)) / (2L * step);
    };
    Real d;
    switch (mode) {
        case StepMode::Full:
            d = central(grid.plus(), grid.minus(), grid.h());
            break;
        case StepMode::Half:
            d = central(grid.plus_half(), grid.minus_half(), grid.h() / 2L);
            break;
        case StepMode::Richardson:
            d = (4L * central(grid.plus_half(), grid.minus_half(), grid.h() / 2L) -
                 central(grid.plus(), grid.minus(), grid.h())) /
                3L;
            break;
    }
    return grid.t() * d;
}

}  // namespace

Theorem1Terms theorem1_terms(const RecurrenceTable& rec, int n) {
    require_interior(rec.N(), n, "theorem1_terms");
    const DifferenceParts p = difference_parts(rec, n);
    const Tracked b(rec.beta(n));
    return {p.x * p.y + b * p.d * p.d * p.u * p.v, 2L * p.x + p.d * d2_bracket(rec, n)};
}

std::vector<ResidualEntry> residual_theorem1(const RecurrenceTable& rec, int n) {
    const Theorem1Terms terms = theorem1_terms(rec, n);
    const Parameters& params = rec.params();
    const Real tol = params.policy.identity_tolerance();
    return {make_entry("d1", n, params.lambda, params.t, terms.d1, tol),
            make_entry("d2", n, params.lambda, params.t, terms.d2, tol)};
}

std::vector<ResidualEntry> proof_chain_residuals(const RecurrenceTable& rec, const LadderTable& ladder, int n) {
    require_interior(rec.N(), n, "proof_chain_residuals");
    const Parameters& params = rec.params();
    const Real tol = params.policy.identity_tolerance();

    const Tracked a(rec.alpha(n));
    const Tracked a_prev(rec.alpha(n - 1));
    const Tracked a_next(rec.alpha(n + 1));
    const Tracked b(rec.beta(n));
    const Tracked b_next(rec.beta(n + 1));
    const Tracked r(ladder.r(n));
    const Tracked r_next(ladder.r(n + 1));
    const Tracked R(ladder.R(n));
    const Tracked t(params.t);

    const Tracked al2 = a - (r - r_next - 2L * b * (a + a_prev) + 2L * b_next * (a_next + a));
    const Tracked m1 = r_next + r - t + a * R;
    const DifferenceParts p = difference_parts(rec, n);
    const Tracked d2 = 2L * p.x + p.d * d2_bracket(rec, n);
    const Tracked chain = d2 - (2L * (p.x - p.d * r) + p.d * (m1 - al2));

    return {make_entry("al2", n, params.lambda, params.t, al2, tol),
            make_entry("chain-d2", n, params.lambda, params.t, chain, tol)};
}

TGrid::TGrid(Real h, PipelineResult center, PipelineResult plus, PipelineResult minus,
             std::optional<PipelineResult> plus_half, std::optional<PipelineResult> minus_half)
    : h_(std::move(h)),
      center_(std::move(center)),
      plus_(std::move(plus)),
      minus_(std::move(minus)),
      plus_half_(std::move(plus_half)),
      minus_half_(std::move(minus_half)) {}

TGrid TGrid::build(const Parameters& center, int N, const Real& h, bool half_steps) {
    if (h <= 0L || h >= center.t) throw ConfigError("t-grid step must satisfy 0 < h < t");
    const Bits prec = center.precision();
    Real step(0L, prec);
    mpfr_set(step.get(), h.get(), MPFR_RNDN);

    // offsets in units of h/2: 0, +2, -2, +1, -1
    const std::array<long, 5> offsets{0, 2, -2, 1, -1};
    const std::size_t count = half_steps ? 5 : 3;
    std::vector<std::optional<PipelineResult>> results(count);
    std::vector<std::exception_ptr> errors(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            const Real t = center.t + step * offsets[k] / 2L;
            results[k].emplace(run_pipeline(center.with_t(t), N));
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    for (const auto& r : results)
        if (r->params().precision() != prec)
            throw NumericError("t-grid points ended at different precisions after Cholesky retries");

    std::optional<PipelineResult> plus_half;
    std::optional<PipelineResult> minus_half;
    if (half_steps) {
        plus_half = std::move(results[3]);
        minus_half = std::move(results[4]);
    }
    return TGrid(std::move(step), std::move(*results[0]), std::move(*results[1]), std::move(*results[2]),
                 std::move(plus_half), std::move(minus_half));
}

const PipelineResult& TGrid::plus_half() const {
    if (!plus_half_) throw std::logic_error("t-grid built without half steps");
    return *plus_half_;
}

const PipelineResult& TGrid::minus_half() const {
    if (!minus_half_) throw std::logic_error("t-grid built without half steps");
    return *minus_half_;
}

const char* to_string(StepMode mode) {
    switch (mode) {
        case StepMode::Full:
            return "full";
        case StepMode::Half:
            return "half";
        case StepMode::Richardson:
            return "richardson";
    }
    return "?";
}

Theorem2Terms theorem2_terms(const TGrid& grid, int n, StepMode mode) {
    require_interior(grid.N(), n, "theorem2_terms");
    const RecurrenceTable& rec = grid.center().recurrence;
    const LadderTable& ladder = grid.center().ladder;

    const Tracked ta(t_derivative(grid, &read_alpha, n, mode));
    const Tracked tb(t_derivative(grid, &read_beta, n, mode));
    const Tracked tlh(t_derivative(grid, &read_log_h, n, mode));
    const Tracked tp(t_derivative(grid, &read_p, n, mode));

    const Tracked a(rec.alpha(n));
    const Tracked a_prev(rec.alpha(n - 1));
    const Tracked a_next(rec.alpha(n + 1));
    const Tracked b(rec.beta(n));
    const Tracked b_prev(rec.beta(n - 1));
    const Tracked b_next(rec.beta(n + 1));

    Theorem2Terms out;
    out.dd1 = ta - (a + 2L * b * (a + a_prev) - 2L * b_next * (a + a_next));
    out.dd2 = tb - 2L * b * (a_prev * a_prev - a * a + b_prev - b_next + 1L);
    out.eq1 = tlh + Tracked(ladder.R(n));
    out.eq2 = tp - Tracked(ladder.r(n));
    out.beta_ladder = tb - b * (Tracked(ladder.R(n - 1)) - Tracked(ladder.R(n)));
    out.al4 = ta - (Tracked(ladder.r(n)) - Tracked(ladder.r(n + 1)));
    return out;
}

Real difference_tolerance(const TGrid& grid, StepMode mode) {
    const NumericPolicy& policy = grid.center().params().policy;
    const Real& h = grid.h();
    const Real truncation_step = mode == StepMode::Half ? h / 2L : h;
    const Real rounding_step = mode == StepMode::Full ? h : h / 2L;
    const Real truncation = kDifferenceConstant * truncation_step * truncation_step;
    const Real floor = 10L * policy.identity_tolerance() / rounding_step;
    return max(truncation, floor);
}

std::vector<ResidualEntry> residual_theorem2(const TGrid& grid, int n, StepMode mode) {
    const Theorem2Terms terms = theorem2_terms(grid, n, mode);
    const Parameters& params = grid.center().params();
    const Real tol = difference_tolerance(grid, mode);
    return {make_entry("dd1", n, params.lambda, params.t, terms.dd1, tol),
            make_entry("dd2", n, params.lambda, params.t, terms.dd2, tol)};
}

std::vector<ResidualEntry> residual_logderiv(const TGrid& grid, int n, StepMode mode) {
    const Theorem2Terms terms = theorem2_terms(grid, n, mode);
    const Parameters& params = grid.center().params();
    const Real tol = difference_tolerance(grid, mode);
    return {make_entry("eq1", n, params.lambda, params.t, terms.eq1, tol),
            make_entry("eq2", n, params.lambda, params.t, terms.eq2, tol)};
}

Real default_step(const NumericPolicy& policy) {
    return pow10_neg(policy.target_digits / 3, policy.precision_bits);
}

}  // namespace plw
