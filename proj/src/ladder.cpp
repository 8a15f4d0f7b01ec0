#include "plw/ladder.hpp"

#include "plw/weight.hpp"

#include <stdexcept>

namespace plw {

namespace {

const Real& checked(const std::vector<Real>& v, int n, const char* name) {
    if (n < 0 || static_cast<std::size_t>(n) >= v.size())
        throw std::out_of_range(std::string(name) + " index " + std::to_string(n) + " out of range");
    return v[static_cast<std::size_t>(n)];
}

void require_interior(const RecurrenceTable& rec, const LadderTable& ladder, int n, const char* what) {
    if (ladder.N() != rec.N()) throw std::invalid_argument(std::string(what) + ": ladder and recurrence differ in N");
    if (n < 1 || n > rec.N() - 1)
        throw std::out_of_range(std::string(what) + ": n must lie in [1, N-1], got " + std::to_string(n));
}

// Numerator of the closed form for r_n: r_n * (2n + lambda - 4 beta_n).
Tracked r_numerator(const RecurrenceTable& rec, int n) {
    const Tracked a(rec.alpha(n));
    const Tracked a_prev(rec.alpha(n - 1));
    const Tracked b(rec.beta(n));
    const Tracked b_prev(rec.beta(n - 1));
    const Tracked b_next(rec.beta(n + 1));
    const Tracked lambda(rec.params().lambda);
    const Tracked t(rec.params().t);
    const Tracked u = 2L * a_prev * a_prev + 2L * b + 2L * b_prev - 2L * n + 1L - lambda;
    const Tracked v = 2L * a * a + 2L * b + 2L * b_next - 2L * n - 1L - lambda;
    return n * t - 2L * t * b - 2L * a * b * u - 2L * a_prev * b * v;
}

Real r_denominator(const RecurrenceTable& rec, int n) {
    return rec.params().lambda + 2L * n - 4L * rec.beta(n);
}

std::vector<Real> prefix_sums(const std::vector<Real>& terms, std::size_t count, Bits prec) {
    std::vector<Real> sums(count + 1, Real(0L, prec));
    for (std::size_t i = 0; i < count; ++i) sums[i + 1] = sums[i] + terms[i];
    return sums;
}

std::vector<Real> alpha_sums(const RecurrenceTable& rec) {
    std::vector<Real> a(rec.alphas().begin(), rec.alphas().end());
    return prefix_sums(a, a.size(), rec.params().precision());
}

struct IntegralAccumulator {
    const RecurrenceTable* rec;
    std::size_t count;

    // Layout: [diag | off | diag_sq | off_sq], each `count` long.
    void operator()(const QuadratureNode& node, std::span<Real> acc) const {
        std::vector<Real> p(count);
        eval_polynomials(*rec, node.x, p);
        const Real wy = node.weight / node.x;
        const Real wyy = wy / node.x;
        Real sq, cross;
        for (std::size_t n = 0; n < count; ++n) {
            sq = p[n] * p[n];
            acc[n] += sq * wy;
            acc[2 * count + n] += sq * wyy;
            if (n > 0) {
                cross = p[n] * p[n - 1];
                acc[count + n] += cross * wy;
                acc[3 * count + n] += cross * wyy;
            }
        }
    }
};

}  // namespace

const char* to_string(LadderSource source) { return source == LadderSource::Identity ? "identity" : "integral"; }

LadderTable::LadderTable(Parameters params, int n, std::vector<Real> R, std::vector<Real> r,
                         std::vector<Real> sum_alpha, LadderSource source, std::vector<int> r_fallback)
    : params_(std::move(params)),
      n_(n),
      R_(std::move(R)),
      r_(std::move(r)),
      sum_alpha_(std::move(sum_alpha)),
      source_(source),
      r_fallback_(std::move(r_fallback)) {
    if (R_.size() != static_cast<std::size_t>(n_ + 1) || r_.size() != R_.size() ||
        sum_alpha_.size() != static_cast<std::size_t>(n_ + 2))
        throw std::invalid_argument("LadderTable: inconsistent array sizes");
    sum_R_ = prefix_sums(R_, R_.size(), params_.precision());
}

const Real& LadderTable::R(int n) const { return checked(R_, n, "R"); }
const Real& LadderTable::r(int n) const { return checked(r_, n, "r"); }
const Real& LadderTable::sum_R(int n) const { return checked(sum_R_, n, "sum_R"); }
const Real& LadderTable::sum_alpha(int n) const { return checked(sum_alpha_, n, "sum_alpha"); }

Real R_from_identity(const RecurrenceTable& rec, int n) {
    if (n < 0 || n > rec.N()) throw std::out_of_range("R_from_identity: n out of range");
    const Real& a = rec.alpha(n);
    return 2L * a * a + 2L * rec.beta(n) + 2L * rec.beta(n + 1) - (2L * n + 1L) - rec.params().lambda;
}

std::optional<Real> r_from_identity(const RecurrenceTable& rec, int n) {
    if (n < 1 || n > rec.N()) throw std::out_of_range("r_from_identity: n out of range");
    const Real denom = r_denominator(rec, n);
    const Parameters& params = rec.params();
    if (abs(denom) <= pow10_neg(params.policy.target_digits / 2, params.precision())) return std::nullopt;
    return r_numerator(rec, n).value() / denom;
}

LadderIntegrals compute_ladder_integrals(const RecurrenceTable& rec) {
    const auto count = static_cast<std::size_t>(rec.N() + 1);
    const Parameters& params = rec.params();
    const Bits prec = params.precision();

    std::vector<Real> scale(4 * count, Real(0L, prec));
    for (std::size_t n = 1; n < count; ++n) {
        const Real s = sqrt(rec.h(static_cast<int>(n)) * rec.h(static_cast<int>(n) - 1));
        scale[count + n] = s;
        scale[3 * count + n] = s;
    }
    const auto result = integrate_refined(*rec.quadrature(), 4 * count, IntegralAccumulator{&rec, count},
                                          pow10_neg(params.policy.target_digits + 10, prec),
                                          params.policy.max_quadrature_levels, 3, scale);
    LadderIntegrals out;
    out.level = result.level;
    auto slice = [&](std::size_t k) {
        return std::vector<Real>(result.values.begin() + static_cast<std::ptrdiff_t>(k * count),
                                 result.values.begin() + static_cast<std::ptrdiff_t>((k + 1) * count));
    };
    out.diag = slice(0);
    out.off = slice(1);
    out.diag_sq = slice(2);
    out.off_sq = slice(3);
    return out;
}

LadderTable ladder_from_integrals(const RecurrenceTable& rec, const LadderIntegrals& integrals) {
    const Real& t = rec.params().t;
    const auto count = static_cast<std::size_t>(rec.N() + 1);
    std::vector<Real> R(count);
    std::vector<Real> r(count, Real::zero(rec.params().precision()));
    for (std::size_t n = 0; n < count; ++n) {
        const auto ni = static_cast<int>(n);
        R[n] = t * integrals.diag[n] / rec.h(ni);
        if (n > 0) r[n] = t * integrals.off[n] / rec.h(ni - 1);
    }
    return LadderTable(rec.params(), rec.N(), std::move(R), std::move(r), alpha_sums(rec), LadderSource::Integral);
}

LadderTable ladder_from_integrals(const RecurrenceTable& rec) {
    return ladder_from_integrals(rec, compute_ladder_integrals(rec));
}

LadderTable ladder_from_identities(const RecurrenceTable& rec) {
    const auto count = static_cast<std::size_t>(rec.N() + 1);
    std::vector<Real> R(count);
    std::vector<Real> r(count, Real::zero(rec.params().precision()));
    std::vector<int> fallback;
    for (int n = 0; n <= rec.N(); ++n) {
        R[static_cast<std::size_t>(n)] = R_from_identity(rec, n);
        if (n == 0) continue;
        if (auto value = r_from_identity(rec, n))
            r[static_cast<std::size_t>(n)] = std::move(*value);
        else
            fallback.push_back(n);
    }
    if (!fallback.empty()) {
        const LadderIntegrals integrals = compute_ladder_integrals(rec);
        for (int n : fallback)
            r[static_cast<std::size_t>(n)] =
                rec.params().t * integrals.off[static_cast<std::size_t>(n)] / rec.h(n - 1);
    }
    return LadderTable(rec.params(), rec.N(), std::move(R), std::move(r), alpha_sums(rec), LadderSource::Identity,
                       std::move(fallback));
}

std::vector<ResidualEntry> coefficient_identity_residuals(const RecurrenceTable& rec, const LadderTable& ladder,
                                                          int n) {
    require_interior(rec, ladder, n, "coefficient_identity_residuals");
    const Parameters& params = rec.params();
    const Real tol = params.policy.identity_tolerance();

    const Tracked a(rec.alpha(n));
    const Tracked a_prev(rec.alpha(n - 1));
    const Tracked b(rec.beta(n));
    const Tracked b_next(rec.beta(n + 1));
    const Tracked lambda(params.lambda);
    const Tracked t(params.t);
    const Tracked R(ladder.R(n));
    const Tracked R_prev(ladder.R(n - 1));
    const Tracked r(ladder.r(n));
    const Tracked r_next(ladder.r(n + 1));
    const Tracked sum_R(ladder.sum_R(n));
    const Tracked sum_alpha(ladder.sum_alpha(n));

    const Tracked m1 = r_next + r - t + a * R;
    const Tracked m2 = 2L * b_next + 2L * b - 2L * n - 1L - lambda - R + 2L * a * a;
    const Tracked s1 = r * (r - t) - b * R * R_prev;
    const Tracked s2 = (4L * b - 2L * n - lambda) * r + n * t - 2L * b * (t + a * R_prev + a_prev * R);
    const Tracked s3 = 4L * b * b - 2L * (2L * n + lambda) * b + n * (lambda + n) + sum_R -
                       2L * b * (R + R_prev + 2L * a * a_prev);
    const Tracked s4 = r + sum_alpha - 2L * b * (a + a_prev);

    std::vector<ResidualEntry> out;
    out.reserve(6);
    for (const auto& [id, value] : {std::pair{"m1", &m1}, std::pair{"m2", &m2}, std::pair{"s1", &s1},
                                    std::pair{"s2", &s2}, std::pair{"s3", &s3}, std::pair{"s4", &s4}})
        out.push_back(make_entry(id, n, params.lambda, params.t, *value, tol));
    return out;
}

std::vector<ZSample> default_z_samples(Bits prec) {
    std::vector<ZSample> out;
    for (const char* label : {"0.5", "1", "2", "5"}) out.push_back({label, Real::from_string(label, prec)});
    return out;
}

std::vector<ResidualEntry> compat_pointwise_residuals(const RecurrenceTable& rec, const LadderTable& ladder, int n,
                                                      const std::vector<ZSample>& z_samples) {
    require_interior(rec, ladder, n, "compat_pointwise_residuals");
    const Parameters& params = rec.params();
    const Real tol = params.policy.identity_tolerance();

    std::vector<ResidualEntry> out;
    for (const ZSample& sample : z_samples) {
        const Real& z = sample.z;
        if (z <= 0L) throw std::domain_error("compat_pointwise_residuals: z must be > 0");
        const Real z_sq = z * z;
        auto A = [&](int k) {
            return Tracked(Real(2L, params.precision())) + 2L * Tracked(rec.alpha(k)) / z + Tracked(ladder.R(k)) / z_sq;
        };
        auto B = [&](int k) {
            return (2L * Tracked(rec.beta(k)) - k) / z + Tracked(ladder.r(k)) / z_sq;
        };
        // v'(z) as a sum of its three terms
        const Tracked vp = 2L * Tracked(z) - Tracked(params.lambda) / z - Tracked(params.t) / z_sq;
        const Tracked z_minus_a = Tracked(z) - Tracked(rec.alpha(n));
        const Tracked sum_A = Tracked(Real(2L * n, params.precision())) + 2L * Tracked(ladder.sum_alpha(n)) / z +
                              Tracked(ladder.sum_R(n)) / z_sq;

        const Tracked s1 = B(n + 1) + B(n) - (z_minus_a * A(n) - vp);
        const Tracked s2 = Tracked(Real(1L, params.precision())) + z_minus_a * (B(n + 1) - B(n)) -
                           (Tracked(rec.beta(n + 1)) * A(n + 1) - Tracked(rec.beta(n)) * A(n - 1));
        const Tracked s2p = B(n) * B(n) + vp * B(n) + sum_A - Tracked(rec.beta(n)) * A(n) * A(n - 1);

        const std::string suffix = "@z=" + sample.label;
        out.push_back(make_entry("S1" + suffix, n, params.lambda, params.t, s1, tol));
        out.push_back(make_entry("S2" + suffix, n, params.lambda, params.t, s2, tol));
        out.push_back(make_entry("S2'" + suffix, n, params.lambda, params.t, s2p, tol));
    }
    return out;
}

std::vector<ResidualEntry> lemma_integral_residuals(const RecurrenceTable& rec, const LadderIntegrals& integrals,
                                                    int n) {
    if (n < 0 || n > rec.N()) throw std::out_of_range("lemma_integral_residuals: n out of range");
    const Parameters& params = rec.params();
    const Real tol = params.policy.identity_tolerance();
    const auto idx = static_cast<std::size_t>(n);
    const Tracked lambda(params.lambda);
    const Tracked t(params.t);

    std::vector<ResidualEntry> out;
    const Tracked e1 = lambda * Tracked(integrals.diag[idx]) / rec.h(n) - 2L * Tracked(rec.alpha(n)) +
                       t * Tracked(integrals.diag_sq[idx]) / rec.h(n);
    out.push_back(make_entry("e1", n, params.lambda, params.t, e1, tol));
    if (n >= 1) {
        const Tracked e2 = lambda * Tracked(integrals.off[idx]) / rec.h(n - 1) + n - 2L * Tracked(rec.beta(n)) +
                           t * Tracked(integrals.off_sq[idx]) / rec.h(n - 1);
        out.push_back(make_entry("e2", n, params.lambda, params.t, e2, tol));
    }
    return out;
}

std::vector<ResidualEntry> cross_path_residuals(const LadderTable& identity, const LadderTable& integral, int n) {
    const Parameters& params = identity.params();
    const Real tol = params.policy.identity_tolerance();
    std::vector<ResidualEntry> out;
    auto rel = [](const Real& a, const Real& b) {
        Real d = abs(a - b);
        if (!b.is_zero()) d /= abs(b);
        return d;
    };
    out.push_back(make_entry("R-cross", n, params.lambda, params.t, rel(integral.R(n), identity.R(n)),
                             abs(identity.R(n)), tol));
    if (n >= 1)
        out.push_back(make_entry("r-cross", n, params.lambda, params.t, rel(integral.r(n), identity.r(n)),
                                 abs(identity.r(n)), tol));
    return out;
}

std::vector<int> default_integral_subset(int last) {
    std::vector<int> out;
    for (int n = 0; n <= last; ++n)
        if (n <= 20 || n % 10 == 0) out.push_back(n);
    return out;
}

}  // namespace plw
