#include "plw/recurrence.hpp"

#include "plw/hankel_cholesky.hpp"

#include <ostream>
#include <stdexcept>
#include <string>

namespace plw {

namespace {

const Real& checked(const std::vector<Real>& v, int n, const char* name) {
    if (n < 0 || static_cast<std::size_t>(n) >= v.size())
        throw std::out_of_range(std::string(name) + " index " + std::to_string(n) + " out of range");
    return v[static_cast<std::size_t>(n)];
}

using Factorizer = LowerTriangular (*)(const HankelEntry&, std::size_t, Bits);

RecurrenceTable from_moments(const MomentTable& moments, int N, Factorizer factor) {
    if (N < 0) throw std::invalid_argument("recurrence_from_moments: N must be nonnegative");
    if (!moments.contains(0) || !moments.contains(2 * N + 2))
        throw std::invalid_argument("recurrence_from_moments: moments must cover k = 0.." + std::to_string(2 * N + 2));
    const Bits prec = moments.params().precision();
    const auto size = static_cast<std::size_t>(N + 2);
    const HankelEntry entry = [&moments](std::size_t i, std::size_t j) -> const Real& {
        return moments.mu(static_cast<int>(i + j));
    };
    const LowerTriangular l = factor(entry, size, prec);

    // ratio[n] = L_{n,n-1} / L_{n-1,n-1}, with ratio[0] = 0
    std::vector<Real> ratio(size, Real(0L, prec));
    for (std::size_t n = 1; n < size; ++n) ratio[n] = l(n, n - 1) / l(n - 1, n - 1);

    std::vector<Real> alpha(static_cast<std::size_t>(N + 1));
    for (std::size_t n = 0; n < alpha.size(); ++n) alpha[n] = ratio[n + 1] - ratio[n];

    std::vector<Real> h(size);
    std::vector<Real> beta(size, Real(0L, prec));
    std::vector<Real> p(size, Real(0L, prec));
    for (std::size_t n = 0; n < size; ++n) {
        h[n] = l(n, n) * l(n, n);
        if (n > 0) {
            beta[n] = h[n] / h[n - 1];
            p[n] = p[n - 1] - alpha[n - 1];
        }
    }
    return RecurrenceTable(moments.params(), N, std::move(alpha), std::move(beta), std::move(h), std::move(p),
                           moments.quadrature());
}

}  // namespace

RecurrenceTable::RecurrenceTable(Parameters params, int n, std::vector<Real> alpha, std::vector<Real> beta,
                                 std::vector<Real> h, std::vector<Real> p,
                                 std::shared_ptr<const DeQuadrature> quadrature)
    : params_(std::move(params)),
      n_(n),
      alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      h_(std::move(h)),
      p_(std::move(p)),
      quadrature_(std::move(quadrature)) {}

const Real& RecurrenceTable::alpha(int n) const { return checked(alpha_, n, "alpha"); }
const Real& RecurrenceTable::beta(int n) const { return checked(beta_, n, "beta"); }
const Real& RecurrenceTable::h(int n) const { return checked(h_, n, "h"); }
const Real& RecurrenceTable::p(int n) const { return checked(p_, n, "p"); }

RecurrenceTable RecurrenceTable::with_beta(int n, const Real& value) const {
    RecurrenceTable copy = *this;
    checked(beta_, n, "beta");
    copy.beta_[static_cast<std::size_t>(n)] = value;
    return copy;
}

RecurrenceTable recurrence_from_moments(const MomentTable& moments, int N) {
    return from_moments(moments, N, &cholesky_hankel);
}

RecurrenceTable recurrence_from_moments_serial(const MomentTable& moments, int N) {
    return from_moments(moments, N, &cholesky_hankel_serial);
}

void eval_polynomials(const RecurrenceTable& rec, const Real& x, std::span<Real> out) {
    if (out.size() > static_cast<std::size_t>(rec.N()) + 1)
        throw std::out_of_range("eval_polynomials: degree beyond table");
    if (out.empty()) return;
    const Bits prec = rec.params().precision();
    out[0] = Real::one(prec);
    if (out.size() == 1) return;
    out[1] = x - rec.alpha(0);
    Real tmp(0L, prec);
    for (std::size_t k = 1; k + 1 < out.size(); ++k) {
        // P_{k+1} = (x - alpha_k) P_k - beta_k P_{k-1}
        const auto ki = static_cast<int>(k);
        mpfr_sub(tmp.get(), x.get(), rec.alpha(ki).get(), MPFR_RNDN);
        mpfr_mul(tmp.get(), tmp.get(), out[k].get(), MPFR_RNDN);
        out[k + 1] = rec.beta(ki) * out[k - 1];
        mpfr_sub(out[k + 1].get(), tmp.get(), out[k + 1].get(), MPFR_RNDN);
    }
}

Real eval_polynomial(const RecurrenceTable& rec, int n, const Real& x) {
    if (n < 0 || n > rec.N()) throw std::out_of_range("eval_polynomial: degree out of range");
    std::vector<Real> values(static_cast<std::size_t>(n + 1));
    eval_polynomials(rec, x, values);
    return values.back();
}

Real orthogonality_residual(const RecurrenceTable& rec, int m, int n) {
    if (m < 0 || n < 0 || m > rec.N() || n > rec.N())
        throw std::out_of_range("orthogonality_residual: degree out of range");
    const int top = std::max(m, n);
    auto integrand = [&rec, m, n, top](const QuadratureNode& node, std::span<Real> acc) {
        std::vector<Real> values(static_cast<std::size_t>(top + 1));
        eval_polynomials(rec, node.x, values);
        acc[0] += values[static_cast<std::size_t>(m)] * values[static_cast<std::size_t>(n)] * node.weight;
    };
    const Parameters& params = rec.params();
    const std::vector<Real> scale{sqrt(rec.h(m) * rec.h(n))};
    const auto integral = integrate_refined(*rec.quadrature(), 1, integrand,
                                            pow10_neg(params.policy.target_digits + 10, params.precision()),
                                            params.policy.max_quadrature_levels, 3, scale);
    Real value = integral.values[0];
    if (m == n) value -= rec.h(n);
    return abs(value) / rec.h(top);
}

void write_recurrence_csv(std::ostream& os, const RecurrenceTable& rec) {
    const int digits = rec.params().policy.target_digits;
    os << "# lambda = " << rec.params().lambda.to_string(digits) << '\n'
       << "# t = " << rec.params().t.to_string(digits) << '\n'
       << "# precision_bits = " << rec.params().precision() << '\n'
       << "# target_digits = " << digits << '\n'
       << "n,alpha,beta,h,p\n";
    for (int n = 0; n <= rec.N(); ++n)
        os << n << ',' << rec.alpha(n).to_string(digits) << ',' << rec.beta(n).to_string(digits) << ','
           << rec.h(n).to_string(digits) << ',' << rec.p(n).to_string(digits) << '\n';
}

}  // namespace plw
