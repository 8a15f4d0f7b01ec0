#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace plw::oracle {

Real moment(long k, const Real& lambda, const Real& t, Bits prec) {
    // f(u) = exp((k + lambda + 1) u - e^{2u} - t e^{-u})
    const Real a = lambda + (k + 1);
    auto f = [&](const Real& u) { return exp(a * u - exp(2L * u) - t * exp(-u)); };

    // log-magnitude in double to find the cut-offs
    const double ad = a.to_double();
    const double td = t.to_double();
    auto logf = [&](double u) { return ad * u - std::exp(2 * u) - td * std::exp(-u); };
    double peak = logf(0);
    double upeak = 0;
    for (double u = -20; u <= 10; u += 1.0 / 256) {
        if (logf(u) > peak) {
            peak = logf(u);
            upeak = u;
        }
    }
    const double drop = static_cast<double>(prec) * std::log(2.0) + 20;
    double lo = upeak;
    while (logf(lo) > peak - drop) lo -= 0.25;
    double hi = upeak;
    while (logf(hi) > peak - drop) hi += 0.25;

    // Analytic in |Im u| < pi/4, so the trapezoid error is ~ exp(-pi^2 / (2 step)).
    const long per_unit = static_cast<long>(std::ceil(2.0 * drop / (M_PI * M_PI))) + 4;
    const Real step = Real::one(prec) / per_unit;
    const long first = static_cast<long>(std::floor(lo * per_unit));
    const long last = static_cast<long>(std::ceil(hi * per_unit));
    Real sum(0L, prec);
    for (long i = first; i <= last; ++i) sum += f(Real(i, prec) * step);
    return sum * step;
}

Real determinant(std::vector<Real> a, std::size_t n) {
    if (a.size() != n * n) throw std::invalid_argument("determinant: size mismatch");
    if (n == 0) return Real(1L, 64);
    Real det = Real::one(a[0].precision());
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (abs(a[r * n + col]) > abs(a[pivot * n + col])) pivot = r;
        if (a[pivot * n + col].is_zero()) return Real::zero(det.precision());
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[col * n + c], a[pivot * n + c]);
            det = -det;
        }
        det *= a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const Real factor = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= factor * a[col * n + c];
        }
    }
    return det;
}

Real hankel_det(const std::vector<Real>& mu, std::size_t n) {
    if (n == 0) return Real::one(mu.at(0).precision());
    std::vector<Real> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = mu.at(i + j);
    return determinant(std::move(a), n);
}

Real shifted_hankel_det(const std::vector<Real>& mu, std::size_t n) {
    if (n == 0) throw std::invalid_argument("shifted_hankel_det: n must be >= 1");
    std::vector<Real> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = mu.at(i + (j + 1 == n ? n : j));
    return determinant(std::move(a), n);
}

}  // namespace plw::oracle
