#include "plw/asymptotics.hpp"

#include "plw/errors.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace plw {

const char* to_string(Which which) { return which == Which::Alpha ? "alpha" : "beta"; }

const Real& AsymptoticModel::alpha_coefficient(int j) const {
    if (j < 0 || j > 4) throw std::out_of_range("alpha coefficient index must be in [0, 4]");
    return a[static_cast<std::size_t>(j)];
}

const Real& AsymptoticModel::beta_coefficient(int j) const {
    if (j < -1 || j > 3) throw std::out_of_range("beta coefficient index must be in [-1, 3]");
    return b[static_cast<std::size_t>(j + 1)];
}

AsymptoticModel expansion_coefficients(const Real& lambda, const Real& t) {
    if (!lambda.is_finite() || lambda < 0L) throw ConfigError("lambda must be >= 0");
    if (!t.is_finite() || t <= 0L) throw ConfigError("t must be > 0");
    const Bits prec = std::max(lambda.precision(), t.precision());
    const Real& l = lambda;
    const Real zero = Real::zero(prec);
    const Real one = Real::one(prec);
    const Real two(2L, prec);
    const Real sqrt3 = sqrt(Real(3L, prec));
    const Real cbrt2 = cbrt(two);
    const Real t13 = cbrt(t);
    const Real t23 = t13 * t13;
    const Real t43 = t23 * t23;
    // 96 sqrt(3) 2^(5/6)
    const Real c96 = 96L * sqrt3 * pow_rational(two, 5, 6);

    AsymptoticModel m{lambda, t, {zero, zero, zero, zero, zero}, {zero, zero, zero, zero, zero}};
    m.a[1] = (2L * l + 2L + 3L * cbrt(2L * t * t)) / (4L * sqrt(Real(6L, prec)));
    m.a[3] = -(4L * cbrt2 * (3L * l + 2L) + 18L * (l + 1L) * pow_rational(2L * t, 2, 3) + 27L * t43) / c96;
    m.a[4] = l * (l * l - 1L) / (72L * cbrt(4L * t));
    m.b[1] = l / 12L;
    m.b[2] = -l * t13 / (4L * sqrt3 * pow_rational(two, 5, 6));
    m.b[3] = (one - 3L * l * l) / 144L;
    m.b[4] = -l * (cbrt2 * cbrt2 * (l * l - 1L) - 6L * l * t23 - 9L * cbrt2 * t43) / (c96 * t13);
    return m;
}

namespace {

// n^(-j/2)
Real inv_half_power(int n, int j, Bits prec) { return pow_rational(Real(static_cast<long>(n), prec), -j, 2); }

}  // namespace

Real expansion_value(const AsymptoticModel& model, int n, Which which) {
    if (n < 1) throw std::out_of_range("expansion_value: n must be >= 1");
    const Bits prec = model.lambda.precision();
    const Real nr(static_cast<long>(n), prec);
    if (which == Which::Alpha) {
        Real v = sqrt(2L * nr / 3L);
        for (int j = 0; j <= 4; ++j) v += model.alpha_coefficient(j) * inv_half_power(n, j, prec);
        return v;
    }
    Real v = nr / 6L;
    for (int j = -1; j <= 3; ++j) v += model.beta_coefficient(j) * inv_half_power(n, j, prec);
    return v;
}

Real last_term(const AsymptoticModel& model, int n, Which which) {
    const Bits prec = model.lambda.precision();
    const int first = which == Which::Alpha ? 0 : -1;
    for (int j = 4 + first; j >= first; --j) {
        const Real& c = which == Which::Alpha ? model.alpha_coefficient(j) : model.beta_coefficient(j);
        if (!c.is_zero()) return abs(c) * inv_half_power(n, j, prec);
    }
    // every correction vanishes: the leading term is the last one kept
    const Real nr(static_cast<long>(n), prec);
    return which == Which::Alpha ? sqrt(2L * nr / 3L) : nr / 6L;
}

double DecayFit::expected_slope() const { return which == Which::Alpha ? -2.5 : -2.0; }

bool DecayFit::within(double band) const { return std::abs(slope - expected_slope()) <= band; }

std::vector<int> default_asym_samples(int n_max) {
    std::vector<int> out;
    for (int k = 4; k >= 0; --k) {
        const int n = static_cast<int>(std::lround(n_max / std::pow(2.0, k / 2.0)));
        if (n >= 1 && (out.empty() || n > out.back())) out.push_back(n);
    }
    return out;
}

DecayFit fit_points(Which which, std::vector<DecayPoint> points, const Real& floor) {
    DecayFit fit;
    fit.which = which;
    std::vector<double> xs;
    std::vector<double> ys;
    for (auto& p : points) {
        const Real threshold = floor * max(abs(p.computed), Real::one(floor.precision()));
        if (abs(p.residual) <= threshold) {
            p.excluded = true;
            std::ostringstream msg;
            msg << "n=" << p.n << ": residual " << p.residual.to_string(3) << " is below the rounding floor "
                << threshold.to_string(3) << "; sample excluded";
            fit.warnings.push_back(msg.str());
            continue;
        }
        xs.push_back(std::log10(static_cast<double>(p.n)));
        ys.push_back(p.residual.log10_abs());
        if (fit.n_min == 0 || p.n < fit.n_min) fit.n_min = p.n;
        fit.n_max = std::max(fit.n_max, p.n);
    }
    fit.points = std::move(points);
    if (xs.size() < 2) throw NumericError("decay fit needs at least two samples above the rounding floor");

    const auto m = static_cast<double>(xs.size());
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= m;
    my /= m;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0) throw NumericError("decay fit needs at least two distinct n");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    return fit;
}

DecayFit decay_fit(const RecurrenceTable& rec, const AsymptoticModel& model, Which which,
                   const std::vector<int>& n_samples) {
    std::vector<DecayPoint> points;
    for (int n : n_samples) {
        if (n < 1 || n > rec.N())
            throw std::out_of_range("decay_fit: sample n=" + std::to_string(n) + " outside [1, " +
                                    std::to_string(rec.N()) + "]");
        DecayPoint p;
        p.n = n;
        p.computed = which == Which::Alpha ? rec.alpha(n) : rec.beta(n);
        p.expansion = expansion_value(model, n, which);
        p.residual = p.computed - p.expansion;
        p.last_term = last_term(model, n, which);
        points.push_back(std::move(p));
    }
    return fit_points(which, std::move(points), rec.params().policy.target_epsilon());
}

void write_decay_csv(std::ostream& os, const DecayFit& fit, const AsymptoticModel& model, int digits) {
    os << "# which = " << to_string(fit.which) << '\n'
       << "# lambda = " << model.lambda.to_string(digits) << '\n'
       << "# t = " << model.t.to_string(digits) << '\n'
       << "n,computed,expansion,residual\n";
    for (const auto& p : fit.points)
        os << p.n << ',' << p.computed.to_string(digits) << ',' << p.expansion.to_string(digits) << ','
           << p.residual.to_string(digits) << '\n';
}

nlohmann::ordered_json model_to_json(const AsymptoticModel& model, int digits) {
    nlohmann::ordered_json j;
    j["lambda"] = model.lambda.to_string(digits);
    j["t"] = model.t.to_string(digits);
    nlohmann::ordered_json a;
    for (int k = 0; k <= 4; ++k) a["a" + std::to_string(k)] = model.alpha_coefficient(k).to_string(digits);
    nlohmann::ordered_json b;
    for (int k = -1; k <= 3; ++k) b["b" + std::to_string(k)] = model.beta_coefficient(k).to_string(digits);
    j["alpha_coefficients"] = a;
    j["beta_coefficients"] = b;
    return j;
}

nlohmann::ordered_json fit_to_json(const DecayFit& fit, double band, int digits) {
    nlohmann::ordered_json j;
    j["which"] = to_string(fit.which);
    j["n_min"] = fit.n_min;
    j["n_max"] = fit.n_max;
    j["slope"] = fit.slope;
    j["intercept"] = fit.intercept;
    j["expected_slope"] = fit.expected_slope();
    j["band"] = band;
    j["pass"] = fit.within(band);
    nlohmann::ordered_json points = nlohmann::ordered_json::array();
    for (const auto& p : fit.points) {
        nlohmann::ordered_json item;
        item["n"] = p.n;
        item["residual"] = p.residual.to_string(digits);
        item["last_term"] = p.last_term.to_string(digits);
        item["excluded"] = p.excluded;
        points.push_back(std::move(item));
    }
    j["points"] = std::move(points);
    j["warnings"] = fit.warnings;
    return j;
}

}  // namespace plw
