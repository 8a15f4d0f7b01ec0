#pragma once

// Large-n expansions
//     alpha_n = sqrt(2n/3) + sum_j a_j n^(-j/2) + O(n^(-5/2)),
//     beta_n  = n/6 + sum_j b_j n^(-j/2) + O(n^(-2)),
// and least-squares estimates of the remainder order from computed tables.

#include "plw/recurrence.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

namespace plw {

enum class Which { Alpha, Beta };

const char* to_string(Which which);

struct AsymptoticModel {
    Real lambda;
    Real t;
    /// a_0 ... a_4
    std::array<Real, 5> a;
    /// b_{-1} ... b_3, stored at index j + 1
    std::array<Real, 5> b;

    const Real& alpha_coefficient(int j) const;
    const Real& beta_coefficient(int j) const;
};

/// Closed-form coefficients. Throws ConfigError unless lambda >= 0, t > 0.
AsymptoticModel expansion_coefficients(const Real& lambda, const Real& t);

/// The truncated expansion at n >= 1.
Real expansion_value(const AsymptoticModel& model, int n, Which which);

/// Magnitude of the last nonzero term kept in the truncated expansion.
Real last_term(const AsymptoticModel& model, int n, Which which);

struct DecayPoint {
    int n = 0;
    Real computed;
    Real expansion;
    /// computed - expansion
    Real residual;
    Real last_term;
    /// Below the rounding floor; left out of the fit.
    bool excluded = false;
};

struct DecayFit {
    Which which = Which::Alpha;
    int n_min = 0;
    int n_max = 0;
    double slope = 0;
    double intercept = 0;
    std::vector<DecayPoint> points;
    std::vector<std::string> warnings;

    /// Remainder exponent stated for the expansion: -5/2 or -2.
    double expected_slope() const;
    bool within(double band) const;
};

inline constexpr double kDefaultSlopeBand = 0.3;

/// Samples n_max / 2^(k/2), k = 0..4, rounded, ascending.
std::vector<int> default_asym_samples(int n_max);

/// Fits log10 |computed - expansion| = slope * log10 n + intercept over the
/// samples. Samples whose residual is below target_epsilon * max(|computed|, 1)
/// are excluded with a warning. Throws NumericError with fewer than 2
/// usable samples.
DecayFit decay_fit(const RecurrenceTable& rec, const AsymptoticModel& model, Which which,
                   const std::vector<int>& n_samples);

/// Fit over prepared points; `floor` is the relative rounding floor.
DecayFit fit_points(Which which, std::vector<DecayPoint> points, const Real& floor);

/// Comment header, then n,computed,expansion,residual.
void write_decay_csv(std::ostream& os, const DecayFit& fit, const AsymptoticModel& model, int digits);

nlohmann::ordered_json model_to_json(const AsymptoticModel& model, int digits);
nlohmann::ordered_json fit_to_json(const DecayFit& fit, double band, int digits);

}  // namespace plw
