#pragma once

// Scale-free residuals for exact identities.
//
// A Tracked value carries, next to its value, the sum of absolute values of
// the monomials it expands to. Sums add magnitudes, products multiply them.
// An identity `lhs - rhs == 0` is then reported as |value| / magnitude, which
// is comparable across n and t even though individual terms grow with both.

#include "plw/numeric_policy.hpp"
#include "plw/real.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace plw {

class Tracked {
public:
    Tracked() = default;
    /// A leaf term: magnitude |v|.
    Tracked(const Real& v) : value_(v), magnitude_(abs(v)) {}  // NOLINT(google-explicit-constructor)
    Tracked(Real value, Real magnitude) : value_(std::move(value)), magnitude_(std::move(magnitude)) {}

    const Real& value() const { return value_; }
    const Real& magnitude() const { return magnitude_; }

    /// |value| / magnitude, or |value| when the magnitude is zero.
    Real normalized() const;

    friend Tracked operator+(const Tracked& a, const Tracked& b) {
        return {a.value_ + b.value_, a.magnitude_ + b.magnitude_};
    }
    friend Tracked operator-(const Tracked& a, const Tracked& b) {
        return {a.value_ - b.value_, a.magnitude_ + b.magnitude_};
    }
    friend Tracked operator*(const Tracked& a, const Tracked& b) {
        return {a.value_ * b.value_, a.magnitude_ * b.magnitude_};
    }
    friend Tracked operator*(long c, const Tracked& a) { return {a.value_ * c, a.magnitude_ * std::labs(c)}; }
    friend Tracked operator+(const Tracked& a, long c) { return {a.value_ + c, a.magnitude_ + std::labs(c)}; }
    friend Tracked operator-(const Tracked& a, long c) { return {a.value_ - c, a.magnitude_ + std::labs(c)}; }
    friend Tracked operator+(long c, const Tracked& a) { return a + c; }
    friend Tracked operator-(long c, const Tracked& a) { return {c - a.value_, a.magnitude_ + std::labs(c)}; }
    /// Division by a quantity treated as exact.
    friend Tracked operator/(const Tracked& a, const Real& d) { return {a.value_ / d, a.magnitude_ / abs(d)}; }
    Tracked operator-() const { return {-value_, magnitude_}; }

private:
    Real value_;
    Real magnitude_;
};

struct ResidualEntry {
    std::string identity;
    int n = 0;
    Real lambda;
    Real t;
    /// Normalized residual.
    Real residual;
    /// Normalization scale (magnitude of the expanded terms).
    Real scale;
    Real tolerance;
    bool pass = false;
};

/// Builds an entry with pass = (residual <= tolerance).
ResidualEntry make_entry(std::string identity, int n, const Real& lambda, const Real& t, const Tracked& identity_value,
                         const Real& tolerance);
ResidualEntry make_entry(std::string identity, int n, const Real& lambda, const Real& t, const Real& residual,
                         const Real& scale, const Real& tolerance);

class ResidualReport {
public:
    explicit ResidualReport(NumericPolicy policy) : policy_(policy) {}

    void add(ResidualEntry entry) { entries_.push_back(std::move(entry)); }
    void append(const ResidualReport& other);

    const std::vector<ResidualEntry>& entries() const { return entries_; }
    const NumericPolicy& policy() const { return policy_; }

    bool all_pass() const;
    std::size_t failures() const;
    /// Max residual and pass state per identity, in order of first appearance.
    struct Summary {
        std::string identity;
        Real max_residual;
        std::size_t count = 0;
        std::size_t failed = 0;
    };
    std::vector<Summary> summary() const;

    /// [{"identity", "n", "lambda", "t", "residual", "tolerance", "pass"}, ...]
    nlohmann::ordered_json to_json() const;
    /// Comment header with the policy, then identity,n,lambda,t,residual,tolerance,pass.
    void write_csv(std::ostream& os) const;

private:
    NumericPolicy policy_;
    std::vector<ResidualEntry> entries_;
};

}  // namespace plw
