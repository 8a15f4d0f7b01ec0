#pragma once

// Arbitrary-precision real numbers on top of MPFR.
//
// Every Real carries its own precision. Binary operations produce a result at
// the larger of the operand precisions, so a computation seeded from inputs
// at P bits stays at P bits without any global or thread-local state. This
// keeps Reals usable from OpenMP worker threads.

#include <mpfr.h>

#include <compare>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

namespace plw {

/// Working precision in bits.
using Bits = mpfr_prec_t;

class Real {
public:
    /// Zero at the minimum precision. Intended as a placeholder that is
    /// overwritten by assignment (assignment adopts the source precision).
    Real();
    Real(long value, Bits prec);
    Real(double value, Bits prec);

    /// Parses a decimal string (e.g. "2.5", "1e-10"). Throws
    /// std::invalid_argument on malformed input.
    static Real from_string(std::string_view text, Bits prec);
    static Real pi(Bits prec);
    static Real zero(Bits prec) { return Real(0L, prec); }
    static Real one(Bits prec) { return Real(1L, prec); }

    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    Bits precision() const { return mpfr_get_prec(v_); }

    mpfr_srcptr get() const { return v_; }
    mpfr_ptr get() { return v_; }

    Real& operator+=(const Real& rhs);
    Real& operator-=(const Real& rhs);
    Real& operator*=(const Real& rhs);
    Real& operator/=(const Real& rhs);
    Real& operator*=(long rhs);
    Real& operator/=(long rhs);

    Real operator-() const;

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    /// Scientific notation with `digits` significant digits, e.g.
    /// "1.2345e-05". Deterministic for a given value and digit count.
    std::string to_string(int digits) const;

    /// Decimal exponent estimate log10|x| in double precision; -inf for 0.
    double log10_abs() const;

    friend Real operator+(const Real& a, const Real& b);
    friend Real operator-(const Real& a, const Real& b);
    friend Real operator*(const Real& a, const Real& b);
    friend Real operator/(const Real& a, const Real& b);

    friend Real operator+(const Real& a, long b);
    friend Real operator-(const Real& a, long b);
    friend Real operator*(const Real& a, long b);
    friend Real operator/(const Real& a, long b);
    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator-(long a, const Real& b);
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator/(long a, const Real& b);

    friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
    friend std::partial_ordering operator<=>(const Real& a, const Real& b);
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend std::partial_ordering operator<=>(const Real& a, long b);

    friend std::ostream& operator<<(std::ostream& os, const Real& x);

private:
    struct Uninit {};
    Real(Uninit, Bits prec);

    mpfr_t v_;
};

Real abs(const Real& x);
Real sqrt(const Real& x);
Real cbrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real pow(const Real& base, const Real& exponent);
Real pow(const Real& base, long exponent);
/// x^(num/den) for x > 0.
Real pow_rational(const Real& base, long num, long den);
Real gamma(const Real& x);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);
/// 10^(-digits) at precision `prec`.
Real pow10_neg(long digits, Bits prec);

}  // namespace plw
