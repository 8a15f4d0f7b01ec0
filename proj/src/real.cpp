#include "plw/real.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace plw {

namespace {

Bits wider(const Real& a, const Real& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

Real::Real() { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_set_zero(v_, 1); }

Real::Real(Uninit, Bits prec) { mpfr_init2(v_, prec); }

Real::Real(long value, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, value, MPFR_RNDN);
}

Real::Real(double value, Bits prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, value, MPFR_RNDN);
}

Real Real::from_string(std::string_view text, Bits prec) {
    Real r(Uninit{}, prec);
    std::string buf(text);
    if (buf.empty()) throw std::invalid_argument("empty decimal number");
    char* end = nullptr;
    mpfr_strtofr(r.v_, buf.c_str(), &end, 10, MPFR_RNDN);
    if (end != buf.c_str() + buf.size() || !mpfr_number_p(r.v_))
        throw std::invalid_argument("not a decimal number: '" + buf + "'");
    return r;
}

Real Real::pi(Bits prec) {
    Real r(Uninit{}, prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

Real::Real(const Real& other) {
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        if (precision() != other.precision()) mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

Real::~Real() { mpfr_clear(v_); }

#define PLW_WIDEN_TO(rhs)                                              \
    if ((rhs).precision() > precision()) mpfr_prec_round(v_, (rhs).precision(), MPFR_RNDN)

Real& Real::operator+=(const Real& rhs) {
    PLW_WIDEN_TO(rhs);
    mpfr_add(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& rhs) {
    PLW_WIDEN_TO(rhs);
    mpfr_sub(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& rhs) {
    PLW_WIDEN_TO(rhs);
    mpfr_mul(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& rhs) {
    PLW_WIDEN_TO(rhs);
    mpfr_div(v_, v_, rhs.v_, MPFR_RNDN);
    return *this;
}

#undef PLW_WIDEN_TO

Real& Real::operator*=(long rhs) {
    mpfr_mul_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(long rhs) {
    mpfr_div_si(v_, v_, rhs, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const {
    Real r(Uninit{}, precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string Real::to_string(int digits) const {
    if (digits < 1) digits = 1;
    char* out = nullptr;
    // no "-0" in reports
    const Real shown = is_zero() ? abs(*this) : *this;
    if (mpfr_asprintf(&out, "%.*Re", digits - 1, shown.v_) < 0 || out == nullptr)
        throw std::runtime_error("mpfr_asprintf failed");
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

double Real::log10_abs() const {
    if (mpfr_zero_p(v_)) return -std::numeric_limits<double>::infinity();
    long exp2 = 0;
    double mant = mpfr_get_d_2exp(&exp2, v_, MPFR_RNDN);
    return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * std::log10(2.0);
}

Real operator+(const Real& a, const Real& b) {
    Real r(Real::Uninit{}, wider(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b) {
    Real r(Real::Uninit{}, wider(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b) {
    Real r(Real::Uninit{}, wider(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b) {
    Real r(Real::Uninit{}, wider(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, long b) {
    Real r(Real::Uninit{}, a.precision());
    mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, long b) {
    Real r(Real::Uninit{}, a.precision());
    mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, long b) {
    Real r(Real::Uninit{}, a.precision());
    mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, long b) {
    Real r(Real::Uninit{}, a.precision());
    mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
    return r;
}

Real operator-(long a, const Real& b) {
    Real r(Real::Uninit{}, b.precision());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

Real operator/(long a, const Real& b) {
    Real r(Real::Uninit{}, b.precision());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
}

std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& a, long b) {
    if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::ostream& operator<<(std::ostream& os, const Real& x) {
    auto digits = static_cast<int>(std::floor(static_cast<double>(x.precision()) * std::log10(2.0)));
    return os << x.to_string(std::max(digits, 1));
}

Real abs(const Real& x) {
    Real r = x;
    mpfr_abs(r.get(), r.get(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real& x) {
    Real r = x;
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real cbrt(const Real& x) {
    Real r = x;
    mpfr_cbrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real exp(const Real& x) {
    Real r = x;
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real log(const Real& x) {
    Real r = x;
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& base, const Real& exponent) {
    Real r(0L, std::max(base.precision(), exponent.precision()));
    mpfr_pow(r.get(), base.get(), exponent.get(), MPFR_RNDN);
    return r;
}

Real pow(const Real& base, long exponent) {
    Real r = base;
    mpfr_pow_si(r.get(), base.get(), exponent, MPFR_RNDN);
    return r;
}

Real pow_rational(const Real& base, long num, long den) {
    if (den <= 0) throw std::invalid_argument("pow_rational: denominator must be positive");
    Real r = base;
    // x^(num/den) = (x^(1/den))^num, with the root correctly rounded by MPFR.
    mpfr_rootn_ui(r.get(), base.get(), static_cast<unsigned long>(den), MPFR_RNDN);
    mpfr_pow_si(r.get(), r.get(), num, MPFR_RNDN);
    return r;
}

Real gamma(const Real& x) {
    Real r = x;
    mpfr_gamma(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b) { return a < b ? b : a; }
Real min(const Real& a, const Real& b) { return b < a ? b : a; }

Real pow10_neg(long digits, Bits prec) {
    Real r(10L, prec);
    mpfr_pow_si(r.get(), r.get(), -digits, MPFR_RNDN);
    return r;
}

}  // namespace plw
