#include "plw/errors.hpp"
#include "plw/moments.hpp"

#include "oracles.hpp"
#include "test_util.hpp"

#include <omp.h>

using namespace plw;

namespace {

Parameters params(const char* lambda, const char* t, int digits = 30, int n_max = 10) {
    return Parameters::make(lambda, t, make_policy(n_max, digits));
}

}  // namespace

TEST_CASE("moments agree with the independent trapezoid oracle to 30 digits") {
    for (const char* lambda : {"0", "1"}) {
        const Parameters p = params(lambda, "1");
        const MomentTable table = compute_moments(p, -2, 4);
        const Bits oracle_prec = 400;  // >= 100 decimal digits
        const Real l = Real::from_string(lambda, oracle_prec);
        const Real t = Real::from_string("1", oracle_prec);
        for (long k : {-1L, 0L}) {
            const Real ref = oracle::moment(k, l, t, oracle_prec);
            CAPTURE(lambda);
            CAPTURE(k);
            CHECK(test::close(table.mu(static_cast<int>(k)), ref, 30));
        }
    }
}

TEST_CASE("the oracle itself is stable under a precision change") {
    const Real a = oracle::moment(0, Real(1L, 400), Real(1L, 400), 400);
    const Real b = oracle::moment(0, Real(1L, 500), Real(1L, 500), 500);
    CHECK(test::close(a, b, 110));
}

TEST_CASE("known values and bounds") {
    const Parameters p0 = params("0", "1");
    const MomentTable t0 = compute_moments(p0, -2, 6);
    const Bits b = p0.precision();
    // dropping exp(-t/x) < 1 gives the half-Gaussian moment
    CHECK(t0.mu(2) < sqrt(Real::pi(b)) / 4L);
    for (int k = 0; k <= 6; ++k) CHECK(t0.mu(k) < gamma(Real(k + 1L, b) / 2L) / 2L);
    // index shift: mu_{-1}(lambda = 1) = mu_0(lambda = 0)
    const MomentTable t1 = compute_moments(params("1", "1"), -2, 2);
    CHECK(test::close(t1.mu(-1), t0.mu(0), 30));
    CHECK(test::close(t0.mu(0), Real::from_string("0.15004596450516388137", b), 19));
}

TEST_CASE("positivity, monotonicity in t, log-convexity and Hankel positivity") {
    const MomentTable a = compute_moments(params("2.5", "0.5"), -2, 12);
    const MomentTable b = compute_moments(params("2.5", "0.6"), -2, 12);
    for (int k = -2; k <= 12; ++k) {
        CHECK(a.mu(k) > 0L);
        CHECK(b.mu(k) < a.mu(k));
        if (k > -2 && k < 12) CHECK(a.mu(k - 1) * a.mu(k + 1) >= a.mu(k) * a.mu(k));
    }
    for (std::size_t m = 1; m <= 6; ++m) {
        std::vector<Real> mu;
        for (int k = 0; k <= 12; ++k) mu.push_back(a.mu(k));
        CHECK(oracle::hankel_det(mu, m) > 0L);
    }
}

TEST_CASE("serial and parallel moment tables agree") {
    const Parameters p = params("1", "2");
    omp_set_num_threads(4);
    const MomentTable par = compute_moments(p, -2, 10);
    const MomentTable ser = compute_moments_serial(p, -2, 10);
    CHECK(par.quadrature_level() == ser.quadrature_level());
    const int digits = p.policy.working_digits() - 3;
    for (int k = -2; k <= 10; ++k) CHECK(test::close(par.mu(k), ser.mu(k), digits));
}

TEST_CASE("moment window validation") {
    const Parameters p = params("1", "1");
    CHECK_THROWS_AS(compute_moments(p, -1, 4), std::invalid_argument);
    CHECK_THROWS_AS(compute_moments(p, -2, -3), std::invalid_argument);
    const MomentTable t = compute_moments(p, -2, 4);
    CHECK_THROWS_AS(t.mu(5), std::out_of_range);
    CHECK_THROWS_AS(t.mu(-3), std::out_of_range);
}

TEST_CASE("t-derivative check is second order in h") {
    const Parameters p = params("1", "1", 60);
    const Bits b = p.precision();
    auto residual = [&](const char* h_text) {
        const Real h = Real::from_string(h_text, b);
        const MomentTable mid = compute_moments(p, -2, 2);
        const MomentTable plus = compute_moments(p.with_t(p.t + h), -2, 2);
        const MomentTable minus = compute_moments(p.with_t(p.t - h), -2, 2);
        return moment_t_derivative_check(mid, plus, minus, 0);
    };
    const Real r = residual("1e-10");
    CHECK(r <= pow10_neg(18, b));
    const Real r_half = residual("5e-11");
    const double ratio = (r / r_half).to_double();
    CHECK(ratio > 3.5);
    CHECK(ratio < 4.5);
}

TEST_CASE("moment JSON round trip") {
    const MomentTable t = compute_moments(params("2.5", "0.5"), -2, 3);
    const auto doc = moments_to_json(t);
    CHECK(doc["precision_bits"].get<long>() == t.params().precision());
    const MomentJson back = moments_from_json(doc);
    REQUIRE(back.moments.size() == 6);
    CHECK(back.moments.front().first == -2);
    for (const auto& [k, value] : back.moments) CHECK(test::close(value, t.mu(k), 29));
    CHECK(moments_to_json(t).dump() == doc.dump());
}
