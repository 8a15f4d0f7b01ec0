#include "plw/errors.hpp"
#include "plw/weight.hpp"

#include "test_util.hpp"

using namespace plw;

namespace {

Parameters params(const char* lambda, const char* t) { return Parameters::make(lambda, t, make_policy(0, 30)); }

}  // namespace

TEST_CASE("parameters enforce lambda >= 0 and t > 0") {
    CHECK_NOTHROW(params("0", "1"));
    CHECK_THROWS_AS(params("-0.5", "1"), ConfigError);
    CHECK_THROWS_AS(params("1", "0"), ConfigError);
    CHECK_THROWS_AS(params("1", "-2"), ConfigError);
    CHECK_THROWS_AS(params("x", "1"), ConfigError);
}

TEST_CASE("eval_weight examples") {
    const auto p = params("2", "1");
    const Bits b = p.precision();
    CHECK(test::close(eval_weight(Real(1L, b), p), exp(Real(-2L, b)), 35));
    const auto q = params("1", "2");
    CHECK(test::close(eval_weight(Real(2L, b), q), 2L * exp(Real(-5L, b)), 35));
    CHECK(eval_weight(Real(0L, b), q).is_zero());
    CHECK(eval_weight(Real::from_string("0.001", b), q) < pow10_neg(800, b));
    CHECK_THROWS_AS(eval_weight(Real(-1L, b), q), std::domain_error);
}

TEST_CASE("potential derivative examples") {
    const Bits b = 200;
    CHECK(eval_potential_derivative(Real(1L, b), params("0", "1")) == 1L);
    CHECK(eval_potential_derivative(Real(1L, b), params("1", "1")) == 0L);
    CHECK(eval_potential_derivative(Real(2L, b), params("2", "4")) == 2L);
    CHECK_THROWS_AS(eval_potential_derivative(Real(0L, b), params("1", "1")), std::domain_error);
}

TEST_CASE("Pearson equation holds pointwise") {
    struct Case {
        const char* x;
        const char* lambda;
        const char* t;
    };
    for (const Case& c : {Case{"1", "0", "1"}, Case{"0.3", "2.5", "0.5"}, Case{"5", "1", "2"}}) {
        const auto p = params(c.lambda, c.t);
        const auto r = pearson_residual(Real::from_string(c.x, p.precision()), p);
        CHECK(abs(r.residual) <= p.policy.target_epsilon() * r.scale);
    }
    CHECK_THROWS_AS(pearson_residual(Real(0L, 64), params("1", "1")), std::domain_error);
}
