#include <catch2/catch_amalgamated.hpp>

#include "sincpi/quadrature.hpp"

#include "test_util.hpp"

using namespace sincpi;
using sincpi::test::tol;

namespace {

BigReal one_fn(const BigReal&, const PrecisionContext& ctx) {
    return BigReal(pow10(ctx.work()), ctx.work());
}

BigReal arctan_derivative(const BigReal& t, const PrecisionContext& ctx) {
    int w = ctx.work();
    BigReal denom = BigReal(1) + BigReal::mul(t, t, w);
    return div_at(BigReal(4), denom, w);
}

BigReal gaussian(const BigReal& t, const PrecisionContext& ctx) {
    return exp_neg(BigReal::mul(t, t, ctx.work()), ctx);
}

} // namespace

TEST_CASE("tanh-sinh on analytic integrands") {
    PrecisionContext ctx{16, 10};

    SECTION("constant") {
        QuadratureSpec spec{BigReal(0), BigReal(1), 16, 10};
        BigReal v = integrate(one_fn, spec, ctx);
        CHECK((v - BigReal(1)).abs() <= tol(16));
    }

    SECTION("Int_0^1 4/(1+t^2) = pi") {
        QuadratureSpec spec{BigReal(0), BigReal(1), 16, 10};
        BigReal v = integrate(arctan_derivative, spec, ctx);
        CHECK((v - pi_value(ctx.work())).abs() <= tol(16));
    }

    SECTION("Int_0^6 e^(-t^2) = (sqrt(pi)/2) erf(6)") {
        QuadratureSpec spec{BigReal(0), BigReal(6), 16, 10};
        BigReal v = integrate(gaussian, spec, ctx);
        BigReal sqrt_pi = sqrt_at(pi_value(ctx.work() + 5), ctx.work());
        BigReal expected = BigReal::mul(div_at(sqrt_pi, BigReal(2), ctx.work()),
                                        reference_erf(BigReal(6), ctx), ctx.work());
        CHECK((v - expected).abs() <= tol(14));
    }
}

TEST_CASE("refinement reaches more digits at higher targets") {
    PrecisionContext lo{10, 5};
    PrecisionContext hi{22, 5};
    QuadratureSpec spec_lo{BigReal(0), BigReal(1), 10, 10};
    QuadratureSpec spec_hi{BigReal(0), BigReal(1), 22, 10};
    auto r_lo = integrate_full(arctan_derivative, spec_lo, lo);
    auto r_hi = integrate_full(arctan_derivative, spec_hi, hi);
    CHECK(r_hi.agreed_digits > r_lo.agreed_digits);
    CHECK((r_hi.value - pi_value(hi.work())).abs() <= tol(22));
}

TEST_CASE("non-convergence carries the best estimate") {
    PrecisionContext ctx{16, 10};
    QuadratureSpec spec{BigReal(0), BigReal(1), 16, 1};
    try {
        integrate(arctan_derivative, spec, ctx);
        FAIL("expected AccuracyFailure");
    } catch (const AccuracyFailure& e) {
        CHECK((e.best_estimate - pi_value(ctx.work())).abs() < BigReal::parse("0.001"));
    }
}

TEST_CASE("sinc-integral form of erf") {
    PrecisionContext ctx{16, 10};
    CHECK(verify_erf_integral(BigReal(1), ctx) < tol(12));
    CHECK(verify_erf_integral(BigReal(3), ctx) < tol(12));
    CHECK_THROWS_AS(verify_erf_integral(BigReal(0), ctx), std::domain_error);
    CHECK_THROWS_AS(verify_erf_integral(BigReal(7), ctx), std::domain_error);

    SECTION("small x: integral result tracks erf toward 0") {
        // the prefactor 2x sends the result to 0 with x; discrepancy stays tiny
        CHECK(verify_erf_integral(BigReal(1, 3), ctx) < tol(12));
    }
}

TEST_CASE("sqrt(pi) integral identity") {
    PrecisionContext ctx{16, 10};
    CHECK(verify_sqrtpi_identity(ctx) < tol(14));

    PrecisionContext wide{24, 10};
    CHECK(verify_sqrtpi_identity(wide, BigReal(8)) < tol(22));
}

TEST_CASE("damping tail bound") {
    PrecisionContext ctx{20, 10};
    CHECK(damping_tail_bound(BigReal(6), BigReal(1), ctx) < tol(16));
    CHECK(damping_tail_bound(BigReal(12), BigReal(2), ctx) < tol(16));

    SECTION("monotone decreasing in T") {
        BigReal prev = damping_tail_bound(BigReal(2), BigReal(1), ctx);
        for (int T = 3; T <= 7; ++T) {
            BigReal b = damping_tail_bound(BigReal(T), BigReal(1), ctx);
            CHECK(b < prev);
            prev = b;
        }
    }

    CHECK_THROWS_AS(damping_tail_bound(BigReal(0), BigReal(1), ctx), std::domain_error);
}

TEST_CASE("erf integral discrepancy stays below the combined bound") {
    PrecisionContext ctx{16, 10};
    BigReal tail = damping_tail_bound(BigReal(12), BigReal(2), ctx);
    BigReal combined = tol(12) + tail;
    for (const char* xs : {"0.5", "2", "5"}) {
        CHECK(verify_erf_integral(BigReal::parse(xs), ctx) < combined);
    }
}
