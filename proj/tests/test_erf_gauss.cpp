#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sincpi/erf_gauss.hpp"

#include "test_util.hpp"

using namespace sincpi;
using sincpi::test::kSeed;
using sincpi::test::random_decimal;
using sincpi::test::tol;

TEST_CASE("gaussian erf series basics") {
    PrecisionContext ctx{20, 10};
    CHECK(erf_gauss_series(30, BigReal(0), ctx).is_zero());
    CHECK_THROWS_AS(erf_gauss_series(0, BigReal(1), ctx), std::domain_error);

    SECTION("odd in x") {
        std::mt19937_64 rng(kSeed);
        for (int i = 0; i < 10; ++i) {
            BigReal x = random_decimal(rng, 6, 3);
            CHECK((erf_gauss_series(12, x, ctx) + erf_gauss_series(12, -x, ctx)).is_zero());
        }
    }

    SECTION("accuracy at L = 30, x = 1 (calibration-frozen bound)") {
        // measured |series - erf| = 3.84e-5; the leading error term is
        // x^3 e^(-x^2) / (6 sqrt(pi) L^2)
        BigReal dev = (erf_gauss_series(30, BigReal(1), ctx) -
                       reference_erf(BigReal(1), ctx)).abs();
        CHECK(dev < BigReal::parse("0.00005"));
        CHECK(dev > BigReal::parse("0.00003"));  // not spuriously tight
    }
}

TEST_CASE("validity criterion pi*L >= 12x") {
    PrecisionContext ctx{20, 10};
    CHECK(criterion_ok(23, BigReal(6), ctx));
    CHECK_FALSE(criterion_ok(22, BigReal(6), ctx));
    CHECK(criterion_ok(1, BigReal(0), ctx));
}

TEST_CASE("smallest L covering a range") {
    PrecisionContext ctx{20, 10};
    CHECK(min_L_for_range(BigReal(6), ctx) == 23);
    CHECK(min_L_for_range(BigReal(1), ctx) == 4);
    // boundary: x_max just below pi/12 needs exactly L = 1
    BigReal almost = div_at(pi_value(30), BigReal(12), 25).truncate(24);
    CHECK(min_L_for_range(almost, ctx) == 1);
    CHECK_THROWS_AS(min_L_for_range(BigReal(0), ctx), std::domain_error);
}

TEST_CASE("piecewise full-range extension") {
    PrecisionContext ctx{20, 10};
    CHECK(erf_piecewise(23, BigReal(10), ctx) == BigReal(1));
    CHECK(erf_piecewise(23, BigReal(-10), ctx) == BigReal(-1));
    CHECK(erf_piecewise(23, BigReal(0), ctx).is_zero());
}

TEST_CASE("erf profile grid") {
    PrecisionContext ctx{16, 10};

    SECTION("L = 5 approximation decays toward zero at large x") {
        auto records = erf_profile(5, BigReal(0), BigReal(30), 60, ctx);
        REQUIRE(records.size() == 61);
        CHECK(records.front().erf_ref.is_zero());
        CHECK(records.front().erf_approx.is_zero());
        const auto& last = records.back();
        CHECK(last.erf_ref == BigReal(1));
        CHECK(last.erf_approx < BigReal::parse("0.1"));
    }

    SECTION("L = 8 records obeying the criterion stay accurate (frozen: 1e-3)") {
        auto records = erf_profile(8, BigReal(0), BigReal(6), 60, ctx);
        for (const auto& rec : records) {
            if (rec.criterion_satisfied) CHECK(rec.abs_error < BigReal::parse("0.001"));
        }
    }

    SECTION("bad grids rejected") {
        CHECK_THROWS_AS(erf_profile(5, BigReal(1), BigReal(0), 10, ctx), std::domain_error);
        CHECK_THROWS_AS(erf_profile(5, BigReal(0), BigReal(1), 1, ctx), std::domain_error);
    }
}

TEST_CASE("error decreases when L doubles (x = 2)") {
    PrecisionContext ctx{20, 10};
    BigReal ref = reference_erf(BigReal(2), ctx);
    BigReal prev;
    bool first = true;
    for (std::int64_t L : {16, 32, 64, 128, 256}) {
        BigReal dev = (erf_gauss_series(L, BigReal(2), ctx) - ref).abs();
        if (!first) CHECK(dev < prev);
        prev = dev;
        first = false;
    }
}

TEST_CASE("degradation sets in later for larger L") {
    // first x where the error exceeds 0.01 must increase with L
    PrecisionContext ctx{12, 5};
    BigReal threshold = BigReal::parse("0.01");
    double prev_cross = 0.0;
    for (std::int64_t L : {5, 8}) {
        double cross = 0.0;
        for (int i = 1; i <= 120; ++i) {
            BigReal x(BigInt(i), 1);  // step 0.1
            BigReal ref = (x <= BigReal(8)) ? reference_erf(x, ctx) : BigReal(1);
            if ((erf_gauss_series(L, x, ctx) - ref).abs() > threshold) {
                cross = i / 10.0;
                break;
            }
        }
        REQUIRE(cross > 0.0);
        CHECK(cross > prev_cross);
        prev_cross = cross;
    }
}
