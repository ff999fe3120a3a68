#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "sincpi/pi_series.hpp"

#include "test_util.hpp"

using namespace sincpi;
using sincpi::test::kSeed;
using sincpi::test::tol;

TEST_CASE("single-term sums are exact rationals") {
    PrecisionContext ctx{3, 2};
    CHECK(pi_direct(SeriesKind::Eq15, 1, ctx).value.str(3) == "3.200");
    CHECK(pi_direct(SeriesKind::Eq16, 1, ctx).value == BigReal(2));
}

TEST_CASE("direct sums match the published prefixes") {
    PrecisionContext ctx = PrecisionContext::make(40, 1000, 1000);
    auto prefix = [](const PiResult& r, std::size_t n) {
        return r.value.str().substr(0, n);
    };
    CHECK(prefix(pi_direct(SeriesKind::Eq15, 23, ctx), 22) == "3.14175018350749592267");
    CHECK(prefix(pi_direct(SeriesKind::Eq16, 23, ctx), 22) == "3.09779933287225735048");
    CHECK(prefix(pi_direct(SeriesKind::Eq15, 1000, ctx), 14) == "3.141592736923");
    CHECK(prefix(pi_direct(SeriesKind::Eq16, 1000, ctx), 14) == "3.140592486923");
}

TEST_CASE("direct summation cap") {
    PrecisionContext ctx{40, 20};
    CHECK_THROWS_AS(pi_direct(SeriesKind::Eq15, 1'000'000'000'000ULL, ctx), ResourceRefusal);
}

TEST_CASE("direct summation is chunk-invariant") {
    PrecisionContext ctx = PrecisionContext::make(40, 10000, 10000);
    auto r1 = pi_direct(SeriesKind::Eq15, 10000, ctx, 1);
    auto r3 = pi_direct(SeriesKind::Eq15, 10000, ctx, 3);
    auto r8 = pi_direct(SeriesKind::Eq15, 10000, ctx, 8);
    CHECK(r1.value.scaled() == r3.value.scaled());
    CHECK(r1.value.scaled() == r8.value.scaled());
}

TEST_CASE("bernoulli numbers from the recurrence") {
    auto table = bernoulli_even(12);
    CHECK(table.b2k(1) == Rational(1, 6));
    CHECK(table.b2k(2) == Rational(-1, 30));
    CHECK(table.b2k(3) == Rational(1, 42));
    CHECK(table.b2k(4) == Rational(-1, 30));
    CHECK(table.b2k(6) == Rational(-691, 2730));
    CHECK_THROWS_AS(bernoulli_even(3), std::domain_error);
}

TEST_CASE("acceleration gate: accelerated equals direct") {
    // the correction coefficients are trusted only because this passes
    PrecisionContext ctx = PrecisionContext::make(30, 100000, 100000);
    for (SeriesKind kind : {SeriesKind::Eq15, SeriesKind::Eq16}) {
        for (std::uint64_t L : {23ULL, 100ULL, 1000ULL}) {
            auto direct = pi_direct(kind, L, ctx);
            auto accel = pi_accelerated(kind, L, 12, ctx);
            CHECK((direct.value - accel.value).abs() <= tol(28));
        }
    }
}

TEST_CASE("accelerated refuses unreachable digit requests") {
    PrecisionContext ctx{40, 20};
    try {
        pi_accelerated(SeriesKind::Eq15, 2, ctx);
        FAIL("expected AccuracyRefusal");
    } catch (const AccuracyRefusal& e) {
        CHECK(e.achievable_digits < 40);
    }
}

TEST_CASE("accelerated large-L values match the published prefixes") {
    PrecisionContext ctx = PrecisionContext::make(40, 1'000'000'000'000ULL, 16);
    auto a15 = pi_accelerated(SeriesKind::Eq15, 1'000'000'000'000ULL, ctx);
    CHECK(a15.value.str().substr(0, 29) == "3.141592653589793238462643466");
    auto a16 = pi_accelerated(SeriesKind::Eq16, 1'000'000'000'000ULL, ctx);
    CHECK(a16.value.str().substr(0, 27) == "3.1415926535887932384626432");
    auto a9 = pi_accelerated(SeriesKind::Eq15, 1'000'000'000ULL, ctx);
    CHECK(a9.value.str().substr(0, 22) == "3.14159265358979323854");
    auto a6 = pi_accelerated(SeriesKind::Eq15, 1'000'000ULL, ctx);
    CHECK(a6.value.str().substr(0, 16) == "3.14159265358987");
}

TEST_CASE("convergence probe") {
    PrecisionContext ctx = PrecisionContext::make(30, 1000, 1000);
    BigReal ref = pi_value(ctx.work());

    SECTION("errors strictly decrease for both series") {
        for (SeriesKind kind : {SeriesKind::Eq15, SeriesKind::Eq16}) {
            auto results = pi_convergence_probe(kind, {10, 100, 1000}, ctx);
            REQUIRE(results.size() == 3);
            BigReal prev = (results[0].value - ref).abs();
            for (std::size_t i = 1; i < results.size(); ++i) {
                BigReal err = (results[i].value - ref).abs();
                CHECK(err < prev);
                prev = err;
            }
        }
    }

    SECTION("singleton list equals the single evaluation") {
        auto results = pi_convergence_probe(SeriesKind::Eq15, {500}, ctx);
        REQUIRE(results.size() == 1);
        CHECK(results[0].value.scaled() == pi_direct(SeriesKind::Eq15, 500, ctx).value.scaled());
    }

    SECTION("bad lists rejected") {
        CHECK_THROWS_AS(pi_convergence_probe(SeriesKind::Eq15, {}, ctx), std::domain_error);
        CHECK_THROWS_AS(pi_convergence_probe(SeriesKind::Eq15, {100, 50}, ctx), std::domain_error);
    }
}

TEST_CASE("asymptotic error laws") {
    PrecisionContext ctx = PrecisionContext::make(30, 1600, 1600);
    BigReal ref = pi_value(ctx.work());
    const int w = ctx.work();

    SECTION("midpoint series: error ~ 1/(12 L^2)") {
        for (std::uint64_t L : {100ULL, 200ULL, 400ULL, 800ULL, 1600ULL}) {
            BigReal err = (pi_direct(SeriesKind::Eq15, L, ctx).value - ref).abs();
            BigReal model = div_at(BigReal(1), BigReal(BigInt(12) * L * L, 0), w);
            BigReal ratio = div_at(err, model, 6);
            CHECK(ratio > BigReal::parse("0.99"));
            CHECK(ratio < BigReal::parse("1.01"));
        }
    }

    SECTION("endpoint series: error + 1/L ~ -1/(6 L^2)") {
        for (std::uint64_t L : {100ULL, 200ULL, 400ULL, 800ULL, 1600ULL}) {
            BigReal inv_l = div_at(BigReal(1), BigReal(BigInt(L), 0), w);
            BigReal residual =
                (pi_direct(SeriesKind::Eq16, L, ctx).value - ref + inv_l).abs();
            BigReal model = div_at(BigReal(1), BigReal(BigInt(6) * L * L, 0), w);
            BigReal ratio = div_at(residual, model, 6);
            CHECK(ratio > BigReal::parse("0.9"));
            CHECK(ratio < BigReal::parse("1.1"));
        }
    }

    SECTION("series difference is 1/L to leading order") {
        for (std::uint64_t L : {1000ULL, 10000ULL}) {
            BigReal diff = pi_direct(SeriesKind::Eq15, L, ctx).value -
                           pi_direct(SeriesKind::Eq16, L, ctx).value;
            BigReal inv_l = div_at(BigReal(1), BigReal(BigInt(L), 0), w);
            BigReal second_order = div_at(BigReal(1), BigReal(BigInt(2) * L * L, 0), w);
            CHECK((diff - inv_l).abs() < second_order);
        }
    }
}

TEST_CASE("both denominator forms agree") {
    // (2l-1)^2 + 4L^2 == 4l^2 - 4l + 1 + 4L^2
    std::mt19937_64 rng(kSeed);
    std::uniform_int_distribution<long long> dist(1, 1'000'000'000);
    for (int i = 0; i < 200; ++i) {
        BigInt l(dist(rng)), L(dist(rng));
        CHECK((2 * l - 1) * (2 * l - 1) + 4 * L * L == 4 * l * l - 4 * l + 1 + 4 * L * L);
    }
}
