#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

#include <random>

using namespace jwt;

TEST_CASE("erfc at zero and reflection")
{
    NumericContext ctx(50);
    CHECK(erfc(ctx.num(0), ctx) == 1);
    Real x = ctx.num("1.25");
    CHECK(below(rel(erfc(-x, ctx) + erfc(x, ctx), ctx.num(2)), -48));
}

TEST_CASE("erfc(1) frozen value")
{
    NumericContext ctx(50);
    Real want = ctx.num("0.15729920705028513065877936491739074070393300203370");
    Real one = ctx.num(1);
    CHECK(below(rel(erfc(one, ctx), want), -48));
    // both branches agree at the crossover region
    CHECK(below(rel(erfc_series(one, ctx.bits()), want), -48));
    CHECK(below(rel(erfc_contfrac(ctx.num(3), ctx.bits()), erfc_series(ctx.num(3), ctx.bits())), -45));
}

TEST_CASE("erfc reflection on random points")
{
    NumericContext ctx(60);
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int k = 0; k < 100; ++k) {
        Real x = ctx.num(u(gen));
        CHECK(below(rel(erfc(x, ctx) + erfc(-x, ctx), ctx.num(2)), -58));
    }
}

TEST_CASE("erfc tracks mpfr across the branch switch")
{
    NumericContext ctx(80);
    for (const char* xs : {"-4.5", "-0.3", "0.7", "1.99", "2.01", "3.5", "6", "12"}) {
        Real x = ctx.num(xs);
        Real ref = x;
        mpfr_erfc(ref.raw(), x.raw(), MPFR_RNDN);
        CHECK(below(rel(erfc(x, ctx), ref), -78));
    }
}

TEST_CASE("erfc is honest under a precision increase")
{
    NumericContext lo(60), hi(80);
    for (const char* xs : {"0.25", "1.5", "2.5", "4"}) {
        Real a = erfc(lo.num(xs), lo), b = erfc(hi.num(xs), hi);
        CHECK(below(rel(a.at(hi.bits()), b), -55));
    }
}

TEST_CASE("central differences")
{
    NumericContext ctx(60);
    FDScheme sc = make_scheme(ctx.num("1e-10"), ctx);
    Real d = central_diff([](const Real& x) { return x * x; }, ctx.num(1), sc);
    CHECK(below(rel(d, ctx.num(2)), -18));

    FDScheme s2 = make_scheme(ctx.num("1e-6"), ctx);
    Real d2 = central_second_diff([](const Real& x) { return exp(x); }, ctx.num(0), s2);
    CHECK(abs(d2 - 1) <= ctx.num("1e-12"));
}

TEST_CASE("central differences converge at second order")
{
    NumericContext ctx(60);
    Real x = ctx.num("0.7");
    auto err = [&](const char* h) {
        FDScheme sc = make_scheme(ctx.num(h), ctx);
        return abs(central_diff([](const Real& y) { return sin(y); }, x, sc) - cos(x));
    };
    Real ratio = err("1e-6") / err("5e-7");
    CHECK(ratio >= 3.5);
    CHECK(ratio <= 4.5);
}

TEST_CASE("mixed derivative")
{
    NumericContext ctx(60);
    FDScheme sc = make_scheme(ctx.num("1e-8"), ctx);
    Real d = mixed_diff([](const Real& x, const Real& y) { return exp(x * y); }, ctx.num("0.5"),
                        ctx.num("2"), sc);
    // (1 + xy) e^{xy}
    CHECK(below(rel(d, 2 * exp(ctx.num(1))), -14));
}

TEST_CASE("default step policy")
{
    auto step = [](int d) { return default_fd_step(NumericContext(d)); };
    CHECK(below(rel(step(60), pow10(-12, step(60).bits())), -50));
    CHECK(below(rel(step(30), pow10(-6, step(30).bits())), -25));
    CHECK(below(rel(step(200), pow10(-14, step(200).bits())), -50));
    NumericContext ctx(40);
    CHECK_THROWS_AS(make_scheme(ctx.num("1e-15"), ctx), std::invalid_argument);
}

TEST_CASE("tanh-sinh handles endpoint singularities")
{
    NumericContext ctx(50);
    Real tol = ctx.num("1e-45");
    Real a = ctx.num(0), b = ctx.num(1);
    Real v = tanh_sinh([](const Real& x) { return sqrt(x); }, a, b, ctx.bits(), tol);
    CHECK(below(rel(v, ctx.num(2) / 3), -44));
    QuadResult q = tanh_sinh(
        [](const Real&, const Real& da, const Real&) { return std::vector<Real>{1 / sqrt(da)}; }, a, b,
        ctx.bits(), tol);
    CHECK(below(rel(q.value[0], ctx.num(2)), -40));
}

TEST_CASE("context validation")
{
    CHECK_THROWS(validate(NumericContext(5)));
    CHECK(NumericContext(60).bits() >= digits_to_bits(70));
}
