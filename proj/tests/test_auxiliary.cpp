#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace jwt;

TEST_CASE("B = 0 kills the auxiliary sequences")
{
    NumericContext ctx(60);
    auto pl = build_pipeline(wp("1", "0", "0.5", "1", ctx.bits()), 20, ctx);
    for (int n = 0; n <= 20; ++n) {
        CHECK(pl.aux.R[n].is_zero());
        CHECK(pl.aux.r[n].is_zero());
    }
    auto reps = check_algebraic(pl.sys, pl.aux, pl.params, pow10(-40, ctx.bits()));
    auto b = all_of(reps, "2.5b");
    CHECK(b.size() == 21);
    for (auto* r : b) CHECK(r->pass);
    for (auto* r : all_of(reps, "2.10")) CHECK(r->degenerate);
    CHECK(all_pass(reps));
}

TEST_CASE("R_0 on the half-line")
{
    NumericContext ctx(60);
    auto pl = build_pipeline(wp("0", "1", "0", "0", ctx.bits()), 2, ctx);
    CHECK(below(rel(pl.aux.R[0], ctx.num("1.1283791670955125738961589031215451716881")), -39));
    CHECK(below(rel(pl.aux.R[0] / 2, pl.sys.alpha[0]), -58));
    CHECK(pl.aux.r[0].is_zero());
    CHECK(pl.aux.sigma[0].is_zero());
}

TEST_CASE("r_n + n = 2 beta_n on independent quantities")
{
    NumericContext ctx(60);
    auto pl = build_pipeline(wp("1", "1", "0.5", "1", ctx.bits()), 5, ctx);
    CHECK(below(rel(pl.aux.r[3] + 3, 2 * pl.sys.beta[3]), -55));
    // sign of R follows B
    auto neg = build_pipeline(wp("1", "-0.5", "0.8", "0", ctx.bits()), 5, ctx);
    for (int n = 0; n <= 5; ++n) CHECK(neg.aux.R[n] < 0);
}

TEST_CASE("guard digits grow with the row count")
{
    CHECK(pipeline_guard_digits(0) == 10);
    CHECK(pipeline_guard_digits(20) == 40);
    CHECK(pipeline_guard_digits(400) > 600);
}

TEST_CASE("algebraic suite on the three parameter sets")
{
    const int N = 20;
    NumericContext ctx(60 + 12 * N);
    for (const auto& ps : suite_sets()) {
        auto p = wp(ps[0], ps[1], ps[2], ps[3], ctx.bits());
        auto pl = build_pipeline(p, N, ctx);
        auto reps = check_algebraic(pl.sys, pl.aux, p, pow10(-40, ctx.bits()));
        for (const char* id : {"1.4", "2.5a", "2.5b", "2.44a", "2.44b", "2.6a", "2.6b", "2.6c", "2.9",
                               "2.7", "2.7-init", "4.5", "4.4", "4.11", "4.12", "4.15", "4.18",
                               "4.19", "4.20", "4.21", "6.2"}) {
            auto rs = all_of(reps, id);
            CHECK_MESSAGE(!rs.empty(), id);
            for (auto* r : rs) CHECK_MESSAGE(r->pass, id << " n=" << r->n_lo);
        }
        auto b210 = all_of(reps, "2.10");
        CHECK(b210.size() == N);
        for (auto* r : b210) CHECK(!r->branch.empty());
        CHECK(all_pass(reps));
    }
}

TEST_CASE("printed 2.7 initial value is reported but does not count")
{
    NumericContext ctx(120);
    auto p = wp("0", "1", "0.5", "1", ctx.bits());
    auto pl = build_pipeline(p, 4, ctx);
    auto reps = check_algebraic(pl.sys, pl.aux, p, pow10(-40, ctx.bits()));
    auto* r = find(reps, "2.7-init-printed");
    REQUIRE(r);
    CHECK(r->informational);
    CHECK_FALSE(r->counts());
}

TEST_CASE("exact ODE")
{
    NumericContext ctx(180);
    Real tol = pow10(-40, ctx.bits());
    auto p = wp("0", "1", "0.5", "1", ctx.bits());
    auto pl = build_pipeline(p, 10, ctx);
    auto x = [&](const char* v) { return ctx.num(v); };

    auto r1 = check_ode_exact(pl.sys, pl.aux, p, 1, {x("1.5"), x("-0.7")}, tol);
    CHECK(r1.pass);
    CHECK(below(r1.residual, -150));

    auto r6 = check_ode_exact(pl.sys, pl.aux, p, 6, {x("1.5"), x("-0.5"), x("2.5"), x("-1.5"), x("3.5")}, tol);
    CHECK(r6.pass);

    for (const auto& ps : suite_sets()) {
        auto q = wp(ps[0], ps[1], ps[2], ps[3], ctx.bits());
        auto ql = build_pipeline(q, 10, ctx);
        for (int n = 0; n <= 10; ++n) {
            Real s = q.s;
            auto rr = check_ode_exact(ql.sys, ql.aux, q, n, {s + x("1.1"), s - x("0.9"), s + x("2.3")}, tol);
            CHECK_MESSAGE(rr.pass, "n=" << n);
        }
    }

    CHECK_THROWS_AS(check_ode_exact(pl.sys, pl.aux, p, 6, {p.s + x("1e-4")}, tol), std::domain_error);
    Real bad = p.s - pl.aux.R[6] / 2;
    CHECK_THROWS_AS(check_ode_exact(pl.sys, pl.aux, p, 6, {bad}, tol), std::domain_error);
}

TEST_CASE("Hermite limit of the ODE")
{
    NumericContext ctx(100);
    auto p = wp("1", "0", "0.5", "1", ctx.bits());
    auto pl = build_pipeline(p, 8, ctx);
    for (int n = 0; n <= 8; ++n) {
        auto r = check_ode_exact(pl.sys, pl.aux, p, n, {ctx.num("0.3"), ctx.num("2.2")}, pow10(-80, ctx.bits()));
        CHECK(r.pass);
    }
}
