#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace jwt;

namespace {

ParamPoint point(const char* A, const char* B, const char* s, const char* t, int n, int digits,
                 const char* h)
{
    NumericContext ctx(digits);
    return make_point(wp(A, B, s, t, ctx.bits()), n, ctx.num(h), ctx);
}

void all_pass_in(const std::vector<CheckReport>& reps)
{
    for (const auto& r : reps)
        CHECK_MESSAGE((r.pass || !r.counts()), r.id << " n=" << r.n_lo << " residual=" << to_string(r.residual, 6));
}

}  // namespace

TEST_CASE("d/ds ln h_0 on the half-line has a closed form")
{
    auto pt = point("0", "1", "0.3", "0", 0, 80, "1e-10");
    StencilGrid g(pt, 1);
    Real d = g.d_s([](const Pipeline& p) { return log(p.sys.h[0]); });
    long b = pt.ctx.bits();
    Real s = pt.params.s;
    Real want = -2 * exp(-sqr(s)) / (sqrt(pi(b)) * erfc(s, b));
    CHECK(below(rel(d, want), -18));
    CHECK(below(rel(d, -g.center().aux.R[0]), -18));
}

TEST_CASE("B = 0: derivative identities degenerate or vanish")
{
    auto pt = point("1", "0", "0.5", "1", 3, 80, "1e-10");
    auto first = check_first_order(pt, pow10(-16, pt.ctx.bits()));
    all_pass_in(first);
    for (const auto& r : check_riccati(pt, pow10(-16, pt.ctx.bits()))) CHECK(r.degenerate);
    for (const auto& r : check_second_order(pt, pow10(-12, pt.ctx.bits()))) CHECK(r.degenerate);
}

TEST_CASE("first-order suite")
{
    auto pt = point("1", "1", "0.8", "0.5", 5, 80, "1e-10");
    auto reps = check_first_order(pt, pow10(-16, pt.ctx.bits()));
    for (const char* id : {"3.1s", "3.1t", "3.2", "3.3", "3.5", "3.6", "3.7", "3.8", "3.9", "3.10", "4.25", "4.29", "4.1"})
        CHECK_MESSAGE(find(reps, id), id);
    all_pass_in(reps);
    CHECK(all_pass(reps));
}

TEST_CASE("Riccati suite")
{
    auto pt = point("0", "1", "0.5", "1", 4, 80, "1e-10");
    auto reps = check_riccati(pt, pow10(-16, pt.ctx.bits()));
    for (const char* id : {"3.11", "3.12", "3.13", "3.14", "3.13+3.14"}) CHECK_MESSAGE(find(reps, id), id);
    CHECK(all_pass(reps));

    // r_0 is identically zero, so its s-derivative is too
    auto p0 = point("0", "1", "0.5", "1", 0, 80, "1e-10");
    StencilGrid g(p0, 1);
    CHECK(g.d_s([](const Pipeline& p) { return p.aux.r[0]; }).is_zero());
}

TEST_CASE("second-order suite")
{
    auto pt = point("0", "1", "0.5", "1", 4, 100, "1e-8");
    Real tol = pow10(-12, pt.ctx.bits());
    auto reps = check_second_order(pt, tol);
    for (const char* id : {"3.20", "3.21", "3.20-3.21", "3.22", "3.23", "3.30"}) CHECK_MESSAGE(find(reps, id), id);
    all_pass_in(reps);
    auto p3 = point("0", "1", "0.5", "1", 3, 100, "1e-8");
    auto pv = check_painleve4(p3, tol);
    CHECK(find(pv, "3.24"));
    CHECK(all_pass(pv));
}

TEST_CASE("Chazy forms")
{
    auto p0 = point("0", "1", "0.5", "1", 0, 100, "1e-8");
    Real tol = pow10(-12, p0.ctx.bits());
    for (const auto& r : check_chazy(p0, tol)) {
        CHECK(r.pass);
        CHECK(below(r.residual, -80));
    }
    auto p4 = point("0", "1", "0.5", "1", 4, 100, "1e-8");
    auto reps = check_chazy(p4, tol);
    CHECK(find(reps, "CS"));
    CHECK(find(reps, "CT"));
    CHECK(all_pass(reps));
}

TEST_CASE("sigma forms")
{
    auto pt = point("0", "1", "0.5", "1", 4, 100, "1e-8");
    auto reps = check_sigma_form(pt, pow10(-12, pt.ctx.bits()));
    for (const char* id : {"4.13", "4.14", "4.14-r", "4.16", "4.17", "4.24", "4.28"}) CHECK_MESSAGE(find(reps, id), id);
    CHECK(all_pass(reps));
}

TEST_CASE("Toda identity")
{
    // ln D_1 = ln(sqrt(pi) e^{t^2/4}): second t-derivative 1/2 = beta_1
    auto pt = point("1", "0", "0.5", "0", 1, 100, "1e-8");
    StencilGrid g(pt, 2);
    Real d = g.d_tt([](const Pipeline& p) { return p.sys.logD[1]; });
    CHECK(below(rel(d, pt.ctx.num(1) / 2), -14));
    CHECK(all_pass(check_toda_type(pt, pow10(-12, pt.ctx.bits()))));

    auto p5 = point("1", "1", "0.8", "0.5", 5, 100, "1e-8");
    auto reps = check_toda_type(p5, pow10(-12, p5.ctx.bits()));
    CHECK(find(reps, "toda"));
    CHECK(all_pass(reps));
}

TEST_CASE("the full calculus suite on every set")
{
    for (const auto& ps : suite_sets())
        for (int n : {0, 1, 2, 6}) {
            NumericContext ctx(100);
            auto pt = make_point(wp(ps[0], ps[1], ps[2], ps[3], ctx.bits()), n, ctx.num("1e-10"), ctx);
            auto reps = check_calculus(pt, pow10(-16, ctx.bits()), pow10(-12, ctx.bits()));
            all_pass_in(reps);
        }
}

TEST_CASE("invalid stencil parameters")
{
    NumericContext ctx(60);
    auto pt = make_point(wp("1", "-2", "0.5", "1", ctx.bits()), 1, ctx);
    StencilGrid g(pt, 2);
    CHECK_THROWS_AS(g.value([](const Pipeline& p) { return p.aux.R[1]; }), StencilError);
}
