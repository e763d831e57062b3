#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"

using namespace jwt;

TEST_CASE("support edge")
{
    NumericContext ctx(60);
    auto p = wp("0", "1", "0", "0", ctx.bits());
    auto e = support_edge(p, ctx.num(6), ctx);
    CHECK(below(rel(e.exact, ctx.num(4)), -58));
    // 2s - t = 0 and s + t = 0 leave only the leading term
    for (int n : {3, 50, 1000}) {
        auto en = support_edge(p, ctx.num(n), ctx);
        CHECK(below(rel(en.series, 2 * sqrt(ctx.num(6 * n)) / 3), -58));
        CHECK(below(rel(en.exact, en.series), -58));
    }
    auto q = wp("0", "1", "1", "0.5", ctx.bits());
    auto eq = support_edge(q, ctx.num(37), ctx);
    CHECK(below(abs(edge_equation(q, ctx.num(37), eq.exact)), -50));
}

TEST_CASE("Lagrange multiplier at s = t = 0")
{
    NumericContext ctx(60);
    auto L = lagrange_multiplier(wp("0", "1", "0", "0", ctx.bits()), ctx.num(6), ctx);
    CHECK(below(rel(L.exact, ctx.num(6)), -58));
}

TEST_CASE("recurrence predictions")
{
    NumericContext ctx(60);
    auto p = wp("0", "1", "0", "0", ctx.bits());
    auto pr = predict_recurrence(p, 100, ctx);
    Real lead = sqrt(ctx.num(600)) / 3;
    CHECK(below(rel(pr.alpha_pred, lead + sqrt(ctx.num(6)) / 120), -58));
    CHECK(below(rel(pr.alpha_printed, lead + ctx.num(1) / 120), -58));
    CHECK(below(rel(pr.beta_pred, ctx.num(100) / 6), -58));

    auto h = wp("0", "1", "0.5", "1", ctx.bits());
    auto pl = build_pipeline(h, 25, ctx);
    auto p25 = predict_recurrence(h, 25, ctx);
    Real err = abs(pl.sys.beta[25] - p25.beta_pred);
    CHECK(err < ctx.num("0.1"));
    CHECK(err > ctx.num("1e-6"));
}

TEST_CASE("Heun parameters")
{
    NumericContext ctx(60);
    auto hp = heun_parameters(wp("0", "1", "0.5", "1", ctx.bits()), 9, ctx);
    CHECK(hp.delta.is_zero());
    CHECK(below(rel(hp.q, -12 * sqrt(ctx.num(3))), -58));
    CHECK(hp.gamma == -1);
    CHECK(hp.alpha.is_zero());
    auto hq = heun_parameters(wp("0", "1", "1", "0.5", ctx.bits()), 9, ctx);
    CHECK_FALSE(hq.delta.is_zero());
}

TEST_CASE("equilibrium density")
{
    NumericContext ctx(40);
    auto p = wp("0", "1", "0.5", "1", ctx.bits());
    Real n = ctx.num(10);
    Real b = support_edge(p, n, ctx).exact;
    for (int k = 1; k <= 50; ++k) {
        Real x = p.s + (b - p.s) * k / 51;
        CHECK(equilibrium_density(p, n, x, ctx) > 0);
    }
    for (int m : {1, 10, 100})
        CHECK(below(rel(density_mass(p, ctx.num(m), ctx), ctx.num(m)), -20));
    Real mid = (p.s + b) / 2;
    CHECK(below(rel(equilibrium_density(p, n, mid, ctx), equilibrium_density_pv(p, n, mid, ctx)), -20));
}

TEST_CASE("free energy differentiates to the Lagrange multiplier")
{
    for (const char* s : {"0.5", "1", "0.2"}) {
        NumericContext ctx(60);
        auto p = wp("0", "1", s, "1", ctx.bits());
        auto d = differentiate(free_energy_series(p, ctx.bits()));
        CHECK(below(series_distance(d, lagrange_series(p, ctx.bits())), -30));
        auto dp = differentiate(free_energy_series_printed(p, ctx.bits()));
        CHECK(below(series_distance(dp, lagrange_series_printed(p, ctx.bits())), -30));
    }
}

TEST_CASE("series algebra")
{
    long b = 200;
    Series a{{Real::make(3, b), 4, 1}, {Real::make(2, b), 2, 0}};
    Series d = normalize(differentiate(a));
    // d/dn (3 n^2 ln n + 2 n) = 6 n ln n + 3 n + 2
    Real n = Real::make(7, b);
    Real want = 6 * n * log(n) + 3 * n + 2;
    CHECK(below(rel(eval_series(d, n), want), -55));
    CHECK(series_distance(a, a).is_zero());
}

TEST_CASE("Lagrange series converges to the exact value")
{
    NumericContext ctx(60);
    auto p = wp("0", "1", "1", "0.5", ctx.bits());
    auto l1 = lagrange_multiplier(p, ctx.num(100), ctx);
    auto l4 = lagrange_multiplier(p, ctx.num(400), ctx);
    Real ratio = abs(l1.exact - l1.series) / abs(l4.exact - l4.series);
    CHECK(ratio > 22);
    CHECK(ratio < 45);
}

TEST_CASE("Heun limit decays and matches the Heun form")
{
    NumericContext ctx(60);
    auto p = wp("0", "1", "0.5", "1", ctx.bits());
    auto pls = exact_pipelines(p, {20, 40, 60, 80}, ctx);
    std::vector<Real> x1{p.s + 1};
    Real prev = ctx.num(1e300);
    for (size_t i = 0; i < pls.size(); ++i) {
        auto r = heun_residual(pls[i].sys, pls[i].aux, p, 20 * (int(i) + 1), x1);
        CHECK(r.informational);
        CHECK(r.residual < prev);
        prev = r.residual;
    }
    auto eq = heun_equivalence(pls[0].sys, p, 20, {p.s + 1, p.s + 2, p.s - 1}, pow10(-30, ctx.bits()));
    CHECK(eq.pass);
}

TEST_CASE("leading behaviour of R and r")
{
    NumericContext ctx(60);
    auto p = wp("0", "1", "0.5", "1", ctx.bits());
    auto pls = exact_pipelines(p, {25, 100}, ctx);
    auto a = predict_aux(p, 25, ctx), b = predict_aux(p, 100, ctx);
    Real eR = abs(pls[0].aux.R[25] - a.R) / abs(pls[1].aux.R[100] - b.R);
    CHECK(eR > 1.3);
    CHECK(eR < 2.7);
}

TEST_CASE("A > 0 is outside the modelled regime")
{
    NumericContext ctx(60);
    AsymptoticOptions o;
    o.n_lo = 10;
    o.n_hi = 40;
    o.edge_lo = 40;
    o.edge_hi = 160;
    o.heun_ns = {10, 20};
    auto reps = check_asymptotics(wp("1", "1", "0.5", "1", ctx.bits()), ctx, o);
    auto* r = find(reps, "5.13");
    REQUIRE(r);
    CHECK(r->branch == "regime-unsupported");
    CHECK_FALSE(r->counts());
}

TEST_CASE("principal value at the midpoint survives high precision")
{
    for (int D : {60, 180, 400}) {
        NumericContext ctx(D);
        auto p = wp("0", "1", "0.8", "0", ctx.bits());
        Real n = ctx.num(10);
        Real mid = (p.s + support_edge(p, n, ctx).exact) / 2;
        CHECK(below(rel(equilibrium_density(p, n, mid, ctx), equilibrium_density_pv(p, n, mid, ctx)), -20));
    }
}
