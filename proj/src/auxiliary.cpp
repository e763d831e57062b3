#include "jumpweight/auxiliary.hpp"

#include <algorithm>

namespace jw {

AuxSequences aux_sequences(const OPSystem& sys, const WeightParams& params, int nmax)
{
    if (nmax < 0 || nmax > sys.nmax) throw std::invalid_argument("nmax outside the system");
    long bits = sys.ctx.bits();
    Real s = params.s.at(bits), t = params.t.at(bits), B = params.B.at(bits);
    AuxSequences aux;
    aux.nmax = nmax;
    aux.E = params.jump_factor(bits);

    // P_n(s) by the recurrence, all n at once
    Real pm = Real::zero(bits), p = Real::make(1, bits);
    aux.Ps.push_back(p);
    for (int j = 0; j < nmax; ++j) {
        Real next = (s - sys.alpha[j]) * p - sys.beta[j] * pm;
        pm = std::move(p);
        p = std::move(next);
        aux.Ps.push_back(p);
    }
    Real BE = B * aux.E;
    for (int n = 0; n <= nmax; ++n) {
        aux.R.push_back(BE * sqr(aux.Ps[n]) / sys.h[n]);
        if (n == 0)
            aux.r.push_back(Real::zero(bits));
        else
            aux.r.push_back(BE * aux.Ps[n] * aux.Ps[n - 1] / sys.h[n - 1]);
    }
    for (int n = 0; n <= nmax + 1; ++n) aux.sigma.push_back(n * t + sys.p[n]);
    aux.sumR.push_back(Real::zero(bits));
    for (int n = 0; n <= nmax; ++n) aux.sumR.push_back(aux.sumR.back() + aux.R[n]);
    return aux;
}

int pipeline_guard_digits(int nmax)
{
    return 10 + (3 * nmax + 1) / 2;
}

Pipeline build_pipeline(const WeightParams& params, int nmax, const NumericContext& ctx)
{
    validate(params);
    NumericContext inner = ctx.with_guard(ctx.guard_digits + pipeline_guard_digits(nmax));
    Pipeline pl;
    pl.ctx = ctx;
    pl.params = params;
    pl.tbl = moments(params, 2 * nmax + 1, inner);
    try {
        pl.sys = build_opsystem(pl.tbl, nmax);
    } catch (const PositivityLost& e) {
        throw PositivityLost(e.row, ctx.digits);
    }
    pl.aux = aux_sequences(pl.sys, params, nmax);
    return pl;
}

namespace {

Real mx(std::initializer_list<Real> v)
{
    Real m = abs(*v.begin());
    for (const auto& e : v) m = max(m, abs(e));
    return m;
}

Real root0(const Real& x)
{
    return x.sign() > 0 ? sqrt(x) : Real::zero(x.bits());
}

}  // namespace

std::vector<CheckReport> check_algebraic(const OPSystem& sys, const AuxSequences& aux,
                                         const WeightParams& params, const Real& tol)
{
    const int N = aux.nmax;
    long bits = sys.ctx.bits();
    Real s = params.s.at(bits), t = params.t.at(bits), B = params.B.at(bits);
    Real u = 2 * s - t;
    const auto& al = sys.alpha;
    const auto& be = sys.beta;
    const auto& R = aux.R;
    const auto& r = aux.r;
    const auto& sg = aux.sigma;
    const bool degen = B.is_zero();
    const std::string why_b0 = "B = 0 makes R_n identically zero";
    std::vector<CheckReport> out;

    for (int n = 1; n <= N; ++n)
        out.push_back(compare("1.4", n, be[n], sys.h[n] / sys.h[n - 1], {}, tol));

    for (int n = 0; n + 1 <= N; ++n)
        out.push_back(compare("2.5a", n, r[n + 1] + r[n], (s - al[n]) * R[n],
                              {r[n + 1], r[n], s * R[n], al[n] * R[n]}, tol));
    for (int n = 0; n <= N; ++n)
        out.push_back(compare("2.5b", n, R[n] + t, 2 * al[n], {R[n], t}, tol));
    for (int n = 0; n + 1 <= N; ++n)
        out.push_back(compare("2.44a", n, r[n + 1] - r[n], 2 * be[n + 1] - 2 * be[n] - 1,
                              {r[n + 1], r[n], 2 * be[n + 1], 2 * be[n], Real::make(1, bits)}, tol));
    for (int n = 1; n + 1 <= N; ++n)
        out.push_back(compare("2.44b", n, (al[n] - s) * (r[n + 1] - r[n]),
                              be[n] * R[n - 1] - be[n + 1] * R[n + 1],
                              {al[n] * r[n + 1], al[n] * r[n], s * r[n + 1], s * r[n],
                               be[n] * R[n - 1], be[n + 1] * R[n + 1]},
                              tol));
    for (int n = 1; n <= N; ++n)
        out.push_back(compare("2.6a", n, sqr(r[n]), be[n] * R[n] * R[n - 1], {}, tol));
    for (int n = 1; n <= N; ++n)
        out.push_back(compare("2.6b", n, aux.sumR[n] + u * r[n], 2 * be[n] * (R[n] + R[n - 1]),
                              {aux.sumR[n], 2 * s * r[n], t * r[n], 2 * be[n] * R[n],
                               2 * be[n] * R[n - 1]},
                              tol));
    for (int n = 0; n <= N; ++n)
        out.push_back(compare("2.6c", n, r[n] + n, 2 * be[n], {r[n], Real::make(n, bits)}, tol));
    for (int n = 0; n + 1 <= N; ++n)
        out.push_back(compare("2.9", n, 2 * (r[n] + r[n + 1]), (u - R[n]) * R[n],
                              {2 * r[n], 2 * r[n + 1], 2 * s * R[n], t * R[n], sqr(R[n])}, tol));

    for (int n = 1; n <= N; ++n) {
        if (degen) {
            out.push_back(degenerate_report("2.10", n, why_b0, tol));
            continue;
        }
        Real q = R[n] * R[n - 1];
        Real rad = root0(q * (q + 8 * n));
        auto rep = compare_branches("2.10", n, r[n], (q + rad) / 4, (q - rad) / 4,
                                    {q / 4, rad / 4}, tol);
        out.push_back(rep);
    }

    auto eq27 = [&](int n, const Real& Rm, const Real& R0, const Real& Rp, const std::string& id,
                    bool with_pre) {
        Real inner = 2 * R0 * sqr(u - R0) - 2 * (Rp + Rm) * (u * R0 - sqr(R0) + 2 * n) +
                     R0 * Rm * Rp - 4 * Rp;
        Real a = R0 * Rm + 8 * n, b = R0 * Rp + 8 * n + 8;
        Real rhs = Rp * Rm * a * b;
        Real inner_scale = mx({2 * R0 * sqr(u - R0), 2 * (Rp + Rm) * (u * R0 - sqr(R0) + 2 * n),
                               R0 * Rm * Rp, 4 * Rp});
        Real rhs_scale = abs(Rp * Rm) * mx({R0 * Rm, Real::make(8 * n, bits)}) *
                         mx({R0 * Rp, Real::make(8 * n + 8, bits)});
        out.push_back(compare(id, n, sqr(inner), rhs, {sqr(inner_scale), rhs_scale}, tol));
        if (with_pre) {
            Real rad = root0(rhs);
            out.push_back(compare_branches(id + "-pre", n, inner, rad, -rad, {inner_scale}, tol));
        }
    };
    for (int n = 1; n + 1 <= N; ++n) eq27(n, R[n - 1], R[n], R[n + 1], "2.7", true);

    // initial conditions as displayed with the second-order difference equation
    if (N >= 2) {
        Real R0_init = B * aux.E / sys.h[0];
        out.push_back(compare("2.7-init-R0", 0, R[0], R0_init, {}, tol));
        Real P1 = s - al[0];
        Real R1_h1 = B * sqr(P1) * aux.E / sys.h[1];
        Real R1_printed = B * sqr(P1) * aux.E / sys.h[0];
        eq27(1, R0_init, R1_h1, R[2], "2.7-init", false);
        eq27(1, R0_init, R1_printed, R[2], "2.7-init-printed", false);
        auto& last = out.back();
        last.informational = true;
        last.branch = "printed";
        last.note = "R_1 initial condition as printed divides by h_0 instead of h_1";
    }

    for (int n = 0; n <= N; ++n)
        out.push_back(compare("4.5", n, R[n], 2 * sg[n] - 2 * sg[n + 1] + t,
                              {R[n], 2 * sg[n], 2 * sg[n + 1], t}, tol));
    for (int n = 0; n <= N + 1; ++n)
        out.push_back(compare("4.4", n, 2 * sg[n], n * t - aux.sumR[n],
                              {2 * sg[n], n * t, aux.sumR[n]}, tol));
    for (int n = 1; n <= N; ++n) {
        Real ratio = exp(sys.logD[n + 1] + sys.logD[n - 1] - 2 * sys.logD[n]);
        out.push_back(compare("4.11", n, be[n], ratio, {}, tol));
    }

    for (int n = 1; n <= N; ++n) {
        Real inner = n * t + 2 * sg[n] + 2 * n * (sg[n - 1] - sg[n + 1]);
        Real f1 = 2 * sg[n - 1] - 2 * sg[n + 1] + 3 * t - 2 * s;
        Real f2 = n * t - n * s - sg[n];
        Real f3 = 2 * sg[n] - 2 * sg[n + 1] + t;
        Real f4 = 2 * sg[n - 1] - 2 * sg[n] + t;
        Real rhs = f1 * f2 * f3 * f4;
        Real inner_scale = mx({n * t, 2 * sg[n], 2 * n * sg[n - 1], 2 * n * sg[n + 1]});
        Real rhs_scale = mx({2 * sg[n - 1], 2 * sg[n + 1], 3 * t, 2 * s}) *
                         mx({n * t, n * s, sg[n]}) * mx({2 * sg[n], 2 * sg[n + 1], t}) *
                         mx({2 * sg[n - 1], 2 * sg[n], t});
        out.push_back(compare("4.12", n, sqr(inner), rhs, {sqr(inner_scale), rhs_scale}, tol));
        Real rad = root0(rhs);
        out.push_back(compare_branches("4.12-pre", n, inner, rad, -rad, {inner_scale}, tol));
    }

    {
        Real St = s - t / 2;
        auto tl = [&](int k) { return 2 * sg[k] - k * t; };
        for (int n = 1; n <= N; ++n) {
            Real inner = tl(n) + n * (tl(n - 1) - tl(n + 1));
            Real lhs = 2 * sqr(inner);
            Real rhs = (tl(n + 1) - tl(n - 1) + 2 * St) * (2 * n * St + tl(n)) *
                       (tl(n) - tl(n + 1)) * (tl(n - 1) - tl(n));
            Real inner_scale = mx({tl(n), n * tl(n - 1), n * tl(n + 1)});
            Real rhs_scale = mx({tl(n + 1), tl(n - 1), 2 * St}) * mx({2 * n * St, tl(n)}) *
                             mx({tl(n), tl(n + 1)}) * mx({tl(n - 1), tl(n)});
            out.push_back(compare("4.15", n, lhs, rhs, {2 * sqr(inner_scale), rhs_scale}, tol));
        }
    }

    for (int n = 1; n <= N; ++n) {
        Real f = 2 * sg[n - 1] - 2 * sg[n + 1] + 2 * t;
        out.push_back(compare("4.18", n, n * t - 2 * sg[n], (r[n] + n) * f + (t - 2 * s) * r[n],
                              {n * t, 2 * sg[n], r[n] * 2 * sg[n - 1], r[n] * 2 * sg[n + 1],
                               n * 2 * sg[n - 1], n * 2 * sg[n + 1], 2 * t * (r[n] + n),
                               t * r[n], 2 * s * r[n]},
                              tol));
    }

    for (int n = 1; n <= N; ++n) {
        if (degen) {
            out.push_back(degenerate_report("4.19", n, why_b0, tol));
            out.push_back(degenerate_report("4.20", n, why_b0, tol));
            out.push_back(degenerate_report("4.21", n, why_b0, tol));
            out.push_back(degenerate_report("6.2", n, why_b0, tol));
            continue;
        }
        Real num = -n * t - 2 * sg[n] - 2 * n * (sg[n - 1] - sg[n + 1]);
        Real den = 2 * sg[n - 1] - 2 * sg[n + 1] + 3 * t - 2 * s;
        out.push_back(compare("4.19", n, r[n], num / den,
                              {mx({n * t, 2 * sg[n], 2 * n * sg[n - 1], 2 * n * sg[n + 1]}) /
                               abs(den)},
                              tol));
        Real f3 = 2 * sg[n] - 2 * sg[n + 1] + t;
        Real f4 = 2 * sg[n - 1] - 2 * sg[n] + t;
        out.push_back(compare("4.20", n, 2 * sqr(r[n]), (r[n] + n) * f3 * f4,
                              {mx({r[n], Real::make(n, bits)}) * mx({2 * sg[n], 2 * sg[n + 1], t}) *
                               mx({2 * sg[n - 1], 2 * sg[n], t})},
                              tol));
        out.push_back(compare("4.21", n, 2 * sqr(r[n]) / R[n] + (r[n] + n) * R[n] + (t - 2 * s) * r[n],
                              n * t - 2 * sg[n],
                              {2 * sqr(r[n]) / R[n], r[n] * R[n], n * R[n], t * r[n], 2 * s * r[n],
                               n * t, 2 * sg[n]},
                              tol));
        out.push_back(compare("6.2", n, aux.sumR[n],
                              (r[n] + n) * R[n] + 2 * sqr(r[n]) / R[n] - u * r[n],
                              {r[n] * R[n], n * R[n], 2 * sqr(r[n]) / R[n], 2 * s * r[n], t * r[n]},
                              tol));
    }

    stamp_digits(out, sys.ctx.digits);
    return out;
}

CheckReport check_ode_exact(const OPSystem& sys, const AuxSequences& aux,
                            const WeightParams& params, int n, const std::vector<Real>& xs,
                            const Real& tol)
{
    if (n < 0 || n > aux.nmax) throw std::out_of_range("ODE degree outside the auxiliary range");
    long bits = sys.ctx.bits();
    Real s = params.s.at(bits), t = params.t.at(bits), B = params.B.at(bits);
    Real u = 2 * s - t;
    const Real& R = aux.R[n];
    const Real& r = aux.r[n];
    Real gap = pow10(-3, bits);

    CheckReport rep;
    rep.id = "2.555";
    rep.n_lo = rep.n_hi = n;
    rep.tolerance = tol;
    rep.residual = Real::zero(bits);
    rep.scale = Real::zero(bits);
    for (const auto& x0 : xs) {
        Real x = x0.at(bits);
        Real y = x - s;
        if (abs(y) < gap)
            throw std::domain_error("sample point " + to_string(x, 12) + " too close to the jump");
        PolyDerivs pd = eval_poly_derivs(sys, n, x);
        std::vector<Real> terms;
        Real res;
        if (B.is_zero()) {
            Real c1 = 2 * x - t;
            res = pd.d2P - c1 * pd.dP + 2 * n * pd.P;
            terms = {pd.d2P, c1 * pd.dP, 2 * n * pd.P};
        } else {
            Real w = 2 * y + R;
            if (abs(w) < gap)
                throw std::domain_error("sample point " + to_string(x, 12) +
                                        " too close to the apparent singularity");
            Real k1 = R / (y * w);
            Real a0 = -r / sqr(y);
            Real a1 = r * R / (sqr(y) * w);
            Real a2 = Real::make(2 * n, bits);
            Real a3 = ((r + n) * R + 2 * sqr(r) / R - u * r) / y;
            res = pd.d2P - (2 * x - t - k1) * pd.dP + (a0 + a1 + a2 + a3) * pd.P;
            terms = {pd.d2P, (2 * x - t) * pd.dP, k1 * pd.dP, a0 * pd.P, a1 * pd.P, a2 * pd.P,
                     (r + n) * R / y * pd.P, 2 * sqr(r) / (R * y) * pd.P, u * r / y * pd.P};
        }
        Real sc;
        Real rr = relative_residual(res, Real::zero(bits), terms, &sc);
        if (rr >= rep.residual) {
            rep.residual = rr;
            rep.scale = sc;
        }
    }
    rep.pass = rep.residual <= tol;
    rep.digits = sys.ctx.digits;
    return rep;
}

}  // namespace jw
