#include "jumpweight/calculus.hpp"

namespace jw {

ParamPoint make_point(const WeightParams& params, int n, const NumericContext& ctx)
{
    return {params.at(ctx.bits()), n, make_scheme(ctx), ctx};
}

ParamPoint make_point(const WeightParams& params, int n, const Real& step,
                      const NumericContext& ctx)
{
    return {params.at(ctx.bits()), n, make_scheme(step, ctx), ctx};
}

StencilGrid::StencilGrid(const ParamPoint& pt, int nmax) : pt_(pt), nmax_(nmax)
{
    if (pt.n < 0) throw std::invalid_argument("n must be non-negative");
    long bits = pt.ctx.bits();
    const Real& h = pt.scheme.step;
    Real s = pt.params.s.at(bits), t = pt.params.t.at(bits);
    for (int k = 0; k < 3; ++k) {
        sv_[k] = s + (k - 1) * h;
        tv_[k] = t + (k - 1) * h;
    }
}

const Pipeline& StencilGrid::at(int i, int j) const
{
    auto key = std::make_pair(i, j);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    WeightParams wp = pt_.params;
    wp.s = sv_[i + 1];
    wp.t = tv_[j + 1];
    try {
        return cache_.emplace(key, build_pipeline(wp, nmax_, pt_.ctx)).first->second;
    } catch (const std::invalid_argument& e) {
        throw StencilError("stencil point (" + std::to_string(i) + "," + std::to_string(j) +
                           ") outside the parameter domain: " + e.what());
    }
}

Real StencilGrid::value(const Quantity& q) const { return q(at(0, 0)); }

Real StencilGrid::d_s(const Quantity& q) const
{
    return (q(at(1, 0)) - q(at(-1, 0))) / (sv_[2] - sv_[0]);
}

Real StencilGrid::d_t(const Quantity& q) const
{
    return (q(at(0, 1)) - q(at(0, -1))) / (tv_[2] - tv_[0]);
}

Real StencilGrid::d_ss(const Quantity& q) const
{
    return second_derivative(q(at(1, 0)), q(at(0, 0)), q(at(-1, 0)), pt_.scheme.step);
}

Real StencilGrid::d_tt(const Quantity& q) const
{
    return second_derivative(q(at(0, 1)), q(at(0, 0)), q(at(0, -1)), pt_.scheme.step);
}

Real StencilGrid::d_st(const Quantity& q) const
{
    return mixed_derivative(q(at(1, 1)), q(at(1, -1)), q(at(-1, 1)), q(at(-1, -1)),
                            pt_.scheme.step);
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

Quantity q_R(int n) { return [n](const Pipeline& p) { return p.aux.R[n]; }; }
Quantity q_r(int n) { return [n](const Pipeline& p) { return p.aux.r[n]; }; }
Quantity q_sigma(int n) { return [n](const Pipeline& p) { return p.aux.sigma[n]; }; }
Quantity q_alpha(int n) { return [n](const Pipeline& p) { return p.sys.alpha[n]; }; }
Quantity q_beta(int n) { return [n](const Pipeline& p) { return p.sys.beta[n]; }; }
Quantity q_p(int n) { return [n](const Pipeline& p) { return p.sys.p[n]; }; }
Quantity q_logh(int n) { return [n](const Pipeline& p) { return log(p.sys.h[n]); }; }
Quantity q_logD(int n) { return [n](const Pipeline& p) { return p.sys.logD[n]; }; }

struct Ctx {
    const ParamPoint& pt;
    int n;
    long bits;
    Real s, t, u;
    bool b0;
    Ctx(const ParamPoint& p)
        : pt(p), n(p.n), bits(p.ctx.bits()), s(p.params.s.at(bits)), t(p.params.t.at(bits)),
          u(2 * s - t), b0(p.params.B.is_zero())
    {
    }
};

const std::string kB0 = "B = 0 makes R_n identically zero";

std::vector<CheckReport>& finish(std::vector<CheckReport>& out, const ParamPoint& pt)
{
    for (auto& r : out)
        if (!r.degenerate && r.note.empty())
            r.note = "h=" + to_string(pt.scheme.step, 3);
    return stamp_digits(out, pt.ctx.digits);
}

}  // namespace

std::vector<CheckReport> check_first_order(const ParamPoint& pt, const Real& tol)
{
    Ctx c(pt);
    const int n = c.n;
    StencilGrid g(pt, n + 1);
    const Pipeline& p0 = g.center();
    const auto& al = p0.sys.alpha;
    const auto& be = p0.sys.beta;
    const auto& R = p0.aux.R;
    const auto& r = p0.aux.r;
    std::vector<CheckReport> out;

    out.push_back(compare("3.1s", n, g.d_s(q_logh(n)), -R[n], {}, tol));
    out.push_back(compare("3.1t", n, g.d_t(q_logh(n)), al[n], {}, tol));
    if (n >= 1) {
        Real bs = g.d_s(q_beta(n)), bt = g.d_t(q_beta(n));
        out.push_back(compare("3.2", n, bs, be[n] * (R[n - 1] - R[n]),
                              {be[n] * R[n - 1], be[n] * R[n]}, tol));
        out.push_back(compare("3.3", n, bt, be[n] * (al[n] - al[n - 1]),
                              {be[n] * al[n], be[n] * al[n - 1]}, tol));
        out.push_back(compare("3.7", n, bs, 2 * be[n] * (al[n - 1] - al[n]),
                              {2 * be[n] * al[n], 2 * be[n] * al[n - 1]}, tol));
        out.push_back(compare("3.8", n, bt, be[n] * (al[n] - al[n - 1]),
                              {be[n] * al[n], be[n] * al[n - 1]}, tol));
    } else {
        for (const char* id : {"3.2", "3.3", "3.7", "3.8"})
            out.push_back(degenerate_report(id, n, "n = 0: beta_0 = 0 and index n-1 undefined", tol));
    }
    out.push_back(compare("3.5", n, g.d_s(q_p(n)), r[n], {}, tol));
    out.push_back(compare("3.6", n, g.d_t(q_p(n)), -be[n], {}, tol));
    out.push_back(compare("3.9", n, g.d_s(q_alpha(n)), 2 * be[n] - 2 * be[n + 1] + 1,
                          {2 * be[n], 2 * be[n + 1], Real::make(1, c.bits)}, tol));
    out.push_back(compare("3.10", n, g.d_t(q_alpha(n)), be[n + 1] - be[n], {be[n + 1], be[n]}, tol));
    out.push_back(compare("4.25", n, g.d_s(q_sigma(n)), r[n], {}, tol));
    Real st = g.d_t(q_sigma(n));
    out.push_back(compare("4.29", n, st, n - be[n], {Real::make(n, c.bits), be[n]}, tol));
    out.push_back(compare("4.29b", n, st, (n - r[n]) / 2, {Real::make(n, c.bits) / 2, r[n] / 2}, tol));
    Real dD = g.d_t(q_logD(n)) + g.d_s(q_logD(n));
    out.push_back(compare("4.1", n, dD, p0.aux.sigma[n], {}, tol));
    return finish(out, pt);
}

std::vector<CheckReport> check_riccati(const ParamPoint& pt, const Real& tol)
{
    Ctx c(pt);
    const int n = c.n;
    std::vector<CheckReport> out;
    if (c.b0) {
        for (const char* id : {"3.11", "3.12", "3.13", "3.14", "3.13+3.14", "3.11+3.12"})
            out.push_back(degenerate_report(id, n, kB0, tol));
        return finish(out, pt);
    }
    StencilGrid g(pt, n);
    const Pipeline& p0 = g.center();
    const Real& R = p0.aux.R[n];
    const Real& r = p0.aux.r[n];
    const Real& u = c.u;
    Real rs = g.d_s(q_r(n)), rt = g.d_t(q_r(n));
    Real Rs = g.d_s(q_R(n)), Rt = g.d_t(q_R(n));

    auto a = compare("3.11", n, rs, 2 * sqr(r) / R - R * (r + n),
                     {2 * sqr(r) / R, R * r, R * n}, tol);
    a.note = "R_n(t) in the printed right-hand side read as R_n";
    out.push_back(a);
    out.push_back(compare("3.12", n, rt, -sqr(r) / R + R * (r + n) / 2,
                          {sqr(r) / R, R * r / 2, R * n / 2}, tol));
    out.push_back(compare("3.13", n, Rs, 4 * r - R * (u - R), {4 * r, R * u, sqr(R)}, tol));
    out.push_back(compare("3.14", n, Rt, R * (u - R) / 2 - 2 * r, {R * u / 2, sqr(R) / 2, 2 * r}, tol));
    // R_n and r_n depend on (t, s) only through 2s - t
    out.push_back(compare("3.13+3.14", n, Rs + 2 * Rt, Real::zero(c.bits), {Rs, 2 * Rt}, tol));
    out.push_back(compare("3.11+3.12", n, rs + 2 * rt, Real::zero(c.bits), {rs, 2 * rt}, tol));
    return finish(out, pt);
}

std::vector<CheckReport> check_second_order(const ParamPoint& pt, const Real& tol)
{
    Ctx c(pt);
    const int n = c.n;
    std::vector<CheckReport> out;
    if (c.b0) {
        for (const char* id : {"3.20", "3.21", "3.20-3.21", "3.22", "3.30", "3.23", "3.32"})
            out.push_back(degenerate_report(id, n, kB0, tol));
        return finish(out, pt);
    }
    StencilGrid g(pt, n);
    const Pipeline& p0 = g.center();
    const Real& R = p0.aux.R[n];
    const Real& r = p0.aux.r[n];
    const Real &s = c.s, &t = c.t, &u = c.u;
    Real Rs = g.d_s(q_R(n)), Rt = g.d_t(q_R(n));
    Real Rss = g.d_ss(q_R(n)), Rtt = g.d_tt(q_R(n));
    Real rs = g.d_s(q_r(n)), rt = g.d_t(q_r(n));
    Real rss = g.d_ss(q_r(n)), rtt = g.d_tt(q_r(n));

    {
        Real k = 2 * sqr(s) - 4 * n - 2 - 2 * s * t + sqr(t) / 2;
        Real rhs = sqr(Rs) / (2 * R) + 3 * pow(R, 3) / 2 - (4 * s - 2 * t) * sqr(R) + k * R;
        out.push_back(compare("3.20", n, Rss, rhs,
                              {sqr(Rs) / (2 * R), 3 * pow(R, 3) / 2, 4 * s * sqr(R), 2 * t * sqr(R),
                               mx({2 * sqr(s), Real::make(4 * n + 2, c.bits), 2 * s * t, sqr(t) / 2}) * R},
                              tol));
    }
    {
        Real k = sqr(s) / 2 - n - Real::make(1, c.bits) / 2 - s * t / 2 + sqr(t) / 8;
        Real rhs = sqr(Rt) / (2 * R) + 3 * pow(R, 3) / 8 - (s - t / 2) * sqr(R) + k * R;
        out.push_back(compare("3.21", n, Rtt, rhs,
                              {sqr(Rt) / (2 * R), 3 * pow(R, 3) / 8, s * sqr(R), t * sqr(R) / 2,
                               mx({sqr(s) / 2, Real::make(2 * n + 1, c.bits) / 2, s * t / 2, sqr(t) / 8}) * R},
                              tol));
    }
    out.push_back(compare("3.20-3.21", n, Rss, 4 * Rtt, {}, tol));

    {
        Real inner = rss + 12 * sqr(r) + 8 * n * r;
        Real brk = sqr(rs) + 8 * pow(r, 3) + 8 * n * sqr(r);
        Real is = mx({rss, 12 * sqr(r), 8 * n * r});
        Real bs = mx({sqr(rs), 8 * pow(r, 3), 8 * n * sqr(r)});
        out.push_back(compare("3.22", n, sqr(inner), sqr(u) * brk, {sqr(is), sqr(u) * bs}, tol));
        Real rad = u * root0(brk);
        out.push_back(compare_branches("3.30", n, inner, rad, -rad, {is, abs(u) * sqrt(bs)}, tol));
    }
    {
        Real inner = 2 * rtt + 6 * sqr(r) + 4 * n * r;
        Real brk = sqr(rt) + 2 * pow(r, 3) + 2 * n * sqr(r);
        Real is = mx({2 * rtt, 6 * sqr(r), 4 * n * r});
        Real bs = mx({sqr(rt), 2 * pow(r, 3), 2 * n * sqr(r)});
        out.push_back(compare("3.23", n, sqr(inner), sqr(u) * brk, {sqr(is), sqr(u) * bs}, tol));
        Real rad = u * root0(brk);
        out.push_back(compare_branches("3.32", n, inner, rad, -rad, {is, abs(u) * sqrt(bs)}, tol));
    }
    return finish(out, pt);
}

namespace {

// Y'' = Y'^2/(2Y) + 3/2 Y^3 + 4 X Y^2 + 2 (X^2 - gamma) Y, eta = 0
CheckReport painleve4_row(const std::string& id, int n, const Real& Y, const Real& Y1,
                          const Real& Y2, const Real& X, const Real& tol)
{
    Real gamma = Real::make(2 * n + 1, Y.bits());
    Real rhs = sqr(Y1) / (2 * Y) + 3 * pow(Y, 3) / 2 + 4 * X * sqr(Y) + 2 * (sqr(X) - gamma) * Y;
    CheckReport rep = compare(id, n, Y2, rhs,
                              {sqr(Y1) / (2 * Y), 3 * pow(Y, 3) / 2, 4 * X * sqr(Y),
                               2 * sqr(X) * Y, 2 * gamma * Y},
                              tol);
    rep.note = "gamma1=2n+1, eta1=0 (term omitted)";
    return rep;
}

// [V'' - 6V^2 - g]^2 = 4 X^2 [V'^2 - 4V^3 - 2 g V - e]
void chazy_rows(std::vector<CheckReport>& out, const std::string& id, int n, const Real& V,
                const Real& V1, const Real& V2, const Real& X, const Real& tol)
{
    long bits = V.bits();
    Real g = Real::make(-8 * n * n, bits) / 3;
    Real e = Real::make(-64L * n * n * n, bits) / 27;
    Real inner = V2 - 6 * sqr(V) - g;
    Real brk = sqr(V1) - 4 * pow(V, 3) - 2 * g * V - e;
    Real is = mx({V2, 6 * sqr(V), g});
    Real bs = mx({sqr(V1), 4 * pow(V, 3), 2 * g * V, e});
    auto rep = compare(id, n, sqr(inner), 4 * sqr(X) * brk, {sqr(is), 4 * sqr(X) * bs}, tol);
    rep.note = "gamma2=-8n^2/3, eta2=-64n^3/27";
    out.push_back(rep);
    Real rad = 2 * X * root0(brk);
    out.push_back(compare_branches(id + "-pre", n, inner, rad, -rad, {is, 2 * abs(X) * sqrt(bs)}, tol));
}

}  // namespace

std::vector<CheckReport> check_painleve4(const ParamPoint& pt, const Real& tol)
{
    Ctx c(pt);
    const int n = c.n;
    std::vector<CheckReport> out;
    if (c.b0) {
        out.push_back(degenerate_report("3.24", n, kB0, tol));
        out.push_back(degenerate_report("3.25", n, kB0, tol));
        return finish(out, pt);
    }
    StencilGrid g(pt, n);
    const Real& R = g.center().aux.R[n];
    Real S = c.t / 2 - c.s;
    // S = t/2 - s at fixed t: d/dS = -d/ds
    out.push_back(painleve4_row("3.24", n, R, -g.d_s(q_R(n)), g.d_ss(q_R(n)), S, tol));
    // T = t/2 - s at fixed s: d/dT = 2 d/dt
    out.push_back(painleve4_row("3.25", n, R, 2 * g.d_t(q_R(n)), 4 * g.d_tt(q_R(n)), S, tol));
    return finish(out, pt);
}

std::vector<CheckReport> check_chazy(const ParamPoint& pt, const Real& tol)
{
    Ctx c(pt);
    const int n = c.n;
    std::vector<CheckReport> out;
    if (c.b0) {
        for (const char* id : {"CS", "CS-pre", "CT", "CT-pre"})
            out.push_back(degenerate_report(id, n, kB0, tol));
        return finish(out, pt);
    }
    StencilGrid g(pt, n);
    const Real& r = g.center().aux.r[n];
    Real V = -2 * r - Real::make(2 * n, c.bits) / 3;
    Real X = c.s - c.t / 2;
    // S~ = s - t/2 at fixed t: d/dS~ = d/ds
    chazy_rows(out, "CS", n, V, -2 * g.d_s(q_r(n)), -2 * g.d_ss(q_r(n)), X, tol);
    // T~ = s - t/2 at fixed s: d/dT~ = -2 d/dt
    chazy_rows(out, "CT", n, V, 4 * g.d_t(q_r(n)), -8 * g.d_tt(q_r(n)), X, tol);
    return finish(out, pt);
}

namespace {

// (f'')^2 = 4 (X f' - f)^2 - 4 f'^2 (f' + 2n)
void jmo_rows(std::vector<CheckReport>& out, const std::string& id, int n, const Real& f,
              const Real& f1, const Real& f2, const Real& X, const Real& tol)
{
    Real rhs = 4 * sqr(X * f1 - f) - 4 * sqr(f1) * (f1 + 2 * n);
    Real a = mx({X * f1, f});
    out.push_back(compare(id, n, sqr(f2), rhs,
                          {sqr(f2), 4 * sqr(a), 4 * pow(f1, 3), 8 * n * sqr(f1)}, tol));
    Real rad = root0(rhs);
    out.push_back(compare_branches(id + "-pre", n, f2, rad, -rad,
                                   {2 * a, 2 * sqrt(abs(pow(f1, 3))), sqrt(8 * n * sqr(f1))}, tol));
}

}  // namespace

std::vector<CheckReport> check_sigma_form(const ParamPoint& pt, const Real& tol)
{
    Ctx c(pt);
    const int n = c.n;
    std::vector<CheckReport> out;
    if (n < 1) {
        for (const char* id : {"4.13", "4.13-pre", "4.14", "4.14-pre", "4.14-r", "4.24", "4.28",
                               "4.16", "4.16-pre", "4.17", "4.17-pre"})
            out.push_back(degenerate_report(id, n, "n = 0: sigma_0 = 0 identically", tol));
        return finish(out, pt);
    }
    StencilGrid g(pt, n);
    const Pipeline& p0 = g.center();
    const Real& sg = p0.aux.sigma[n];
    const Real& r = p0.aux.r[n];
    const Real &s = c.s, &t = c.t, &u = c.u;
    Real ss = g.d_s(q_sigma(n)), st = g.d_t(q_sigma(n));
    Real sss = g.d_ss(q_sigma(n)), stt = g.d_tt(q_sigma(n));
    Real rs = g.d_s(q_r(n)), rt = g.d_t(q_r(n));
    Real nn = Real::make(n, c.bits);

    {
        Real inner = u * ss + n * t - 2 * sg;
        Real rhs = sqr(inner) - 8 * (ss + n) * sqr(ss);
        Real is = mx({u * ss, n * t, 2 * sg});
        out.push_back(compare("4.13", n, sqr(sss), rhs, {sqr(is), 8 * pow(ss, 3), 8 * n * sqr(ss)}, tol));
        Real rad = root0(rhs);
        out.push_back(compare_branches("4.13-pre", n, sss, rad, -rad,
                                       {is, sqrt(abs(8 * pow(ss, 3))), sqrt(8 * n * sqr(ss))}, tol));
    }
    {
        Real m = nn - 2 * st;
        Real inner = u * m + n * t - 2 * sg;
        Real rhs = sqr(inner) - 16 * (nn - st) * sqr(m);
        Real is = mx({u * nn, 2 * u * st, n * t, 2 * sg});
        Real ts = 16 * mx({nn, st}) * sqr(mx({nn, 2 * st}));
        out.push_back(compare("4.14", n, 16 * sqr(stt), rhs, {sqr(is), ts}, tol));
        Real rad = root0(rhs);
        out.push_back(compare_branches("4.14-pre", n, 4 * stt, rad, -rad, {is, sqrt(ts)}, tol));
        // the same equation with r_n taken from the pipeline instead of n - 2 d_t sigma
        Real inner2 = u * r + n * t - 2 * sg;
        out.push_back(compare("4.14-r", n, 16 * sqr(stt), sqr(inner2) - 8 * sqr(r) * (r + n),
                              {sqr(mx({u * r, n * t, 2 * sg})), 8 * pow(r, 3), 8 * n * sqr(r)}, tol));
    }
    {
        Real inner = n * t - 2 * sg - (t - 2 * s) * r;
        Real is = mx({n * t, 2 * sg, t * r, 2 * s * r});
        out.push_back(compare("4.24", n, 8 * sqr(r) * (r + n), sqr(inner) - sqr(rs),
                              {8 * pow(r, 3), 8 * n * sqr(r), sqr(is), sqr(rs)}, tol));
        out.push_back(compare("4.28", n, 8 * sqr(r) * (r + n), sqr(inner) - 4 * sqr(rt),
                              {8 * pow(r, 3), 8 * n * sqr(r), sqr(is), 4 * sqr(rt)}, tol));
    }
    Real tl = 2 * sg - n * t;
    Real X = s - t / 2;
    // S~ = s - t/2 at fixed t
    jmo_rows(out, "4.16", n, tl, 2 * ss, 2 * sss, X, tol);
    // T~ = s - t/2 at fixed s: d/dT~ = -2 d/dt
    jmo_rows(out, "4.17", n, tl, 2 * nn - 4 * st, 8 * stt, X, tol);
    return finish(out, pt);
}

std::vector<CheckReport> check_toda_type(const ParamPoint& pt, const Real& tol)
{
    Ctx c(pt);
    const int n = c.n;
    std::vector<CheckReport> out;
    if (n < 1) {
        for (const char* id : {"4.8", "4.9", "toda"})
            out.push_back(degenerate_report(id, n, "n = 0: D_0 = 1 identically", tol));
        return finish(out, pt);
    }
    StencilGrid g(pt, n);
    const Pipeline& p0 = g.center();
    Real ltt = g.d_tt(q_logD(n)), lst = g.d_st(q_logD(n)), lss = g.d_ss(q_logD(n));
    Real lhs = ltt + 2 * lst + lss;
    std::initializer_list<Real> parts = {ltt, 2 * lst, lss};
    const Real& be = p0.sys.beta[n];
    const Real& r = p0.aux.r[n];
    out.push_back(compare("4.8", n, lhs, n + r - be,
                          {ltt, 2 * lst, lss, Real::make(n, c.bits), r, be}, tol));
    out.push_back(compare("4.9", n, lhs, be, parts, tol));
    const auto& lD = p0.sys.logD;
    out.push_back(compare("toda", n, lhs, exp(lD[n + 1] + lD[n - 1] - 2 * lD[n]), parts, tol));
    return finish(out, pt);
}

std::vector<CheckReport> check_calculus(const ParamPoint& pt, const Real& tol1, const Real& tol2)
{
    std::vector<CheckReport> out;
    auto add = [&](std::vector<CheckReport> v) {
        for (auto& r : v) out.push_back(std::move(r));
    };
    add(check_first_order(pt, tol1));
    add(check_riccati(pt, tol1));
    add(check_second_order(pt, tol2));
    add(check_painleve4(pt, tol2));
    add(check_chazy(pt, tol2));
    add(check_sigma_form(pt, tol2));
    add(check_toda_type(pt, tol2));
    return out;
}

}  // namespace jw
