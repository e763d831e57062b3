#include "jumpweight/moments.hpp"

#include <algorithm>
#include <cmath>

namespace jw {

WeightParams WeightParams::parse(const std::string& A, const std::string& B, const std::string& t,
                                 const std::string& s, long bits)
{
    return {Real::make(A, bits), Real::make(B, bits), Real::make(t, bits), Real::make(s, bits)};
}

WeightParams WeightParams::from_double(double A, double B, double t, double s, long bits)
{
    return {Real::make(A, bits), Real::make(B, bits), Real::make(t, bits), Real::make(s, bits)};
}

WeightParams WeightParams::at(long bits) const
{
    return {A.at(bits), B.at(bits), t.at(bits), s.at(bits)};
}

WeightParams WeightParams::with_s(const Real& s2) const
{
    WeightParams p = *this;
    p.s = s2;
    return p;
}

WeightParams WeightParams::with_t(const Real& t2) const
{
    WeightParams p = *this;
    p.t = t2;
    return p;
}

Real WeightParams::jump_factor(long bits) const
{
    Real ss = s.at(bits), tt = t.at(bits);
    return exp(tt * ss - sqr(ss));
}

bool is_valid(const WeightParams& p, std::string* why)
{
    auto fail = [&](const char* msg) {
        if (why) *why = msg;
        return false;
    };
    for (const Real* v : {&p.A, &p.B, &p.t, &p.s})
        if (!v->is_finite()) return fail("weight parameters must be finite");
    if (p.A < 0) return fail("A must be non-negative");
    if (p.A + p.B < 0) return fail("A + B must be non-negative");
    if (p.A.is_zero() && p.B.is_zero()) return fail("A and B cannot both vanish");
    return true;
}

void validate(const WeightParams& p)
{
    std::string why;
    if (!is_valid(p, &why)) throw std::invalid_argument(why);
}

std::vector<Real> gaussian_moments(const Real& t, int N, const NumericContext& ctx)
{
    if (N < 0) throw std::invalid_argument("moment index must be non-negative");
    long bits = ctx.bits();
    Real half_t = t.at(bits) / 2;
    std::vector<Real> M;
    M.reserve(N + 1);
    M.push_back(sqrt(pi(bits)) * exp(sqr(half_t)));
    if (N >= 1) M.push_back(half_t * M[0]);
    for (int j = 2; j <= N; ++j) M.push_back(half_t * M[j - 1] + Real::make(j - 1, bits) / 2 * M[j - 2]);
    return M;
}

std::vector<Real> tail_moments(const Real& s, const Real& t, int N, const NumericContext& ctx)
{
    if (N < 0) throw std::invalid_argument("moment index must be non-negative");
    long bits = ctx.bits();
    Real ss = s.at(bits), tt = t.at(bits);
    Real half_t = tt / 2;
    Real halfE = exp(tt * ss - sqr(ss)) / 2;
    std::vector<Real> I;
    I.reserve(N + 1);
    I.push_back(sqrt(pi(bits)) / 2 * exp(sqr(half_t)) * erfc(ss - half_t, bits));
    if (N >= 1) I.push_back(half_t * I[0] + halfE);
    Real spow = ss;  // s^{j-1}
    for (int j = 2; j <= N; ++j) {
        I.push_back(half_t * I[j - 1] + Real::make(j - 1, bits) / 2 * I[j - 2] + halfE * spow);
        spow *= ss;
    }
    return I;
}

MomentTable moments(const WeightParams& params, int N, const NumericContext& ctx)
{
    validate(params);
    MomentTable tbl;
    tbl.params = params;
    tbl.N = N;
    tbl.ctx = ctx;
    long bits = ctx.bits();
    tbl.M = gaussian_moments(params.t, N, ctx);
    tbl.I = tail_moments(params.s, params.t, N, ctx);
    Real A = params.A.at(bits), B = params.B.at(bits);
    tbl.mu.reserve(N + 1);
    for (int j = 0; j <= N; ++j) {
        if (B.is_zero())
            tbl.mu.push_back(A * tbl.M[j]);
        else if (A.is_zero())
            tbl.mu.push_back(B * tbl.I[j]);
        else
            tbl.mu.push_back(A * tbl.M[j] + B * tbl.I[j]);
    }
    if (!(tbl.mu[0] > 0)) throw std::domain_error("total mass of the weight is not positive");
    return tbl;
}

namespace {

// log of |x|^degree e^{-x^2 + t x}
double log_envelope(double x, double t, int degree)
{
    double ax = std::fabs(x);
    double lp = degree > 0 ? degree * std::log(std::max(ax, 1.0)) : 0.0;
    return lp - x * x + t * x;
}

// Distance past which the envelope has dropped by `drop` (natural log units)
// below its maximum on the half-line in direction `dir` starting at `from`.
double cutoff(double from, double t, int degree, double drop, int dir)
{
    double peak = log_envelope(from, t, degree);
    // stationary points of the envelope
    double disc = std::sqrt(t * t + 8.0 * degree);
    for (double c : {(t + disc) / 4, (t - disc) / 4, t / 2})
        if ((c - from) * dir > 0) peak = std::max(peak, log_envelope(c, t, degree));
    double x = from;
    double stepx = 0.25;
    while (log_envelope(x, t, degree) > peak - drop || (x - from) * dir < 1.0) x += dir * stepx;
    return x;
}

}  // namespace

std::vector<Real> weighted_integral(const WeightParams& params,
                                    const std::function<std::vector<Real>(const Real&)>& f,
                                    int degree, const NumericContext& ctx)
{
    validate(params);
    long bits = ctx.bits() + 16;
    Real A = params.A.at(bits), B = params.B.at(bits), t = params.t.at(bits), s = params.s.at(bits);
    double td = t.to_double(), sd = s.to_double();
    double drop = (ctx.digits + ctx.guard_digits + 12) * std::log(10.0);
    Real tol = pow10(-(ctx.digits + ctx.guard_digits), bits);

    auto piece = [&](const Real& lo, const Real& hi, const Real& coef) {
        QuadFn g = [&](const Real& x, const Real&, const Real&) {
            std::vector<Real> v = f(x);
            Real w = coef * exp(t * x - sqr(x));
            for (auto& e : v) e *= w;
            return v;
        };
        // unit panels: a single tanh-sinh rule over a wide interval undersamples the interior bump
        int panels = std::max(1, static_cast<int>(std::ceil((hi - lo).to_double())));
        Real width = (hi - lo) / panels;
        std::vector<Real> acc;
        for (int k = 0; k < panels; ++k) {
            Real a = lo + width * k;
            Real b = k + 1 == panels ? hi : lo + width * (k + 1);
            auto v = tanh_sinh(g, a, b, bits, tol, 14).value;
            if (acc.empty())
                acc = std::move(v);
            else
                for (size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
        }
        return acc;
    };

    std::vector<Real> total;
    auto add = [&](std::vector<Real> part) {
        if (total.empty())
            total = std::move(part);
        else
            for (size_t i = 0; i < total.size(); ++i) total[i] += part[i];
    };

    if (!A.is_zero()) {
        Real lo = Real::make(cutoff(sd, td, degree, drop, -1), bits);
        add(piece(lo, s, A));
    }
    Real right = A + B;
    if (!right.is_zero()) {
        Real hi = Real::make(cutoff(sd, td, degree, drop, +1), bits);
        add(piece(s, hi, right));
    }
    for (auto& v : total) v = v.at(ctx.bits());
    return total;
}

std::vector<Real> moment_oracle_all(const WeightParams& params, int N, const NumericContext& ctx)
{
    auto powers = [N](const Real& x) {
        std::vector<Real> v;
        v.reserve(N + 1);
        Real p = Real::make(1, x.bits());
        for (int j = 0; j <= N; ++j) {
            v.push_back(p);
            p *= x;
        }
        return v;
    };
    return weighted_integral(params, powers, N, ctx);
}

Real moment_oracle(const WeightParams& params, int j, const NumericContext& ctx)
{
    if (j < 0) throw std::invalid_argument("moment index must be non-negative");
    auto one = [j](const Real& x) { return std::vector<Real>{pow(x, j)}; };
    return weighted_integral(params, one, j, ctx).front();
}

}  // namespace jw
