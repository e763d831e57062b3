#include "jumpweight/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace jw {

NumericContext::NumericContext(int digits_, int guard_digits_)
    : digits(digits_), guard_digits(guard_digits_)
{
    validate(*this);
}

Real NumericContext::floor() const
{
    return pow10(-digits, bits());
}

void validate(const NumericContext& ctx)
{
    if (ctx.digits < 30)
        throw std::invalid_argument("precision must be at least 30 digits, got " +
                                    std::to_string(ctx.digits));
    if (ctx.guard_digits < 0)
        throw std::invalid_argument("guard digits must be non-negative");
}

Real default_fd_step(const NumericContext& ctx)
{
    double e = -ctx.digits / 5.0;
    e = std::clamp(e, -14.0, -6.0);
    // exponent is an integer for digits divisible by 5; otherwise use 10^e exactly rounded
    if (e == std::floor(e)) return pow10(static_cast<long>(e), ctx.bits());
    Real ten = ctx.num(10);
    return pow(ten, ctx.num(e));
}

bool step_admissible(const Real& step, const NumericContext& ctx)
{
    if (!(step > 0)) return false;
    return sqr(step) >= pow10(-ctx.digits + 20, ctx.bits());
}

FDScheme make_scheme(const Real& step, const NumericContext& ctx)
{
    if (!step_admissible(step, ctx))
        throw std::invalid_argument("finite-difference step " + to_string(step, 6) +
                                    " is below the precision floor for " +
                                    std::to_string(ctx.digits) + " digits");
    FDScheme sc;
    sc.step = step.at(ctx.bits());
    return sc;
}

FDScheme make_scheme(const NumericContext& ctx)
{
    return make_scheme(default_fd_step(ctx), ctx);
}

namespace {

Real eval_at(const RealFn& f, const Real& x, const char* where)
{
    Real v;
    try {
        v = f(x);
    } catch (const std::exception& e) {
        throw StencilError(std::string("stencil point ") + where + " (x=" + to_string(x, 20) +
                           "): " + e.what());
    }
    if (!v.is_finite())
        throw StencilError(std::string("stencil point ") + where + " returned a non-finite value");
    return v;
}

Real eval_at(const RealFn2& f, const Real& x, const Real& y, const char* where)
{
    Real v;
    try {
        v = f(x, y);
    } catch (const std::exception& e) {
        throw StencilError(std::string("stencil point ") + where + ": " + e.what());
    }
    if (!v.is_finite())
        throw StencilError(std::string("stencil point ") + where + " returned a non-finite value");
    return v;
}

}  // namespace

Real first_derivative(const Real& fp, const Real& fm, const Real& h)
{
    return (fp - fm) / (2 * h);
}

Real second_derivative(const Real& fp, const Real& f0, const Real& fm, const Real& h)
{
    return (fp - 2 * f0 + fm) / sqr(h);
}

Real mixed_derivative(const Real& fpp, const Real& fpm, const Real& fmp, const Real& fmm,
                      const Real& h)
{
    return (fpp - fpm - fmp + fmm) / (4 * sqr(h));
}

Real central_diff(const RealFn& f, const Real& x, const FDScheme& sc)
{
    const Real& h = sc.step;
    return first_derivative(eval_at(f, x + h, "x+h"), eval_at(f, x - h, "x-h"), h);
}

Real central_second_diff(const RealFn& f, const Real& x, const FDScheme& sc)
{
    const Real& h = sc.step;
    return second_derivative(eval_at(f, x + h, "x+h"), eval_at(f, x, "x"),
                             eval_at(f, x - h, "x-h"), h);
}

Real mixed_diff(const RealFn2& f, const Real& x, const Real& y, const FDScheme& sc)
{
    const Real& h = sc.step;
    return mixed_derivative(eval_at(f, x + h, y + h, "(+h,+h)"), eval_at(f, x + h, y - h, "(+h,-h)"),
                            eval_at(f, x - h, y + h, "(-h,+h)"), eval_at(f, x - h, y - h, "(-h,-h)"),
                            h);
}

// erfc ------------------------------------------------------------------

bool erfc_prefers_contfrac(double x, long bits)
{
    // The Laplace fraction needs roughly 0.67 D^2 / x^2 terms for D digits;
    // past the point where that exceeds a few D the series is cheaper.
    double d = bits / 3.3219280948873623;
    return x > 2.0 && 6.0 * x * x >= d;
}

Real erfc_series(const Real& x, long bits)
{
    // erf(x) = 2/sqrt(pi) e^{-x^2} sum_k 2^k x^(2k+1) / (2k+1)!!, all terms positive.
    double xd = std::fabs(x.to_double());
    long work = bits + 32 + static_cast<long>(std::ceil(xd * xd * 1.4426950408889634));
    Real xx = x.at(work);
    Real two_x2 = 2 * sqr(xx);
    Real term = xx;
    Real sum = xx;
    Real eps = ldexp(Real::make(1, work), -work);
    for (long k = 1;; ++k) {
        term = term * two_x2 / (2 * k + 1);
        sum += term;
        if (abs(term) <= eps * abs(sum) && static_cast<double>(2 * k + 1) > 2 * xd * xd) break;
    }
    Real erf = 2 / sqrt(pi(work)) * exp(-sqr(xx)) * sum;
    return (1 - erf).at(bits);
}

Real erfc_contfrac(const Real& x, long bits)
{
    // erfc(x) = e^{-x^2}/sqrt(pi) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), x > 0.
    long work = bits + 32;
    Real xx = x.at(work);
    Real tiny = ldexp(Real::make(1, work), -4 * work);
    Real eps = ldexp(Real::make(1, work), -work);
    Real f = xx;
    Real C = f;
    Real D = Real::zero(work);
    for (long k = 1;; ++k) {
        Real a = Real::make(k, work) / 2;
        D = xx + a * D;
        if (D.is_zero()) D = tiny;
        D = 1 / D;
        C = xx + a / C;
        if (C.is_zero()) C = tiny;
        Real delta = C * D;
        f *= delta;
        if (abs(delta - 1) <= eps) break;
        if (k > 50000000) throw std::runtime_error("erfc continued fraction did not converge");
    }
    return (exp(-sqr(xx)) / (sqrt(pi(work)) * f)).at(bits);
}

Real erfc(const Real& x, long bits)
{
    if (!x.is_finite()) {
        if (x.is_nan()) return Real::nan(bits);
        return Real::make(x.sign() > 0 ? 0 : 2, bits);
    }
    if (x.is_zero()) return Real::make(1, bits);
    if (x.sign() < 0) {
        Real pos = erfc(-x, bits + 8);
        return (2 - pos).at(bits);
    }
    if (erfc_prefers_contfrac(x.to_double(), bits)) return erfc_contfrac(x, bits);
    return erfc_series(x, bits);
}

Real erfc(const Real& x, const NumericContext& ctx)
{
    return erfc(x, ctx.bits());
}

// tanh-sinh -------------------------------------------------------------

namespace {

struct Node {
    Real x, da, db, w;
};

// Node at abscissa tau for the interval with centre c and half-width d.
Node make_node(const Real& tau, const Real& c, const Real& d, const Real& half_pi)
{
    Real u = half_pi * sinh(tau);
    Real e2 = exp(2 * u);
    Real em2 = 1 / e2;
    Node n;
    n.db = 2 * d / (e2 + 1);
    n.da = 2 * d / (em2 + 1);
    n.x = c + d * (e2 - 1) / (e2 + 1);
    Real ch = cosh(u);
    n.w = d * half_pi * cosh(tau) / sqr(ch);
    return n;
}

}  // namespace

QuadResult tanh_sinh(const QuadFn& f, const Real& a, const Real& b, long bits,
                     const Real& rel_tol, int max_level)
{
    if (!(b > a)) throw QuadratureError("tanh_sinh needs a < b");
    long work = bits + 24;
    Real A = a.at(work), B = b.at(work);
    Real c = (A + B) / 2;
    Real d = (B - A) / 2;
    Real half_pi = pi(work) / 2;
    // Beyond tau_max the weights fall below 2^-(2 bits), enough even for
    // inverse-square-root endpoint behaviour.
    double tau_max = std::asinh(2.0 * (bits + 40) * 0.6931471805599453 / 3.141592653589793) + 0.25;

    QuadResult out;
    size_t m = 0;
    std::vector<Real> sum, l1;

    auto accumulate = [&](const Real& tau, bool both_sides) {
        for (int side = 0; side < (both_sides ? 2 : 1); ++side) {
            Real tt = side == 0 ? tau : -tau;
            Node nd = make_node(tt, c, d, half_pi);
            std::vector<Real> v = f(nd.x, nd.da, nd.db);
            ++out.evaluations;
            if (sum.empty()) {
                m = v.size();
                sum.assign(m, Real::zero(work));
                l1.assign(m, Real::zero(work));
            }
            if (v.size() != m) throw QuadratureError("integrand changed its dimension");
            for (size_t i = 0; i < m; ++i) {
                if (!v[i].is_finite())
                    throw QuadratureError("integrand is not finite at x=" + to_string(nd.x, 20));
                Real t = nd.w * v[i];
                sum[i] += t;
                l1[i] += abs(t);
            }
        }
    };

    Real h = Real::make(1, work);
    // level 0: integer abscissae
    accumulate(Real::zero(work), false);
    for (long k = 1; k <= static_cast<long>(tau_max); ++k) accumulate(Real::make(k, work), true);
    std::vector<Real> prev(m);
    for (size_t i = 0; i < m; ++i) prev[i] = sum[i] * h;

    for (int level = 1; level <= max_level; ++level) {
        h = h / 2;
        long count = static_cast<long>(tau_max / h.to_double());
        for (long k = 1; k <= count; k += 2) accumulate(h * k, true);
        bool done = true;
        std::vector<Real> cur(m);
        for (size_t i = 0; i < m; ++i) {
            cur[i] = sum[i] * h;
            Real scale = l1[i] * h;
            if (abs(cur[i] - prev[i]) > rel_tol * scale) done = false;
        }
        prev = cur;
        if (done && level >= 3) {
            out.levels = level;
            out.value.reserve(m);
            out.l1.reserve(m);
            for (size_t i = 0; i < m; ++i) {
                out.value.push_back(cur[i].at(bits));
                out.l1.push_back((l1[i] * h).at(bits));
            }
            return out;
        }
    }
    throw QuadratureError("tanh-sinh refinement did not converge within " +
                          std::to_string(max_level) + " levels");
}

Real tanh_sinh(const RealFn& f, const Real& a, const Real& b, long bits, const Real& rel_tol,
               int max_level)
{
    QuadFn g = [&](const Real& x, const Real&, const Real&) { return std::vector<Real>{f(x)}; };
    return tanh_sinh(g, a, b, bits, rel_tol, max_level).value.front();
}

}  // namespace jw
