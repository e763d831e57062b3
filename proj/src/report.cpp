#include "jumpweight/report.hpp"

namespace jw {

Real relative_residual(const Real& lhs, const Real& rhs, const std::vector<Real>& terms,
                       Real* scale_out)
{
    long bits = std::max(lhs.bits(), rhs.bits());
    Real scale = pow10(-20, bits);
    scale = max(scale, abs(lhs));
    scale = max(scale, abs(rhs));
    for (const auto& t : terms) scale = max(scale, abs(t));
    if (scale_out) *scale_out = scale;
    return abs(lhs - rhs) / scale;
}

CheckReport compare(const std::string& id, int n, const Real& lhs, const Real& rhs,
                    std::initializer_list<Real> terms, const Real& tol)
{
    CheckReport r;
    r.id = id;
    r.n_lo = r.n_hi = n;
    r.residual = relative_residual(lhs, rhs, std::vector<Real>(terms), &r.scale);
    r.tolerance = tol;
    r.pass = r.residual <= tol;
    return r;
}

CheckReport compare_branches(const std::string& id, int n, const Real& lhs, const Real& rhs_plus,
                             const Real& rhs_minus, std::initializer_list<Real> terms,
                             const Real& tol)
{
    std::vector<Real> tv(terms);
    Real sp, sm;
    Real rp = relative_residual(lhs, rhs_plus, tv, &sp);
    Real rm = relative_residual(lhs, rhs_minus, tv, &sm);
    CheckReport r;
    r.id = id;
    r.n_lo = r.n_hi = n;
    if (rp <= rm) {
        r.residual = rp;
        r.scale = sp;
        r.branch = "+";
    } else {
        r.residual = rm;
        r.scale = sm;
        r.branch = "-";
    }
    // both branches coincide when the radical vanishes
    if (rp == rm) r.branch = "+/-";
    r.tolerance = tol;
    r.pass = r.residual <= tol;
    return r;
}

CheckReport residual_report(const std::string& id, int n, const Real& residual, const Real& tol)
{
    CheckReport r;
    r.id = id;
    r.n_lo = r.n_hi = n;
    r.residual = residual;
    r.scale = Real::make(1, residual.bits());
    r.tolerance = tol;
    r.pass = residual.is_finite() && residual <= tol;
    return r;
}

CheckReport degenerate_report(const std::string& id, int n, const std::string& why,
                              const Real& tol)
{
    CheckReport r;
    r.id = id;
    r.n_lo = r.n_hi = n;
    r.residual = Real::zero(tol.bits());
    r.scale = Real::zero(tol.bits());
    r.tolerance = tol;
    r.pass = true;
    r.degenerate = true;
    r.note = "degenerate: " + why;
    return r;
}

CheckReport window_report(const std::string& id, int n_lo, int n_hi, const Real& value,
                          double lo, double hi)
{
    CheckReport r;
    r.id = id;
    r.n_lo = n_lo;
    r.n_hi = n_hi;
    r.kind = CheckKind::Window;
    r.residual = value;
    r.scale = Real::make(1, value.bits());
    r.lower = Real::make(lo, value.bits());
    r.tolerance = Real::make(hi, value.bits());
    r.pass = value.is_finite() && r.lower <= value && value <= r.tolerance;
    return r;
}

std::vector<CheckReport>& stamp_digits(std::vector<CheckReport>& reps, int digits)
{
    for (auto& r : reps) r.digits = digits;
    return reps;
}

bool all_pass(const std::vector<CheckReport>& reps)
{
    for (const auto& r : reps)
        if (r.counts() && !r.pass) return false;
    return true;
}

}  // namespace jw
