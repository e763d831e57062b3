#include "jumpweight/opsys.hpp"

#include <utility>

namespace jw {

PositivityLost::PositivityLost(int row_, int digits_)
    : std::runtime_error("loss of positivity in the Hankel pipeline at row " +
                         std::to_string(row_) + " (" + std::to_string(digits_) + " digits)"),
      row(row_),
      digits(digits_)
{
}

OPSystem build_opsystem(const MomentTable& tbl, int nmax)
{
    if (nmax < 0) throw std::invalid_argument("nmax must be non-negative");
    if (tbl.N < 2 * nmax + 1)
        throw std::invalid_argument("moment table too short: need index " +
                                    std::to_string(2 * nmax + 1) + ", have " +
                                    std::to_string(tbl.N));
    long bits = tbl.ctx.bits();
    const int L = 2 * nmax + 2;

    OPSystem sys;
    sys.nmax = nmax;
    sys.params = tbl.params;
    sys.ctx = tbl.ctx;

    // sigma_{k,l} = integral of P_k(x) x^l w(x); rows k-2 and k-1 are kept.
    std::vector<Real> prev(L, Real::zero(bits));
    std::vector<Real> cur(tbl.mu.begin(), tbl.mu.begin() + L);
    if (!(cur[0] > 0)) throw PositivityLost(0, tbl.ctx.digits);

    std::vector<Real> a{cur[1] / cur[0]};
    std::vector<Real> b{cur[0]};
    std::vector<Real> h{cur[0]};
    for (int k = 1; k <= nmax; ++k) {
        std::vector<Real> next(L, Real::zero(bits));
        for (int l = k; l <= L - 1 - k; ++l)
            next[l] = cur[l + 1] - a[k - 1] * cur[l] - b[k - 1] * prev[l];
        if (!(next[k] > 0)) throw PositivityLost(k, tbl.ctx.digits);
        a.push_back(next[k + 1] / next[k] - cur[k] / cur[k - 1]);
        b.push_back(next[k] / cur[k - 1]);
        h.push_back(next[k]);
        prev = std::move(cur);
        cur = std::move(next);
    }

    sys.h = std::move(h);
    sys.alpha = std::move(a);
    sys.beta = std::move(b);
    sys.beta[0] = Real::zero(bits);

    sys.p.reserve(nmax + 2);
    sys.logD.reserve(nmax + 2);
    sys.p.push_back(Real::zero(bits));
    sys.logD.push_back(Real::zero(bits));
    for (int n = 0; n <= nmax; ++n) {
        sys.p.push_back(sys.p.back() - sys.alpha[n]);
        sys.logD.push_back(sys.logD.back() + log(sys.h[n]));
    }
    return sys;
}

Real hankel_det_direct(const MomentTable& tbl, int n)
{
    long bits = tbl.ctx.bits();
    if (n == 0) return Real::make(1, bits);
    if (n < 0 || 2 * n - 2 > tbl.N) throw std::invalid_argument("not enough moments for det");
    std::vector<std::vector<Real>> m(n, std::vector<Real>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = tbl.mu[i + j];
    Real det = Real::make(1, bits);
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (abs(m[r][c]) > abs(m[piv][c])) piv = r;
        if (m[piv][c].is_zero()) return Real::zero(bits);
        if (piv != c) {
            std::swap(m[piv], m[c]);
            det = -det;
        }
        det *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            Real f = m[r][c] / m[c][c];
            for (int j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det;
}

PolyValue eval_poly(const OPSystem& sys, int n, const Real& x)
{
    if (n < 0 || n > sys.nmax + 1) throw std::out_of_range("polynomial degree outside the system");
    long bits = std::max(sys.ctx.bits(), x.bits());
    Real pm = Real::zero(bits);
    Real p = Real::make(1, bits);
    for (int j = 0; j < n; ++j) {
        Real next = (x - sys.alpha[j]) * p - sys.beta[j] * pm;
        pm = std::move(p);
        p = std::move(next);
    }
    return {p, pm};
}

PolyDerivs eval_poly_derivs(const OPSystem& sys, int n, const Real& x)
{
    if (n < 0 || n > sys.nmax + 1) throw std::out_of_range("polynomial degree outside the system");
    long bits = std::max(sys.ctx.bits(), x.bits());
    Real p0 = Real::zero(bits), p1 = Real::make(1, bits);
    Real d0 = Real::zero(bits), d1 = Real::zero(bits);
    Real e0 = Real::zero(bits), e1 = Real::zero(bits);
    for (int j = 0; j < n; ++j) {
        Real xa = x - sys.alpha[j];
        Real p2 = xa * p1 - sys.beta[j] * p0;
        Real d2 = p1 + xa * d1 - sys.beta[j] * d0;
        Real e2 = 2 * d1 + xa * e1 - sys.beta[j] * e0;
        p0 = std::move(p1);
        p1 = std::move(p2);
        d0 = std::move(d1);
        d1 = std::move(d2);
        e0 = std::move(e1);
        e1 = std::move(e2);
    }
    return {p1, d1, e1};
}

Real sub_leading(const OPSystem& sys, int n)
{
    if (n < 0 || n > sys.nmax + 1) throw std::out_of_range("sub-leading index outside the system");
    return sys.p[n];
}

}  // namespace jw
