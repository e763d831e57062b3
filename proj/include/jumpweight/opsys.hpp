#pragma once

#include "jumpweight/moments.hpp"

#include <stdexcept>

namespace jw {

// The Hankel pipeline produced a non-positive pivot: precision too low for
// this many rows. The caller is expected to raise precision and rebuild.
class PositivityLost : public std::runtime_error {
public:
    PositivityLost(int row, int digits);
    int row;
    int digits;
};

struct OPSystem {
    int nmax = 0;
    std::vector<Real> h;      // h_0..h_nmax
    std::vector<Real> alpha;  // alpha_0..alpha_nmax
    std::vector<Real> beta;   // beta_0..beta_nmax, beta_0 = 0
    std::vector<Real> p;      // p(0)..p(nmax+1)
    std::vector<Real> logD;   // ln D_0..ln D_{nmax+1}
    WeightParams params;
    NumericContext ctx;
};

// Recurrence coefficients from moments by the Chebyshev (moment LDL^T) algorithm.
// Needs tbl.N >= 2 nmax + 1.
OPSystem build_opsystem(const MomentTable& tbl, int nmax);

// det [mu_{i+j}]_{0<=i,j<n} by Gaussian elimination with partial pivoting.
Real hankel_det_direct(const MomentTable& tbl, int n);

struct PolyValue {
    Real P;         // P_n(x)
    Real P_prev;    // P_{n-1}(x), zero for n = 0
};

struct PolyDerivs {
    Real P, dP, d2P;
};

PolyValue eval_poly(const OPSystem& sys, int n, const Real& x);
// P_n, P_n', P_n'' by differentiating the three-term recurrence.
PolyDerivs eval_poly_derivs(const OPSystem& sys, int n, const Real& x);

Real sub_leading(const OPSystem& sys, int n);

}  // namespace jw
