#pragma once

#include "jumpweight/opsys.hpp"
#include "jumpweight/report.hpp"

namespace jw {

struct AuxSequences {
    std::vector<Real> R;      // R_0..R_nmax
    std::vector<Real> r;      // r_0..r_nmax, r_0 = 0
    std::vector<Real> sigma;  // sigma_0..sigma_{nmax+1}
    std::vector<Real> sumR;   // sum_{j<n} R_j, n = 0..nmax+1
    std::vector<Real> Ps;     // P_n(s), n = 0..nmax
    Real E;                   // e^{-s^2 + t s}
    int nmax = 0;
};

AuxSequences aux_sequences(const OPSystem& sys, const WeightParams& params, int nmax);

// moments -> recurrence -> auxiliary quantities in one go.
struct Pipeline {
    WeightParams params;
    NumericContext ctx;  // the context as requested by the caller
    MomentTable tbl;
    OPSystem sys;
    AuxSequences aux;
};

// Extra digits carried internally so that nmax rows of the Hankel pipeline
// still deliver ctx.digits correct digits.
int pipeline_guard_digits(int nmax);
Pipeline build_pipeline(const WeightParams& params, int nmax, const NumericContext& ctx);

// Every derivative-free identity of the ladder-operator system, one report per
// equation per n.
std::vector<CheckReport> check_algebraic(const OPSystem& sys, const AuxSequences& aux,
                                         const WeightParams& params, const Real& tol);

// Second-order ODE for P_n with the exact pole coefficients, on sample points xs.
// Throws std::domain_error if a point is inside an exclusion zone.
CheckReport check_ode_exact(const OPSystem& sys, const AuxSequences& aux,
                            const WeightParams& params, int n, const std::vector<Real>& xs,
                            const Real& tol);

}  // namespace jw
