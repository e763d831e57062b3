#pragma once

#include "jumpweight/auxiliary.hpp"

#include <functional>

namespace jw {

// Lower edge a = s, upper edge b, for the hard-edge (A = 0) fluid.
struct EdgeValues {
    Real exact;   // positive root of 3b^2 - 2(s+t)b - s^2 + 2st - 8n = 0
    Real series;  // large-n expansion through n^{-5/2}
};

EdgeValues support_edge(const WeightParams& params, const Real& n, const NumericContext& ctx);
// 3b^2 - 2(s+t)b - s^2 + 2st - 8n
Real edge_equation(const WeightParams& params, const Real& n, const Real& b);

// sigma(x) = (2x - t + b - s)/(2 pi) sqrt((b - x)/(x - s)) on (s, b).
Real equilibrium_density(const WeightParams& params, const Real& n, const Real& x,
                         const NumericContext& ctx);
// The same density from the principal-value integral with symmetric pole excision.
Real equilibrium_density_pv(const WeightParams& params, const Real& n, const Real& x,
                            const NumericContext& ctx);
// integral of the density over (s, b)
Real density_mass(const WeightParams& params, const Real& n, const NumericContext& ctx);

struct FluidSolution {
    Real n, a, b, L;
    std::function<Real(const Real&)> density;
};
FluidSolution fluid_solution(const WeightParams& params, const Real& n, const NumericContext& ctx);

struct AsymptoticPrediction {
    int n = 0;
    Real alpha_pred;
    Real beta_pred;
    Real alpha_printed;  // with the printed n^{-1/2} coefficient of alpha
    double alpha_order_next = -1.5;
    double beta_order_next = -1.0;
    std::vector<Real> alpha_terms;  // sqrt(6n)/3, a0, a1 n^{-1/2}
    std::vector<Real> beta_terms;   // n/6, b_{-1} sqrt(n), b0, b1 n^{-1/2}
};

AsymptoticPrediction predict_recurrence(const WeightParams& params, int n, const NumericContext& ctx);

// c n^{k/2} (ln n)^m
struct SeriesTerm {
    Real coef;
    int twice_power = 0;
    int log_power = 0;
};
using Series = std::vector<SeriesTerm>;

Real eval_series(const Series& s, const Real& n);
Series differentiate(const Series& s);
// Merge like terms (same power and log power); zero coefficients are kept.
Series normalize(const Series& s);
// max |coefficient difference| / max |coefficient| over the union of terms
Real series_distance(const Series& a, const Series& b);

Series lagrange_series(const WeightParams& params, long bits);
Series lagrange_series_printed(const WeightParams& params, long bits);
// Free energy expansions with the undetermined constant set to zero.
Series free_energy_series(const WeightParams& params, long bits);
Series free_energy_series_printed(const WeightParams& params, long bits);

struct LagrangeValues {
    Real exact;
    Real series;
    Real series_printed;
};
LagrangeValues lagrange_multiplier(const WeightParams& params, const Real& n,
                                   const NumericContext& ctx);

struct HeunParams {
    Real gamma, delta, alpha, q;
};
HeunParams heun_parameters(const WeightParams& params, int n, const NumericContext& ctx);

// Residual of P'' - (2x - t - 1/(x - s)) P' + 4 sqrt6 n^{3/2}/(9(x - s)) P on the exact P_n,
// normalised by the largest term; an n -> infinity statement, so the report is a curve.
CheckReport heun_residual(const OPSystem& sys, const AuxSequences& aux, const WeightParams& params,
                          int n, const std::vector<Real>& xs);
// Biconfluent Heun residual in z = sqrt2 (x - s) against half the x-form residual.
CheckReport heun_equivalence(const OPSystem& sys, const WeightParams& params, int n,
                             const std::vector<Real>& xs, const Real& tol);

// Leading behaviour of R_n and r_n.
struct AuxPrediction {
    Real R, r;                  // re-derived
    Real R_printed, r_printed;  // as printed
};
AuxPrediction predict_aux(const WeightParams& params, int n, const NumericContext& ctx);

// Exact pipelines at several n, built concurrently.
std::vector<Pipeline> exact_pipelines(const WeightParams& params, const std::vector<int>& ns,
                                      const NumericContext& ctx);

struct AsymptoticOptions {
    int n_lo = 25, n_hi = 100;      // recurrence coefficient ratios
    int edge_lo = 100, edge_hi = 400;
    std::vector<int> heun_ns{20, 40, 60, 80};
};

// The full report set: ratio windows, exactness checks, differential free-energy
// consistency, density checks, Heun limit. Reports for A > 0 are marked
// "regime-unsupported" and do not count.
std::vector<CheckReport> check_asymptotics(const WeightParams& params, const NumericContext& ctx,
                                           const AsymptoticOptions& opt = {});

}  // namespace jw
