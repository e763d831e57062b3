#pragma once

#include "jumpweight/auxiliary.hpp"

#include <functional>
#include <map>
#include <utility>

namespace jw {

// Evaluation point (t, s) for the derivative identities.
struct ParamPoint {
    WeightParams params;
    int n = 0;
    FDScheme scheme;
    NumericContext ctx;
};

ParamPoint make_point(const WeightParams& params, int n, const NumericContext& ctx);
ParamPoint make_point(const WeightParams& params, int n, const Real& step,
                      const NumericContext& ctx);

using Quantity = std::function<Real(const Pipeline&)>;

// Pipelines rebuilt on the 3x3 grid (s + i h, t + j h), i, j in {-1, 0, 1},
// built on first use.
class StencilGrid {
public:
    StencilGrid(const ParamPoint& pt, int nmax);

    const Pipeline& at(int i, int j) const;
    const Pipeline& center() const { return at(0, 0); }

    Real value(const Quantity& q) const;
    Real d_s(const Quantity& q) const;
    Real d_t(const Quantity& q) const;
    Real d_ss(const Quantity& q) const;
    Real d_tt(const Quantity& q) const;
    Real d_st(const Quantity& q) const;

    int builds() const { return static_cast<int>(cache_.size()); }

private:
    ParamPoint pt_;
    int nmax_;
    Real sv_[3], tv_[3];
    mutable std::map<std::pair<int, int>, Pipeline> cache_;
};

std::vector<CheckReport> check_first_order(const ParamPoint& pt, const Real& tol);
std::vector<CheckReport> check_riccati(const ParamPoint& pt, const Real& tol);
std::vector<CheckReport> check_second_order(const ParamPoint& pt, const Real& tol);
std::vector<CheckReport> check_painleve4(const ParamPoint& pt, const Real& tol);
std::vector<CheckReport> check_chazy(const ParamPoint& pt, const Real& tol);
std::vector<CheckReport> check_sigma_form(const ParamPoint& pt, const Real& tol);
std::vector<CheckReport> check_toda_type(const ParamPoint& pt, const Real& tol);

// All of the above; first-order rows use tol1, the rest tol2.
std::vector<CheckReport> check_calculus(const ParamPoint& pt, const Real& tol1, const Real& tol2);

}  // namespace jw
