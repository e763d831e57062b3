#pragma once

#include "jumpweight/numerics.hpp"

#include <string>
#include <vector>

namespace jw {

// Weight e^{-x^2 + t x} (A + B theta(x - s)) on the real line.
struct WeightParams {
    Real A, B, t, s;

    // Parse decimal text at the given precision; decimal inputs such as
    // "0.8" are then exact to that precision.
    static WeightParams parse(const std::string& A, const std::string& B, const std::string& t,
                              const std::string& s, long bits);
    static WeightParams from_double(double A, double B, double t, double s, long bits);

    WeightParams at(long bits) const;
    WeightParams with_s(const Real& s2) const;
    WeightParams with_t(const Real& t2) const;

    // e^{-s^2 + t s}
    Real jump_factor(long bits) const;
};

// Throws std::invalid_argument unless A >= 0, A + B >= 0 and (A, B) != 0.
void validate(const WeightParams& p);
bool is_valid(const WeightParams& p, std::string* why = nullptr);

struct MomentTable {
    WeightParams params;
    int N = 0;
    std::vector<Real> M;   // full-line Gaussian moments
    std::vector<Real> I;   // tail moments over [s, inf)
    std::vector<Real> mu;  // A M_j + B I_j
    NumericContext ctx;
};

std::vector<Real> gaussian_moments(const Real& t, int N, const NumericContext& ctx);
std::vector<Real> tail_moments(const Real& s, const Real& t, int N, const NumericContext& ctx);
MomentTable moments(const WeightParams& params, int N, const NumericContext& ctx);

// Quadrature oracle: integrates f(x) w(x) over (-inf, s] and [s, inf) separately.
// f returns a vector of values; `degree` bounds the polynomial growth of f and
// is used to place the Gaussian truncation points.
std::vector<Real> weighted_integral(const WeightParams& params,
                                    const std::function<std::vector<Real>(const Real&)>& f,
                                    int degree, const NumericContext& ctx);

Real moment_oracle(const WeightParams& params, int j, const NumericContext& ctx);
std::vector<Real> moment_oracle_all(const WeightParams& params, int N, const NumericContext& ctx);

}  // namespace jw
