#pragma once

#include "jumpweight/real.hpp"

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace jw {

// Working-precision policy. Values built under a context carry
// digits + guard_digits decimal digits; results are promised to
// 10^(-digits + 5) relative.
struct NumericContext {
    int digits = 60;
    int guard_digits = 10;

    NumericContext() = default;
    explicit NumericContext(int digits, int guard_digits = 10);

    long bits() const { return digits_to_bits(digits + guard_digits); }

    template <typename T>
    Real num(const T& v) const { return Real::make(v, bits()); }

    // 10^(-digits), the smallest meaningful relative difference.
    Real floor() const;

    NumericContext with_digits(int d) const { return NumericContext(d, guard_digits); }
    NumericContext with_guard(int g) const { return NumericContext(digits, g); }
};

void validate(const NumericContext& ctx);

// Central second-order finite-difference scheme.
struct FDScheme {
    Real step;
    int order = 2;
    bool in_s = true;
    bool in_t = true;
};

class StencilError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// 10^(-digits/5) clamped to [1e-14, 1e-6].
Real default_fd_step(const NumericContext& ctx);
// step^2 >= 10^(-digits + 20)
bool step_admissible(const Real& step, const NumericContext& ctx);
// Throws std::invalid_argument when the step violates the precision floor.
FDScheme make_scheme(const Real& step, const NumericContext& ctx);
FDScheme make_scheme(const NumericContext& ctx);

using RealFn = std::function<Real(const Real&)>;
using RealFn2 = std::function<Real(const Real&, const Real&)>;

Real central_diff(const RealFn& f, const Real& x, const FDScheme& sc);
Real central_second_diff(const RealFn& f, const Real& x, const FDScheme& sc);
// d^2 f / dx dy by the four-point cross stencil.
Real mixed_diff(const RealFn2& f, const Real& x, const Real& y, const FDScheme& sc);

// The same stencils applied to values already evaluated on the grid.
Real first_derivative(const Real& fp, const Real& fm, const Real& h);
Real second_derivative(const Real& fp, const Real& f0, const Real& fm, const Real& h);
Real mixed_derivative(const Real& fpp, const Real& fpm, const Real& fmp, const Real& fmm,
                      const Real& h);

// Complementary error function, correctly rounded up to a few ulps at `bits`.
Real erfc(const Real& x, long bits);
Real erfc(const Real& x, const NumericContext& ctx);

// Building blocks, exposed for testing.
Real erfc_series(const Real& x, long bits);
Real erfc_contfrac(const Real& x, long bits);
bool erfc_prefers_contfrac(double x, long bits);

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integrand for tanh-sinh: receives x and the exact distances x - a, b - x,
// so endpoint singularities can be evaluated without cancellation.
using QuadFn = std::function<std::vector<Real>(const Real& x, const Real& da, const Real& db)>;

struct QuadResult {
    std::vector<Real> value;
    std::vector<Real> l1;  // integral of |f|, per component
    int levels = 0;
    long evaluations = 0;
};

// Tanh-sinh quadrature of a vector-valued integrand over [a, b]. Refines
// until successive levels agree to rel_tol times the L1 norm of every
// component; throws QuadratureError otherwise.
QuadResult tanh_sinh(const QuadFn& f, const Real& a, const Real& b, long bits,
                     const Real& rel_tol, int max_level = 12);
Real tanh_sinh(const RealFn& f, const Real& a, const Real& b, long bits, const Real& rel_tol,
               int max_level = 12);

}  // namespace jw
