#pragma once

#include <mpfr.h>

#include <compare>
#include <concepts>
#include <iosfwd>
#include <string>

namespace jw {

// Bits needed to hold `digits` significant decimal digits.
long digits_to_bits(long digits);

// Arbitrary-precision real backed by an mpfr_t. Every value owns its own
// precision; a binary operation produces a result at the larger of its
// operands' precisions, so nothing depends on process-wide defaults.
class Real {
public:
    Real();
    Real(const Real& o);
    Real(Real&& o) noexcept;
    Real& operator=(const Real& o);
    Real& operator=(Real&& o) noexcept;
    ~Real();

    template <std::integral I>
    static Real make(I v, long bits)
    {
        Real r(bits);
        mpfr_set_si(r.v_, static_cast<long>(v), MPFR_RNDN);
        return r;
    }
    static Real make(double v, long bits);
    static Real make(const Real& v, long bits);
    static Real make(const std::string& v, long bits);
    static Real make(const char* v, long bits) { return make(std::string(v), bits); }
    static Real zero(long bits) { return make(0, bits); }
    static Real nan(long bits);

    long bits() const { return static_cast<long>(mpfr_get_prec(v_)); }
    // Same value at a different precision (rounded when narrowing).
    Real at(long bits) const { return make(*this, bits); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

    template <std::integral I>
    Real& operator+=(I o) { mpfr_add_si(v_, v_, static_cast<long>(o), MPFR_RNDN); return *this; }
    template <std::integral I>
    Real& operator-=(I o) { mpfr_sub_si(v_, v_, static_cast<long>(o), MPFR_RNDN); return *this; }
    template <std::integral I>
    Real& operator*=(I o) { mpfr_mul_si(v_, v_, static_cast<long>(o), MPFR_RNDN); return *this; }
    template <std::integral I>
    Real& operator/=(I o) { mpfr_div_si(v_, v_, static_cast<long>(o), MPFR_RNDN); return *this; }

    Real operator-() const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_finite() const { return mpfr_number_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Binary exponent e with |x| in [2^(e-1), 2^e); meaningless for zero.
    long exponent() const { return static_cast<long>(mpfr_get_exp(v_)); }

private:
    explicit Real(long bits);
    mpfr_t v_;
};

Real operator+(const Real& a, const Real& b);
Real operator-(const Real& a, const Real& b);
Real operator*(const Real& a, const Real& b);
Real operator/(const Real& a, const Real& b);

template <std::integral I>
Real operator+(Real a, I b) { a += b; return a; }
template <std::integral I>
Real operator+(I a, Real b) { b += a; return b; }
template <std::integral I>
Real operator-(Real a, I b) { a -= b; return a; }
template <std::integral I>
Real operator-(I a, const Real& b)
{
    Real r = b;
    mpfr_si_sub(r.raw(), static_cast<long>(a), b.raw(), MPFR_RNDN);
    return r;
}
template <std::integral I>
Real operator*(Real a, I b) { a *= b; return a; }
template <std::integral I>
Real operator*(I a, Real b) { b *= a; return b; }
template <std::integral I>
Real operator/(Real a, I b) { a /= b; return a; }
template <std::integral I>
Real operator/(I a, const Real& b)
{
    Real r = b;
    mpfr_si_div(r.raw(), static_cast<long>(a), b.raw(), MPFR_RNDN);
    return r;
}

bool operator==(const Real& a, const Real& b);
std::partial_ordering operator<=>(const Real& a, const Real& b);

template <std::integral I>
bool operator==(const Real& a, I b) { return mpfr_cmp_si(a.raw(), static_cast<long>(b)) == 0 && !a.is_nan(); }
template <std::integral I>
std::partial_ordering operator<=>(const Real& a, I b)
{
    if (a.is_nan()) return std::partial_ordering::unordered;
    int c = mpfr_cmp_si(a.raw(), static_cast<long>(b));
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}
bool operator==(const Real& a, double b);
std::partial_ordering operator<=>(const Real& a, double b);

Real abs(const Real& x);
Real sqrt(const Real& x);
Real exp(const Real& x);
Real log(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real sinh(const Real& x);
Real cosh(const Real& x);
Real pow(const Real& x, long k);
Real pow(const Real& x, const Real& y);
Real sqr(const Real& x);
// x * 2^k, exact.
Real ldexp(const Real& x, long k);
Real max(const Real& a, const Real& b);
Real min(const Real& a, const Real& b);

Real pi(long bits);
// 10^k at the given precision.
Real pow10(long k, long bits);

// Scientific notation with `digits` significant digits, e.g. "1.2500e-03".
std::string to_string(const Real& x, int digits);
std::ostream& operator<<(std::ostream& os, const Real& x);

}  // namespace jw
