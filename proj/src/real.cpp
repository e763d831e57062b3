#include "jumpweight/real.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <ostream>
#include <stdexcept>

namespace jw {

long digits_to_bits(long digits)
{
    return static_cast<long>(std::ceil(static_cast<double>(digits) * 3.3219280948873623)) + 1;
}

Real::Real()
{
    mpfr_init2(v_, 64);
    mpfr_set_zero(v_, 1);
}

Real::Real(long bits)
{
    mpfr_init2(v_, std::max<long>(bits, MPFR_PREC_MIN));
}

Real::Real(const Real& o)
{
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
}

Real::Real(Real&& o) noexcept
{
    std::memcpy(v_, o.v_, sizeof(mpfr_t));
    o.v_->_mpfr_d = nullptr;
}

Real& Real::operator=(const Real& o)
{
    if (this == &o) return *this;
    if (v_->_mpfr_d == nullptr)
        mpfr_init2(v_, mpfr_get_prec(o.v_));
    else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_))
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator=(Real&& o) noexcept
{
    if (this == &o) return *this;
    if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
    std::memcpy(v_, o.v_, sizeof(mpfr_t));
    o.v_->_mpfr_d = nullptr;
    return *this;
}

Real::~Real()
{
    if (v_->_mpfr_d != nullptr) mpfr_clear(v_);
}

Real Real::make(double v, long bits)
{
    Real r(bits);
    mpfr_set_d(r.v_, v, MPFR_RNDN);
    return r;
}

Real Real::make(const Real& v, long bits)
{
    Real r(bits);
    mpfr_set(r.v_, v.v_, MPFR_RNDN);
    return r;
}

Real Real::make(const std::string& v, long bits)
{
    Real r(bits);
    if (mpfr_set_str(r.v_, v.c_str(), 10, MPFR_RNDN) != 0)
        throw std::invalid_argument("not a number: '" + v + "'");
    return r;
}

Real Real::nan(long bits)
{
    return Real(bits);
}

namespace {

long wider(const Real& a, const Real& b)
{
    return std::max(a.bits(), b.bits());
}

}  // namespace

Real& Real::operator+=(const Real& o)
{
    if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator-=(const Real& o)
{
    if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator*=(const Real& o)
{
    if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real& Real::operator/=(const Real& o)
{
    if (o.bits() > bits()) mpfr_prec_round(v_, o.bits(), MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

Real Real::operator-() const
{
    Real r(bits());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
}

Real operator+(const Real& a, const Real& b)
{
    Real r = Real::zero(wider(a, b));
    mpfr_add(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real operator-(const Real& a, const Real& b)
{
    Real r = Real::zero(wider(a, b));
    mpfr_sub(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real operator*(const Real& a, const Real& b)
{
    Real r = Real::zero(wider(a, b));
    mpfr_mul(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

Real operator/(const Real& a, const Real& b)
{
    Real r = Real::zero(wider(a, b));
    mpfr_div(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}

bool operator==(const Real& a, const Real& b)
{
    return mpfr_equal_p(a.raw(), b.raw()) != 0;
}

std::partial_ordering operator<=>(const Real& a, const Real& b)
{
    if (mpfr_unordered_p(a.raw(), b.raw())) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.raw(), b.raw());
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

bool operator==(const Real& a, double b)
{
    return !a.is_nan() && !std::isnan(b) && mpfr_cmp_d(a.raw(), b) == 0;
}

std::partial_ordering operator<=>(const Real& a, double b)
{
    if (a.is_nan() || std::isnan(b)) return std::partial_ordering::unordered;
    int c = mpfr_cmp_d(a.raw(), b);
    if (c < 0) return std::partial_ordering::less;
    if (c > 0) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

#define JW_UNARY(name, fn)                        \
    Real name(const Real& x)                      \
    {                                             \
        Real r = Real::zero(x.bits());            \
        fn(r.raw(), x.raw(), MPFR_RNDN);          \
        return r;                                 \
    }

JW_UNARY(abs, mpfr_abs)
JW_UNARY(sqrt, mpfr_sqrt)
JW_UNARY(exp, mpfr_exp)
JW_UNARY(log, mpfr_log)
JW_UNARY(sin, mpfr_sin)
JW_UNARY(cos, mpfr_cos)
JW_UNARY(sinh, mpfr_sinh)
JW_UNARY(cosh, mpfr_cosh)
JW_UNARY(sqr, mpfr_sqr)

#undef JW_UNARY

Real pow(const Real& x, long k)
{
    Real r = Real::zero(x.bits());
    mpfr_pow_si(r.raw(), x.raw(), k, MPFR_RNDN);
    return r;
}

Real pow(const Real& x, const Real& y)
{
    Real r = Real::zero(wider(x, y));
    mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}

Real ldexp(const Real& x, long k)
{
    Real r = Real::zero(x.bits());
    mpfr_mul_2si(r.raw(), x.raw(), k, MPFR_RNDN);
    return r;
}

Real max(const Real& a, const Real& b)
{
    return a < b ? b : a;
}

Real min(const Real& a, const Real& b)
{
    return b < a ? b : a;
}

Real pi(long bits)
{
    Real r = Real::zero(bits);
    mpfr_const_pi(r.raw(), MPFR_RNDN);
    return r;
}

Real pow10(long k, long bits)
{
    Real r = Real::make(10, bits + 16);
    mpfr_pow_si(r.raw(), r.raw(), k, MPFR_RNDN);
    return r.at(bits);
}

std::string to_string(const Real& x, int digits)
{
    if (x.is_nan()) return "nan";
    if (!x.is_finite()) return x.sign() < 0 ? "-inf" : "inf";
    if (digits < 1) digits = 1;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, x.raw());
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

std::ostream& operator<<(std::ostream& os, const Real& x)
{
    auto p = os.precision();
    return os << to_string(x, p > 0 ? static_cast<int>(p) : 17);
}

}  // namespace jw
