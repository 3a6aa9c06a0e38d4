#include "orbit_integra/multiprecision.hpp"

#include <utility>
#include <vector>

namespace orbit_integra {

Real::Real(long precision)
{
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

Real::Real(double value, long precision)
{
    mpfr_init2(value_, precision);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

Real::Real(const Rational& value, long precision)
{
    mpfr_init2(value_, precision);
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

Real::Real(const Real& other)
{
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept
{
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other)
{
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept
{
    mpfr_swap(value_, other.value_);
    return *this;
}

Real::~Real() { mpfr_clear(value_); }

std::string Real::to_string(int digits) const
{
    std::vector<char> buf(digits + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
    return buf.data();
}

Real& Real::operator+=(const Real& o) { mpfr_add(value_, value_, o.value_, MPFR_RNDN); return *this; }
Real& Real::operator-=(const Real& o) { mpfr_sub(value_, value_, o.value_, MPFR_RNDN); return *this; }
Real& Real::operator*=(const Real& o) { mpfr_mul(value_, value_, o.value_, MPFR_RNDN); return *this; }
Real& Real::operator/=(const Real& o) { mpfr_div(value_, value_, o.value_, MPFR_RNDN); return *this; }

Real operator-(Real a)
{
    mpfr_neg(a.get(), a.get(), MPFR_RNDN);
    return a;
}

Real log(const Real& x)
{
    Real r(x.precision());
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real exp(const Real& x)
{
    Real r(x.precision());
    mpfr_exp(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real sqrt(const Real& x)
{
    Real r(x.precision());
    mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real abs(const Real& x)
{
    Real r(x.precision());
    mpfr_abs(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real pi(long precision)
{
    Real r(precision);
    mpfr_const_pi(r.get(), MPFR_RNDN);
    return r;
}

Real log_integer(const mpz_class& m, long precision)
{
    Real x(precision + 16);
    mpfr_set_z(x.get(), m.get_mpz_t(), MPFR_RNDN);
    Real r(precision);
    mpfr_log(r.get(), x.get(), MPFR_RNDN);
    return r;
}

Real root_of(const Rational& x, unsigned long n, long precision)
{
    // The root is taken of numerator and denominator separately so that the
    // input is exact before the single rounding in each mpfr_rootn_ui.
    const long work = precision + 16;
    Real num(work), den(work);
    mpfr_set_z(num.get(), x.get_num_mpz_t(), MPFR_RNDN);
    mpfr_set_z(den.get(), x.get_den_mpz_t(), MPFR_RNDN);
    mpfr_rootn_ui(num.get(), num.get(), n, MPFR_RNDN);
    mpfr_rootn_ui(den.get(), den.get(), n, MPFR_RNDN);
    Real r(precision);
    mpfr_div(r.get(), num.get(), den.get(), MPFR_RNDN);
    return r;
}

Complex& Complex::operator+=(const Complex& o)
{
    re += o.re;
    im += o.im;
    return *this;
}

Complex& Complex::operator-=(const Complex& o)
{
    re -= o.re;
    im -= o.im;
    return *this;
}

Complex& Complex::operator*=(const Complex& o)
{
    const long prec = precision();
    Real a(prec), b(prec);
    // (re + i im)(o.re + i o.im)
    mpfr_fmms(a.get(), re.get(), o.re.get(), im.get(), o.im.get(), MPFR_RNDN);
    mpfr_fmma(b.get(), re.get(), o.im.get(), im.get(), o.re.get(), MPFR_RNDN);
    re = std::move(a);
    im = std::move(b);
    return *this;
}

Real norm(const Complex& z)
{
    Real r(z.precision());
    mpfr_fmma(r.get(), z.re.get(), z.re.get(), z.im.get(), z.im.get(), MPFR_RNDN);
    return r;
}

Real abs(const Complex& z)
{
    Real r(z.precision());
    mpfr_hypot(r.get(), z.re.get(), z.im.get(), MPFR_RNDN);
    return r;
}

Real log_abs(const Complex& z)
{
    Real r = norm(z);
    mpfr_log(r.get(), r.get(), MPFR_RNDN);
    mpfr_div_2ui(r.get(), r.get(), 1, MPFR_RNDN);
    return r;
}

Complex unit_phase(const Rational& t, long precision)
{
    Rational frac = t;
    {
        mpz_class fl;
        mpz_fdiv_q(fl.get_mpz_t(), frac.get_num_mpz_t(), frac.get_den_mpz_t());
        frac -= fl;
    }
    Complex z(precision);
    Rational quarter = frac * 4;
    if (quarter.get_den() == 1) {
        const unsigned long q = quarter.get_num().get_ui();
        static constexpr int cs[4][2] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        mpfr_set_si(z.re.get(), cs[q][0], MPFR_RNDN);
        mpfr_set_si(z.im.get(), cs[q][1], MPFR_RNDN);
        return z;
    }
    const long work = precision + 32;
    Real angle = pi(work);
    Real scale(Rational(frac * 2), work);
    angle *= scale;
    Real s(work), c(work);
    mpfr_sin_cos(s.get(), c.get(), angle.get(), MPFR_RNDN);
    mpfr_set(z.re.get(), c.get(), MPFR_RNDN);
    mpfr_set(z.im.get(), s.get(), MPFR_RNDN);
    return z;
}

}  // namespace orbit_integra
