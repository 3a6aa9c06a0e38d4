#ifndef ORBIT_INTEGRA_MULTIPRECISION_HPP
#define ORBIT_INTEGRA_MULTIPRECISION_HPP

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

namespace orbit_integra {

using Rational = mpq_class;

inline constexpr long kDefaultPrecision = 128;

/// RAII owner of an mpfr_t. Arithmetic rounds to nearest at the precision
/// of the left operand.
class Real {
public:
    explicit Real(long precision = kDefaultPrecision);
    Real(double value, long precision);
    Real(const Rational& value, long precision);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    long precision() const { return static_cast<long>(mpfr_get_prec(value_)); }
    mpfr_ptr get() { return value_; }
    mpfr_srcptr get() const { return value_; }

    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    std::string to_string(int digits = 20) const;

    Real& operator+=(const Real& o);
    Real& operator-=(const Real& o);
    Real& operator*=(const Real& o);
    Real& operator/=(const Real& o);

    friend Real operator+(Real a, const Real& b) { return a += b; }
    friend Real operator-(Real a, const Real& b) { return a -= b; }
    friend Real operator*(Real a, const Real& b) { return a *= b; }
    friend Real operator/(Real a, const Real& b) { return a /= b; }
    friend Real operator-(Real a);

    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.value_, b.value_); }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.value_, b.value_); }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.value_, b.value_); }

private:
    mpfr_t value_;
};

Real log(const Real& x);
Real exp(const Real& x);
Real sqrt(const Real& x);
Real abs(const Real& x);
Real pi(long precision);
/// log m for a positive integer m.
Real log_integer(const mpz_class& m, long precision);
/// Positive real n-th root of a positive rational.
Real root_of(const Rational& x, unsigned long n, long precision);

struct Complex {
    Real re;
    Real im;

    explicit Complex(long precision = kDefaultPrecision) : re(precision), im(precision) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    long precision() const { return re.precision(); }

    Complex& operator+=(const Complex& o);
    Complex& operator-=(const Complex& o);
    Complex& operator*=(const Complex& o);

    friend Complex operator+(Complex a, const Complex& b) { return a += b; }
    friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
    friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
};

Real norm(const Complex& z);   // |z|^2
Real abs(const Complex& z);    // |z|
Real log_abs(const Complex& z);

/// e^{2 pi i t} for rational t; exact on the axes (4t an integer).
Complex unit_phase(const Rational& t, long precision);

}  // namespace orbit_integra

#endif
