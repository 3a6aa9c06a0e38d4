#ifndef ORBIT_INTEGRA_LOG_VALUE_HPP
#define ORBIT_INTEGRA_LOG_VALUE_HPP

#include <map>
#include <string>

#include <gmpxx.h>

#include "orbit_integra/integer_factor.hpp"

namespace orbit_integra {

using Rational = mpq_class;

class Real;

/// A finite sum  sum_m q_m log m  with rational q_m and integer m >= 2.
///
/// Keys are kept pairwise coprime. Every inserted integer is run through
/// factor_integer, so keys are primes whenever the factorization succeeds;
/// a cofactor that resisted factoring stays as a composite key and is split
/// further by gcd refinement if another key shares a divisor with it.
/// Logarithms of pairwise coprime integers are linearly independent over Q,
/// hence a LogValue is zero exactly when it has no terms.
class LogValue {
public:
    using Terms = std::map<Integer, Rational>;

    LogValue() = default;

    /// coeff * log m, m >= 1.
    static LogValue log_of(const Integer& m, const Rational& coeff = 1);
    /// log |x| for nonzero rational x.
    static LogValue log_abs_of(const Rational& x);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// True when every key passed the primality test.
    bool fully_factored() const;

    LogValue& operator+=(const LogValue& other);
    LogValue& operator-=(const LogValue& other);
    LogValue& operator*=(const Rational& s);
    LogValue& operator/=(const Rational& s);

    friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
    friend LogValue operator-(LogValue a, const LogValue& b) { return a -= b; }
    friend LogValue operator-(LogValue a) { return a *= Rational(-1); }
    friend LogValue operator*(LogValue a, const Rational& s) { return a *= s; }
    friend LogValue operator*(const Rational& s, LogValue a) { return a *= s; }
    friend LogValue operator/(LogValue a, const Rational& s) { return a /= s; }

    friend bool operator==(const LogValue& a, const LogValue& b);

    /// Deterministic evaluation at the given binary precision (key order,
    /// correctly rounded logs).
    Real numeric(long precision) const;
    double to_double() const;

    /// e.g. "2*log(2) - 1/3*log(7)"; "0" when empty.
    std::string to_string() const;

private:
    void add_term(const Integer& m, const Rational& coeff);
    void merge_coprime(Integer m, Rational coeff);

    Terms terms_;
};

}  // namespace orbit_integra

#endif
