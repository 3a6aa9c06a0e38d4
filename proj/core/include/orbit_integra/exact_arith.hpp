#ifndef ORBIT_INTEGRA_EXACT_ARITH_HPP
#define ORBIT_INTEGRA_EXACT_ARITH_HPP

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "orbit_integra/integer_factor.hpp"
#include "orbit_integra/log_value.hpp"

namespace orbit_integra {

using Rational = mpq_class;

/// Parses "a", "-a" or "a/b" (b != 0) into lowest terms.
Rational parse_rational(std::string_view text);
/// Always "num/den", e.g. "2/1", "-3/8".
std::string format_rational(const Rational& x);

/// A place of Q: the archimedean place or the p-adic place of a prime p.
class Place {
public:
    static Place infinity() { return Place(); }
    /// Throws ErrorKind::Input if p fails the primality test.
    static Place finite(const Integer& p);
    static Place finite(unsigned long p) { return finite(Integer(p)); }

    bool is_infinite() const noexcept { return prime_ == 0; }
    bool is_finite() const noexcept { return prime_ != 0; }
    /// The prime of a finite place (0 for infinity).
    const Integer& prime() const noexcept { return prime_; }

    /// "inf" or the decimal prime.
    std::string to_string() const;
    /// Inverse of to_string; also accepts "infinity".
    static Place parse(std::string_view text);

    friend bool operator==(const Place& a, const Place& b) { return a.prime_ == b.prime_; }
    friend bool operator<(const Place& a, const Place& b) { return a.prime_ < b.prime_; }

private:
    Place() = default;
    explicit Place(Integer p) : prime_(std::move(p)) {}
    Integer prime_ = 0;
};

/// v_p(x) for x != 0.
long padic_valuation(const Rational& x, const Integer& p);
long padic_valuation(const Rational& x, const Place& place);
/// v_p of a nonzero integer, p assumed prime.
long valuation_unchecked(const Integer& x, const Integer& p);

/// log |x|_v: -v_p(x) log p at a finite place, log|num| - log den at infinity.
LogValue log_abs(const Rational& x, const Place& place);

/// log+ |x|_v = max(0, log |x|_v).
LogValue log_plus_abs(const Rational& x, const Place& place);

/// A set of finite places summed together: a single prime, or a composite
/// cofactor whose prime divisors could not be separated.
struct PrimeGroup {
    Integer modulus;
    bool prime = true;

    std::string to_string() const;
    friend auto operator<=>(const PrimeGroup& a, const PrimeGroup& b) { return cmp(a.modulus, b.modulus) <=> 0; }
    friend bool operator==(const PrimeGroup& a, const PrimeGroup& b) { return a.modulus == b.modulus; }
};

struct PlaceContribution {
    bool archimedean = false;
    PrimeGroup group;  // meaningful when !archimedean
    LogValue value;

    std::string label() const { return archimedean ? "inf" : group.to_string(); }
};

struct ProductFormulaRecord {
    Rational x;
    std::vector<PlaceContribution> contributions;  // infinity first, then by prime
    LogValue sum;
    bool holds = false;
};

/// Sums log|x|_v over infinity and all primes of num*den; the exact sum must
/// cancel to the empty LogValue.
ProductFormulaRecord product_formula_check(const Rational& x);

/// Absolute logarithmic height of (x : 1): log max(|num|, den).
LogValue weil_height(const Rational& x);

Integer euler_totient(const Integer& n);
unsigned long euler_totient(unsigned long n);

/// Distinct primes dividing a small positive integer.
std::vector<unsigned long> prime_divisors(unsigned long n);

}  // namespace orbit_integra

#endif
