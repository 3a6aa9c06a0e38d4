#include "orbit_integra/exact_arith.hpp"

#include <algorithm>
#include <cctype>

#include "orbit_integra/errors.hpp"

namespace orbit_integra {

Rational parse_rational(std::string_view text)
{
    std::string s(text);
    auto bad = [&] { raise(ErrorKind::Input, "cannot parse rational '" + s + "'"); };
    if (s.empty()) bad();
    auto valid_int = [](std::string_view part) {
        std::size_t i = 0;
        if (!part.empty() && (part[0] == '-' || part[0] == '+')) i = 1;
        if (i >= part.size()) return false;
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
        return true;
    };
    const auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') bad();
    if (num[0] == '+') num.erase(0, 1);
    Integer n(num), d(den);
    if (d == 0) bad();
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string format_rational(const Rational& x)
{
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Place Place::finite(const Integer& p)
{
    if (!is_prime(p)) raise(ErrorKind::Input, "'" + p.get_str() + "' is not a prime");
    return Place(p);
}

std::string Place::to_string() const
{
    return is_infinite() ? "inf" : prime_.get_str();
}

Place Place::parse(std::string_view text)
{
    if (text == "inf" || text == "infinity" || text == "oo") return infinity();
    for (char c : text)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            raise(ErrorKind::Input, "cannot parse place '" + std::string(text) + "'");
    if (text.empty()) raise(ErrorKind::Input, "empty place");
    return finite(Integer(std::string(text)));
}

long valuation_unchecked(const Integer& x, const Integer& p)
{
    if (x == 0) raise(ErrorKind::Domain, "valuation of 0 undefined");
    if (!mpz_divisible_p(x.get_mpz_t(), p.get_mpz_t())) return 0;
    Integer t = x;
    return static_cast<long>(strip_factor(t, p));
}

long padic_valuation(const Rational& x, const Integer& p)
{
    if (x == 0) raise(ErrorKind::Domain, "valuation of 0 undefined");
    if (!is_prime(p)) raise(ErrorKind::Input, "'" + p.get_str() + "' is not a prime");
    return valuation_unchecked(x.get_num(), p) - valuation_unchecked(x.get_den(), p);
}

long padic_valuation(const Rational& x, const Place& place)
{
    if (place.is_infinite()) raise(ErrorKind::Input, "valuation needs a finite place");
    if (x == 0) raise(ErrorKind::Domain, "valuation of 0 undefined");
    return valuation_unchecked(x.get_num(), place.prime()) - valuation_unchecked(x.get_den(), place.prime());
}

LogValue log_abs(const Rational& x, const Place& place)
{
    if (x == 0) raise(ErrorKind::Domain, "log of |0|");
    if (place.is_infinite()) return LogValue::log_abs_of(x);
    const long v = padic_valuation(x, place);
    return LogValue::log_of(place.prime(), Rational(-v));
}

LogValue log_plus_abs(const Rational& x, const Place& place)
{
    if (x == 0) return {};
    if (place.is_infinite()) return abs(x) > 1 ? LogValue::log_abs_of(x) : LogValue{};
    const long v = padic_valuation(x, place);
    return v < 0 ? LogValue::log_of(place.prime(), Rational(-v)) : LogValue{};
}

std::string PrimeGroup::to_string() const
{
    return prime ? modulus.get_str() : "[" + modulus.get_str() + "]";
}

ProductFormulaRecord product_formula_check(const Rational& x)
{
    if (x == 0) raise(ErrorKind::Domain, "product formula needs x != 0");
    ProductFormulaRecord rec;
    rec.x = x;
    if (x == 1 || x == -1) {
        rec.holds = true;
        return rec;
    }
    PlaceContribution arch;
    arch.archimedean = true;
    arch.value = log_abs(x, Place::infinity());
    rec.sum += arch.value;
    rec.contributions.push_back(std::move(arch));

    std::vector<FactorPiece> pieces = factor_integer(x.get_num());
    if (x.get_den() != 1) {
        auto den_pieces = factor_integer(x.get_den());
        pieces.insert(pieces.end(), den_pieces.begin(), den_pieces.end());
    }
    std::sort(pieces.begin(), pieces.end(), [](const FactorPiece& a, const FactorPiece& b) { return a.base < b.base; });
    for (const FactorPiece& piece : pieces) {
        PlaceContribution c;
        c.group = PrimeGroup{piece.base, piece.prime};
        // Pieces of num and den are coprime since x is in lowest terms.
        const bool in_den = mpz_divisible_p(x.get_den_mpz_t(), piece.base.get_mpz_t()) != 0;
        const long e = static_cast<long>(piece.exponent);
        c.value = LogValue::log_of(piece.base, Rational(in_den ? e : -e));
        rec.sum += c.value;
        rec.contributions.push_back(std::move(c));
    }
    rec.holds = rec.sum.is_zero();
    return rec;
}

LogValue weil_height(const Rational& x)
{
    if (x == 0) return {};
    const Integer& num = x.get_num();
    const Integer& den = x.get_den();
    Integer m = abs(num) > den ? Integer(abs(num)) : den;
    return LogValue::log_of(m);
}

Integer euler_totient(const Integer& n)
{
    if (n <= 0) raise(ErrorKind::Input, "totient needs n >= 1");
    Integer result = 1;
    for (const FactorPiece& piece : factor_integer(n)) {
        if (!piece.prime)
            raise(ErrorKind::Resource, "cannot factor " + piece.base.get_str() + " for the totient");
        Integer pk;
        mpz_pow_ui(pk.get_mpz_t(), piece.base.get_mpz_t(), piece.exponent - 1);
        result *= pk * (piece.base - 1);
    }
    return result;
}

unsigned long euler_totient(unsigned long n)
{
    if (n == 0) raise(ErrorKind::Input, "totient needs n >= 1");
    unsigned long result = n;
    for (unsigned long p : prime_divisors(n)) result = result / p * (p - 1);
    return result;
}

std::vector<unsigned long> prime_divisors(unsigned long n)
{
    std::vector<unsigned long> out;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        out.push_back(p);
        while (n % p == 0) n /= p;
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace orbit_integra
