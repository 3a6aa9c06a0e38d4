#include "orbit_integra/log_value.hpp"

#include <sstream>
#include <vector>

#include "orbit_integra/errors.hpp"
#include "orbit_integra/multiprecision.hpp"

namespace orbit_integra {

LogValue LogValue::log_of(const Integer& m, const Rational& coeff)
{
    if (m <= 0) raise(ErrorKind::Domain, "log of non-positive integer " + m.get_str());
    LogValue v;
    v.add_term(m, coeff);
    return v;
}

LogValue LogValue::log_abs_of(const Rational& x)
{
    if (x == 0) raise(ErrorKind::Domain, "log of 0");
    LogValue v;
    v.add_term(abs(x.get_num()), 1);
    v.add_term(x.get_den(), -1);
    return v;
}

bool LogValue::fully_factored() const
{
    for (const auto& [m, q] : terms_)
        if (!is_prime(m)) return false;
    return true;
}

void LogValue::add_term(const Integer& m, const Rational& coeff)
{
    if (coeff == 0 || m == 1) return;
    for (const FactorPiece& piece : factor_integer(m))
        merge_coprime(piece.base, coeff * piece.exponent);
}

// Inserts coeff*log m while keeping keys pairwise coprime: a key sharing a
// divisor g with m is replaced by g and its cofactor, and the pieces are
// re-inserted until no two keys have a common factor.
void LogValue::merge_coprime(Integer m, Rational coeff)
{
    std::vector<std::pair<Integer, Rational>> pending;
    pending.emplace_back(std::move(m), std::move(coeff));
    while (!pending.empty()) {
        auto [b, c] = std::move(pending.back());
        pending.pop_back();
        if (b == 1 || c == 0) continue;
        bool done = false;
        for (auto it = terms_.begin(); it != terms_.end(); ++it) {
            if (it->first == b) {
                it->second += c;
                if (it->second == 0) terms_.erase(it);
                done = true;
                break;
            }
            Integer g = gcd(it->first, b);
            if (g == 1) continue;
            Integer k = it->first;
            Rational ck = it->second;
            terms_.erase(it);
            pending.emplace_back(g, ck);
            pending.emplace_back(Integer(k / g), ck);
            pending.emplace_back(g, c);
            pending.emplace_back(Integer(b / g), c);
            done = true;
            break;
        }
        if (!done) terms_.emplace(std::move(b), std::move(c));
    }
}

LogValue& LogValue::operator+=(const LogValue& other)
{
    for (const auto& [m, q] : other.terms_) merge_coprime(m, q);
    return *this;
}

LogValue& LogValue::operator-=(const LogValue& other)
{
    for (const auto& [m, q] : other.terms_) merge_coprime(m, -q);
    return *this;
}

LogValue& LogValue::operator*=(const Rational& s)
{
    if (s == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, q] : terms_) q *= s;
    return *this;
}

LogValue& LogValue::operator/=(const Rational& s)
{
    if (s == 0) raise(ErrorKind::Domain, "division of LogValue by 0");
    for (auto& [m, q] : terms_) q /= s;
    return *this;
}

bool operator==(const LogValue& a, const LogValue& b)
{
    if (a.terms_ == b.terms_) return true;
    LogValue diff = a;
    diff -= b;
    return diff.is_zero();
}

Real LogValue::numeric(long precision) const
{
    const long work = precision + 32;
    Real sum(work);
    for (const auto& [m, q] : terms_) {
        Real term = log_integer(m, work);
        term *= Real(q, work);
        sum += term;
    }
    Real out(precision);
    mpfr_set(out.get(), sum.get(), MPFR_RNDN);
    return out;
}

double LogValue::to_double() const { return numeric(64).to_double(); }

std::string LogValue::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, q] : terms_) {
        Rational c = q;
        if (first) {
            if (c < 0) {
                os << "-";
                c = -c;
            }
        } else {
            os << (c < 0 ? " - " : " + ");
            c = abs(c);
        }
        if (c != 1) os << c.get_str() << "*";
        os << "log(" << m.get_str() << ")";
        first = false;
    }
    return os.str();
}

}  // namespace orbit_integra
