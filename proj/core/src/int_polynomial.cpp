#include "orbit_integra/int_polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "orbit_integra/errors.hpp"

namespace orbit_integra {

IntPolynomial::IntPolynomial(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

void IntPolynomial::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPolynomial IntPolynomial::binomial_model(std::uint64_t n, const Rational& beta)
{
    if (n == 0) raise(ErrorKind::Input, "binomial degree must be >= 1");
    if (beta == 0) raise(ErrorKind::Input, "beta must be nonzero");
    std::vector<Integer> c(n + 1, Integer(0));
    c[0] = -beta.get_num();
    c[n] = beta.get_den();
    return IntPolynomial(std::move(c));
}

Integer IntPolynomial::content() const
{
    Integer g = 0;
    for (const auto& a : c_) {
        g = gcd(g, a);
        if (g == 1) break;
    }
    return g;
}

IntPolynomial IntPolynomial::primitive_part() const
{
    if (c_.empty()) return {};
    Integer g = content();
    if (leading() < 0) g = -g;
    std::vector<Integer> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) mpz_divexact(out[i].get_mpz_t(), c_[i].get_mpz_t(), g.get_mpz_t());
    return IntPolynomial(std::move(out));
}

bool IntPolynomial::is_binomial() const
{
    if (degree() < 1 || c_[0] == 0) return false;
    for (std::size_t i = 1; i + 1 < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rational IntPolynomial::evaluate(const Rational& x) const
{
    // Horner over Z on num/den to avoid repeated canonicalization.
    if (c_.empty()) return 0;
    const Integer& p = x.get_num();
    const Integer& q = x.get_den();
    Integer acc = c_.back();
    Integer qpow = 1;
    for (std::size_t i = c_.size() - 1; i-- > 0;) {
        qpow *= q;
        acc = acc * p + c_[i] * qpow;
    }
    Rational r(acc, qpow);
    r.canonicalize();
    return r;
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Integer> out(a.c_.size() + b.c_.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j)
            mpz_addmul(out[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
    return IntPolynomial(std::move(out));
}

IntPolynomial operator+(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<Integer> out(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
    return IntPolynomial(std::move(out));
}

IntPolynomial operator-(const IntPolynomial& a, const IntPolynomial& b)
{
    std::vector<Integer> out(std::max(a.c_.size(), b.c_.size()), Integer(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
    return IntPolynomial(std::move(out));
}

std::optional<IntPolynomial> IntPolynomial::exact_divide(const IntPolynomial& a, const IntPolynomial& b)
{
    if (b.is_zero()) raise(ErrorKind::Domain, "polynomial division by zero");
    if (a.is_zero()) return IntPolynomial{};
    if (a.degree() < b.degree()) return std::nullopt;
    std::vector<Integer> r = a.c_;
    std::vector<Integer> q(a.c_.size() - b.c_.size() + 1, Integer(0));
    const Integer& lb = b.leading();
    const std::size_t db = b.c_.size() - 1;
    for (std::size_t k = q.size(); k-- > 0;) {
        const Integer& top = r[k + db];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return std::nullopt;
        Integer t;
        mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
        for (std::size_t j = 0; j <= db; ++j) mpz_submul(r[k + j].get_mpz_t(), t.get_mpz_t(), b.c_[j].get_mpz_t());
        q[k] = std::move(t);
    }
    for (const auto& x : r)
        if (x != 0) return std::nullopt;
    return IntPolynomial(std::move(q));
}

std::vector<Rational> IntPolynomial::taylor_shift(const Rational& shift) const
{
    // Synthetic division repeated deg times: O(n^2) rational operations.
    std::vector<Rational> a(c_.begin(), c_.end());
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t k = n - 1; k-- > i;) a[k] += shift * a[k + 1];
    return a;
}

std::string IntPolynomial::to_string() const
{
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Integer& a = c_[k];
        if (a == 0) continue;
        Integer mag = abs(a);
        if (first) {
            if (a < 0) os << "-";
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        if (k == 0 || mag != 1) os << mag.get_str();
        if (k > 0) os << "x";
        if (k > 1) os << "^" << k;
        first = false;
    }
    return os.str();
}

bool factor_order(const IntPolynomial& a, const IntPolynomial& b)
{
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(), b.coeffs().end());
}

}  // namespace orbit_integra
