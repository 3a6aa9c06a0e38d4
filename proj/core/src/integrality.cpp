#include "orbit_integra/integrality.hpp"

#include <algorithm>
#include <set>

#include "orbit_integra/errors.hpp"
#include "orbit_integra/padic_geometry.hpp"

namespace orbit_integra {

namespace {

void collect(const Integer& x, std::set<Integer>& primes, std::set<Integer>& unfactored)
{
    if (abs(x) <= 1) return;
    for (const auto& piece : factor_integer(x)) (piece.prime ? primes : unfactored).insert(piece.base);
}

// Root valuations v_p(gamma - alpha) over the class, as a Newton polygon.
NewtonPolygon shifted_polygon(const IntPolynomial& f, const Rational& alpha, const Integer& p)
{
    if (f.is_binomial()) {
        const Rational root_power = -Rational(f[0]) / Rational(f.leading());
        return distance_polygon(alpha, root_power, static_cast<std::uint64_t>(f.degree()), p);
    }
    return newton_polygon(f.taylor_shift(alpha), p);
}

}  // namespace

CandidatePrimes candidate_primes(const Rational& alpha, const Rational& beta, std::uint64_t n)
{
    if (power_equals(alpha, beta, n)) raise(ErrorKind::Degenerate, "alpha^n = beta: a level point equals alpha");
    std::set<Integer> primes, unfactored;
    collect(alpha.get_den(), primes, unfactored);
    collect(beta.get_num(), primes, unfactored);
    collect(beta.get_den(), primes, unfactored);
    Rational power;
    mpz_pow_ui(power.get_num_mpz_t(), alpha.get_num().get_mpz_t(), n);
    mpz_pow_ui(power.get_den_mpz_t(), alpha.get_den().get_mpz_t(), n);
    const Rational diff = power - beta;
    collect(diff.get_num(), primes, unfactored);
    collect(diff.get_den(), primes, unfactored);
    return {{primes.begin(), primes.end()}, {unfactored.begin(), unfactored.end()}};
}

SIntegralityReport is_s_integral(const GaloisClass& cls, std::size_t class_index, const Rational& beta,
                                 std::uint64_t n, const Rational& alpha, const std::vector<Place>& S)
{
    if (std::none_of(S.begin(), S.end(), [](const Place& v) { return v.is_infinite(); }))
        raise(ErrorKind::Precondition, "S must contain the archimedean place");
    const IntPolynomial& f = cls.factor;
    if (f.degree() < 1) raise(ErrorKind::Input, "class factor must have degree >= 1");

    SIntegralityReport report;
    report.class_index = class_index;
    report.class_size = cls.size();
    report.S = S;
    std::sort(report.S.begin(), report.S.end());

    std::vector<Integer> s_primes;
    for (const auto& v : S)
        if (v.is_finite()) s_primes.push_back(v.prime());
    auto in_s = [&](const Integer& p) { return std::find(s_primes.begin(), s_primes.end(), p) != s_primes.end(); };

    std::set<Integer> structural, unsplit;
    collect(alpha.get_den(), structural, unsplit);
    collect(beta.get_num(), structural, unsplit);
    collect(beta.get_den(), structural, unsplit);
    collect(f.leading(), structural, unsplit);
    if (!unsplit.empty()) raise(ErrorKind::Resource, "could not factor the denominators of alpha and beta");

    for (const auto& p : structural) {
        report.checked.push_back({p, true});
        if (in_s(p)) continue;
        if (alpha != 0 && padic_valuation(alpha, p) < 0) {
            const Rational v = level_valuation(beta, n, p);
            if (v < 0) report.witnesses.push_back({{p, true}, v});
            continue;
        }
        const Rational top = shifted_polygon(f, alpha, p).max_root_valuation();
        if (top > 0) report.witnesses.push_back({{p, true}, top});
    }

    // Elsewhere alpha and the roots are integral: the class meets alpha at p
    // exactly when p divides the numerator of f(alpha).
    const Rational value = f.evaluate(alpha);
    if (value == 0) raise(ErrorKind::Degenerate, "alpha is a root of the class factor");
    Integer rest = abs(value.get_num());
    for (const auto& p : structural) strip_factor(rest, p);
    for (const auto& p : s_primes) strip_factor(rest, p);
    if (rest != 1) {
        for (const auto& piece : factor_integer(rest)) {
            if (piece.prime) {
                const Rational top = shifted_polygon(f, alpha, piece.base).max_root_valuation();
                report.witnesses.push_back({{piece.base, true}, top});
            } else {
                report.witnesses.push_back({{piece.base, false}, Rational(Integer(piece.exponent))});
            }
            report.checked.push_back({piece.base, piece.prime});
        }
    }
    std::sort(report.checked.begin(), report.checked.end());
    std::sort(report.witnesses.begin(), report.witnesses.end(),
              [](const IntegralityWitness& a, const IntegralityWitness& b) { return a.group < b.group; });
    report.verdict = report.witnesses.empty();
    return report;
}

}  // namespace orbit_integra
