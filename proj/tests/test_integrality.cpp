#include <doctest.h>

#include <algorithm>
#include <optional>
#include <set>

#include "orbit_integra/errors.hpp"
#include "orbit_integra/integrality.hpp"
#include "orbit_integra/padic_geometry.hpp"
#include "test_support.hpp"

using namespace orbit_integra;

namespace {

std::vector<Integer> ints(std::initializer_list<long> xs)
{
    std::vector<Integer> out;
    for (long x : xs) out.emplace_back(x);
    return out;
}

bool contains(const std::vector<Place>& S, const Integer& p)
{
    return std::any_of(S.begin(), S.end(), [&](const Place& v) { return v.is_finite() && v.prime() == p; });
}

// Definition-level verdict: at every prime dividing anything in sight, read
// the class roots off the Newton polygon of f(y + alpha) or of f.
// Returns nullopt when some number resists factoring.
std::optional<bool> oracle_verdict(const IntPolynomial& f, const Rational& alpha, const std::vector<Place>& S)
{
    std::set<Integer> primes;
    bool complete = true;
    auto add = [&](const Integer& m) {
        if (m == 0) return;
        for (const auto& piece : factor_integer(m)) {
            complete = complete && piece.prime;
            primes.insert(piece.base);
        }
    };
    const Rational at = f.evaluate(alpha);
    add(at.get_num());
    add(at.get_den());
    add(alpha.get_num());
    add(alpha.get_den());
    add(f.leading());
    add(f[0]);
    if (!complete) return std::nullopt;
    for (const Integer& p : primes) {
        if (contains(S, p)) continue;
        if (alpha != 0 && padic_valuation(alpha, p) < 0) {
            std::vector<Rational> c(f.coeffs().begin(), f.coeffs().end());
            const auto poly = newton_polygon(c, p);
            if (poly.root_valuations().back() < 0) return false;
        } else {
            const auto poly = newton_polygon(f.taylor_shift(alpha), p);
            if (poly.max_root_valuation() > 0) return false;
        }
    }
    return true;
}

}  // namespace

TEST_SUITE("integrality")
{
    TEST_CASE("candidate primes")
    {
        CHECK(candidate_primes(Rational(3), Rational(2), 2).primes == ints({2, 7}));
        CHECK(candidate_primes(Rational(1), Rational(2), 2).primes == ints({2}));
        const auto c = candidate_primes(Rational(1, 3), Rational(2), 2).primes;
        CHECK(std::find(c.begin(), c.end(), Integer(3)) != c.end());
        CHECK(candidate_primes(Rational(3), Rational(2), 2).unfactored.empty());
        try {
            candidate_primes(Rational(2), Rational(8), 3);
            FAIL("expected degenerate error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Degenerate);
        }
    }

    TEST_CASE("verdict examples")
    {
        const auto part = galois_orbits(preimages(Rational(2), 2, 1));
        REQUIRE(part.classes.size() == 1);
        const auto& cls = part.classes[0];

        const auto a = is_s_integral(cls, 0, Rational(2), 2, Rational(1), {Place::infinity()});
        CHECK(a.verdict);
        CHECK(a.witnesses.empty());

        const auto b = is_s_integral(cls, 0, Rational(2), 2, Rational(3), {Place::infinity()});
        CHECK_FALSE(b.verdict);
        REQUIRE(b.witnesses.size() == 1);
        CHECK(b.witnesses[0].group.modulus == 7);
        CHECK(b.witnesses[0].group.prime);
        CHECK(b.witnesses[0].valuation == 1);

        const auto c = is_s_integral(cls, 0, Rational(2), 2, Rational(3), {Place::infinity(), Place::finite(7)});
        CHECK(c.verdict);

        // v_p(alpha) < 0 branch: roots of x^2 - 2 are 3-integral, so alpha = 1/3 is fine at 3.
        const auto d = is_s_integral(cls, 0, Rational(2), 2, Rational(1, 3), {Place::infinity()});
        CHECK(d.verdict == oracle_verdict(cls.factor, Rational(1, 3), {Place::infinity()}));

        // Roots of 9x^2 - 2 have 3-adic valuation -1: not integral at 3 when alpha = 1/3... unless 3 in S.
        const auto e = galois_orbits(preimages(Rational(2, 9), 2, 1));
        const auto e1 = is_s_integral(e.classes[0], 0, Rational(2, 9), 2, Rational(1, 3), {Place::infinity()});
        CHECK(e1.verdict == oracle_verdict(e.classes[0].factor, Rational(1, 3), {Place::infinity()}));

        try {
            is_s_integral(cls, 0, Rational(2), 2, Rational(3), {Place::finite(7)});
            FAIL("expected precondition error");
        } catch (const Error& err) {
            CHECK(err.kind() == ErrorKind::Precondition);
        }
    }

    TEST_CASE("agreement with the definition-level oracle")
    {
        std::mt19937_64 rng(41);
        int negatives = 0, positives = 0;
        for (int t = 0; t < 150; ++t) {
            const Rational alpha = test_support::small_rational(rng, 12, 6);
            const Rational beta = test_support::small_rational(rng, 30, 9);
            const unsigned d = 2 + static_cast<unsigned>(rng() % 2);
            const unsigned m = 1 + static_cast<unsigned>(rng() % 3);
            const OrbitLevel level = preimages(beta, d, m);
            if (power_equals(alpha, beta, level.size())) continue;
            const auto part = galois_orbits(level);
            const auto cands = candidate_primes(alpha, beta, level.size());
            std::vector<Place> S{Place::infinity()};
            for (const Integer& p : cands.primes)
                if (rng() % 3 == 0) S.push_back(Place::finite(p));
            for (std::size_t k = 0; k < part.classes.size(); ++k) {
                const auto& cls = part.classes[k];
                if (cls.factor.evaluate(alpha) == 0) continue;
                INFO("alpha = " << alpha.get_str() << ", beta = " << beta.get_str() << ", n = " << level.size()
                                << ", class " << k);
                const auto report = is_s_integral(cls, k, beta, level.size(), alpha, S);
                const auto expected = oracle_verdict(cls.factor, alpha, S);
                if (expected) REQUIRE(report.verdict == *expected);
                REQUIRE(report.verdict == report.witnesses.empty());
                for (const auto& w : report.witnesses) {
                    if (w.group.prime) REQUIRE_FALSE(contains(S, w.group.modulus));
                    REQUIRE(w.valuation != 0);
                }
                (report.verdict ? positives : negatives)++;
            }
        }
        CHECK(positives > 10);
        CHECK(negatives > 10);
    }

    TEST_CASE("enlarging S never breaks integrality")
    {
        const Rational alpha(3), beta(2);
        for (unsigned m = 1; m <= 4; ++m) {
            const OrbitLevel level = preimages(beta, 2, m);
            const auto part = galois_orbits(level);
            const auto cands = candidate_primes(alpha, beta, level.size());
            for (std::size_t k = 0; k < part.classes.size(); ++k) {
                std::vector<Place> S{Place::infinity()};
                bool previous = is_s_integral(part.classes[k], k, beta, level.size(), alpha, S).verdict;
                for (const Integer& p : cands.primes) {
                    S.push_back(Place::finite(p));
                    const bool now = is_s_integral(part.classes[k], k, beta, level.size(), alpha, S).verdict;
                    REQUIRE((!previous || now));
                    previous = now;
                }
                CHECK(previous);  // all candidate primes excluded
            }
        }
    }
}
