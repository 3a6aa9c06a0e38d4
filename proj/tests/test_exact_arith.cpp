#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>

#include "orbit_integra/errors.hpp"
#include "orbit_integra/exact_arith.hpp"
#include "orbit_integra/multiprecision.hpp"
#include "test_support.hpp"

using namespace orbit_integra;

namespace {

LogValue log_(long m, Rational q = 1) { return LogValue::log_of(Integer(m), q); }

ErrorKind kind_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Input;
}

}  // namespace

TEST_SUITE("exact_arith")
{
    TEST_CASE("padic valuation")
    {
        CHECK(padic_valuation(Rational(12), Integer(2)) == 2);
        CHECK(padic_valuation(Rational(3, 8), Integer(2)) == -3);
        CHECK(padic_valuation(Rational(12), Integer(5)) == 0);
        CHECK(kind_of([] { padic_valuation(Rational(0), Integer(2)); }) == ErrorKind::Domain);
        CHECK(kind_of([] { padic_valuation(Rational(12), Integer(6)); }) == ErrorKind::Input);
    }

    TEST_CASE("places")
    {
        CHECK(Place::parse("inf").is_infinite());
        CHECK(Place::parse("7").prime() == 7);
        CHECK(Place::finite(7).to_string() == "7");
        CHECK(kind_of([] { Place::finite(91); }) == ErrorKind::Input);
    }

    TEST_CASE("log_abs")
    {
        CHECK(log_abs(Rational(12), Place::finite(3)) == log_(3, -1));
        CHECK(log_abs(Rational(12), Place::infinity()) == log_(2, 2) + log_(3));
        CHECK(log_abs(Rational(1), Place::infinity()).is_zero());
        CHECK(log_abs(Rational(1), Place::finite(5)).is_zero());
        CHECK(kind_of([] { log_abs(Rational(0), Place::infinity()); }) == ErrorKind::Domain);
    }

    TEST_CASE("product formula examples")
    {
        auto r = product_formula_check(Rational(12));
        REQUIRE(r.contributions.size() == 3);
        CHECK(r.contributions[0].archimedean);
        CHECK(r.contributions[0].value == log_(12));
        CHECK(r.contributions[1].value == log_(2, -2));
        CHECK(r.contributions[2].value == log_(3, -1));
        CHECK(r.holds);
        CHECK(r.sum.is_zero());

        auto q = product_formula_check(Rational(2, 3));
        REQUIRE(q.contributions.size() == 3);
        CHECK(q.contributions[0].value == log_(2) - log_(3));
        CHECK(q.contributions[1].value == log_(2, -1));
        CHECK(q.contributions[2].value == log_(3));
        CHECK(q.holds);

        auto one = product_formula_check(Rational(1));
        CHECK(one.contributions.empty());
        CHECK(one.holds);
    }

    TEST_CASE("product formula on 1000 random rationals")
    {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 1000; ++i) {
            const Rational x = test_support::random_rational(rng, 64);
            const auto r = product_formula_check(x);
            REQUIRE(r.holds);
            REQUIRE(r.sum.is_zero());
        }
    }

    TEST_CASE("weil height")
    {
        CHECK(weil_height(Rational(2)) == log_(2));
        CHECK(weil_height(Rational(2, 3)) == log_(3));
        CHECK(weil_height(Rational(0)).is_zero());
        CHECK(weil_height(Rational(-7, 2)) == log_(7));
    }

    TEST_CASE("height properties")
    {
        std::mt19937_64 rng(5);
        for (int trial = 0; trial < 200; ++trial) {
            const int r = 1 + static_cast<int>(rng() % 5);
            Rational sum = 0;
            double bound = std::log(static_cast<double>(r)) + 1e-12;
            for (int i = 0; i < r; ++i) {
                const Rational a = test_support::random_rational(rng, 20, false);
                sum += a;
                bound += weil_height(a).to_double();
            }
            CHECK(weil_height(sum).to_double() <= bound);
        }
        for (int trial = 0; trial < 50; ++trial) {
            const Rational x = test_support::random_rational(rng, 30);
            for (unsigned long n = 1; n <= 16; ++n) {
                Rational p;
                mpz_pow_ui(p.get_num_mpz_t(), x.get_num().get_mpz_t(), n);
                mpz_pow_ui(p.get_den_mpz_t(), x.get_den().get_mpz_t(), n);
                CHECK(weil_height(p) == weil_height(x) * Rational(Integer(n)));
            }
        }
    }

    TEST_CASE("log_abs is a homomorphism")
    {
        std::mt19937_64 rng(17);
        for (int trial = 0; trial < 100; ++trial) {
            const Rational x = test_support::random_rational(rng, 40), y = test_support::random_rational(rng, 40);
            std::vector<Place> places{Place::infinity(), Place::finite(2), Place::finite(3), Place::finite(101)};
            for (const auto& v : places) CHECK(log_abs(x * y, v) == log_abs(x, v) + log_abs(y, v));
        }
    }

    TEST_CASE("euler totient against a gcd count")
    {
        CHECK(euler_totient(12ul) == 4);
        CHECK(euler_totient(1ul) == 1);
        CHECK(euler_totient(7ul) == 6);
        for (unsigned long n = 1; n <= 600; ++n) {
            unsigned long count = 0;
            for (unsigned long k = 1; k <= n; ++k) count += std::gcd(k, n) == 1;
            REQUIRE(euler_totient(n) == count);
            REQUIRE(euler_totient(Integer(n)) == count);
        }
        CHECK(kind_of([] { euler_totient(0ul); }) == ErrorKind::Input);
    }

    TEST_CASE("rational parsing")
    {
        CHECK(parse_rational("6/4") == Rational(3, 2));
        CHECK(parse_rational("-3") == Rational(-3));
        CHECK(format_rational(Rational(2)) == "2/1");
        CHECK(format_rational(Rational(-3, 8)) == "-3/8");
        CHECK(kind_of([] { parse_rational("1/0"); }) == ErrorKind::Input);
        CHECK(kind_of([] { parse_rational("abc"); }) == ErrorKind::Input);
    }
}

TEST_SUITE("log_value")
{
    TEST_CASE("canonical prime keys")
    {
        const LogValue v = log_(12) - log_(2, 2);
        CHECK(v == log_(3));
        REQUIRE(v.terms().size() == 1);
        CHECK(v.terms().begin()->first == 3);
        CHECK(v.fully_factored());
        CHECK((log_(6) - log_(2) - log_(3)).is_zero());
        CHECK(log_(1).is_zero());
    }

    TEST_CASE("string form")
    {
        CHECK((log_(2, 2) - log_(7, Rational(1, 3))).to_string() == "2*log(2) - 1/3*log(7)");
        CHECK(LogValue().to_string() == "0");
    }

    TEST_CASE("numeric evaluation is reproducible and monotone")
    {
        const LogValue v = log_(2, Rational(1, 3)) + log_(5, 2);
        const Real a = v.numeric(200), b = v.numeric(200);
        CHECK(mpfr_equal_p(a.get(), b.get()));
        CHECK(std::abs(v.to_double() - (std::log(2.0) / 3 + 2 * std::log(5.0))) < 1e-14);
        CHECK(v.numeric(128) < (v + log_(3, Rational(1, 1000))).numeric(128));
    }

    TEST_CASE("coprime refinement of unfactored keys")
    {
        // (2^127 - 1)(2^89 - 1) has prime factors far beyond trial division.
        Integer a = (Integer(1) << 127) - 1, b = (Integer(1) << 89) - 1;
        const LogValue v = LogValue::log_of(a * b) - LogValue::log_of(a);
        CHECK(v == LogValue::log_of(b));
        CHECK((LogValue::log_of(a * a) - LogValue::log_of(a) * Rational(2)).is_zero());
    }
}

TEST_SUITE("integer_factor")
{
    TEST_CASE("primality against the sieve")
    {
        const auto primes = small_primes();
        CHECK(primes.front() == 2);
        std::size_t idx = 0;
        for (std::uint32_t n = 0; n < 20000; ++n) {
            const bool sieve = idx < primes.size() && primes[idx] == n;
            if (sieve) ++idx;
            REQUIRE(is_prime(Integer(n)) == sieve);
        }
        CHECK(is_prime((Integer(1) << 127) - 1));
        CHECK_FALSE(is_prime(Integer("3825123056546413051")));  // strong pseudoprime to bases 2..23
    }

    TEST_CASE("factorizations reconstruct their input")
    {
        std::mt19937_64 rng(3);
        for (int trial = 0; trial < 200; ++trial) {
            const Integer n = test_support::random_integer(rng, 90) + 2;
            Integer prod = 1;
            const auto pieces = factor_integer(n);
            for (std::size_t i = 0; i < pieces.size(); ++i) {
                for (std::size_t j = i + 1; j < pieces.size(); ++j) REQUIRE(gcd(pieces[i].base, pieces[j].base) == 1);
                if (pieces[i].prime) REQUIRE(is_prime(pieces[i].base));
                Integer pw;
                mpz_pow_ui(pw.get_mpz_t(), pieces[i].base.get_mpz_t(), pieces[i].exponent);
                prod *= pw;
            }
            REQUIRE(prod == n);
        }
    }

    TEST_CASE("word-size semiprimes and trial division")
    {
        const Integer p("4294967291"), q("4294967279");
        const auto pieces = factor_integer(p * q * 12);
        REQUIRE(pieces.size() == 4);
        CHECK(pieces[2].base == q);
        CHECK(pieces[3].base == p);
        CHECK(pieces[0].exponent == 2);
        Integer rest;
        const auto small = trial_divide(Integer(999983) * 999979 * 8, rest);
        REQUIRE(small.size() == 3);
        CHECK(small[2].base == 999983);
        CHECK(rest == 1);
        const auto partial = trial_divide(p * q * 45, rest);
        CHECK(partial.size() == 2);
        CHECK(rest == p * q);
    }
}
