#include <doctest.h>

#include <cmath>

#include "orbit_integra/errors.hpp"
#include "orbit_integra/radical_points.hpp"
#include "test_support.hpp"

using namespace orbit_integra;

namespace {

Complex power(Complex z, std::uint64_t n)
{
    Complex out(Real(1.0, z.precision()), Real(z.precision()));
    while (n) {
        if (n & 1) out *= z;
        z *= z;
        n >>= 1;
    }
    return out;
}

// |a - b| / |b| (or |a - b| when b = 0)
double relative_gap(const Complex& a, const Complex& b)
{
    Real gap = abs(a - b);
    Real scale = abs(b);
    if (mpfr_zero_p(scale.get())) return gap.to_double();
    return (gap / scale).to_double();
}

Complex rational_complex(const Rational& re, const Rational& im, long prec)
{
    return Complex(Real(re, prec), Real(im, prec));
}

}  // namespace

TEST_SUITE("radical_points")
{
    TEST_CASE("fourth roots of 2")
    {
        const OrbitLevel level = preimages(Rational(2), 2, 2);
        REQUIRE(level.size() == 4);
        const Real r = root_of(Rational(2), 4, 128);
        const Complex expected[4] = {Complex(r, Real(0.0, 128)), Complex(Real(0.0, 128), r), Complex(-r, Real(0.0, 128)),
                                     Complex(Real(0.0, 128), -r)};
        for (std::uint64_t j = 0; j < 4; ++j) CHECK(relative_gap(embed(level.point(j), 128), expected[j]) < 1e-35);
    }

    TEST_CASE("cube roots of unity and the negative-beta phase")
    {
        const OrbitLevel cube = preimages(Rational(1), 3, 1);
        REQUIRE(cube.size() == 3);
        for (const auto& pt : cube.points()) CHECK(relative_gap(power(embed(pt, 128), 3), rational_complex(1, 0, 128)) < 1e-35);

        const OrbitLevel neg = preimages(Rational(-2), 2, 1);
        const Complex z0 = embed(neg.point(0), 128), z1 = embed(neg.point(1), 128);
        CHECK(std::abs(z0.re.to_double()) < 1e-30);
        CHECK(std::abs(z0.im.to_double() - std::sqrt(2.0)) < 1e-15);
        CHECK(std::abs(z1.im.to_double() + std::sqrt(2.0)) < 1e-15);
        CHECK(relative_gap(z0 * z0, rational_complex(-2, 0, 128)) < 1e-35);
    }

    TEST_CASE("embedding examples")
    {
        const Complex two = embed(RadicalPoint{Rational(2), 1, 0}, 64);
        CHECK(mpfr_cmp_ui(two.re.get(), 2) == 0);
        CHECK(mpfr_zero_p(two.im.get()));
        const Complex minus_root = embed(RadicalPoint{Rational(2), 2, 1}, 128);
        CHECK(minus_root.re.to_string(12).rfind("-1.41421356", 0) == 0);
        const Complex i = embed(RadicalPoint{Rational(1), 4, 1}, 64);
        CHECK(mpfr_zero_p(i.re.get()));
        CHECK(mpfr_cmp_ui(i.im.get(), 1) == 0);
    }

    TEST_CASE("value^n = beta to 2^-100 for n up to 4096")
    {
        std::mt19937_64 rng(8);
        for (std::uint64_t n : {1ull, 2ull, 7ull, 64ull, 243ull, 1024ull, 4096ull}) {
            for (int t = 0; t < 4; ++t) {
                const Rational beta = test_support::small_rational(rng, 1000, 50);
                const std::uint64_t j = rng() % n;
                const Complex z = embed(RadicalPoint{beta, n, j}, 128 + 24);
                Complex zn = power(z, n);
                CHECK(relative_gap(zn, rational_complex(beta, 0, 152)) < std::ldexp(1.0, -100));
            }
        }
    }

    TEST_CASE("points of a level are pairwise distinct")
    {
        const OrbitLevel level = preimages(Rational(-5, 3), 3, 3);
        const auto values = embed_level(level, 128);
        for (std::size_t a = 0; a < values.size(); ++a)
            for (std::size_t b = a + 1; b < values.size(); ++b) REQUIRE(abs(values[a] - values[b]).to_double() > 1e-6);
    }

    TEST_CASE("squaring consistency across depths")
    {
        std::mt19937_64 rng(21);
        for (unsigned d : {2u, 3u}) {
            for (int t = 0; t < 3; ++t) {
                const Rational beta = test_support::small_rational(rng, 200, 30);
                const unsigned max_m = d == 2 ? 10 : 6;
                for (unsigned m = 1; m <= max_m; ++m) {
                    const OrbitLevel deep(beta, d, m), shallow(beta, d, m - 1);
                    const std::uint64_t step = std::max<std::uint64_t>(1, deep.size() / 64);
                    for (std::uint64_t j = 0; j < deep.size(); j += step) {
                        const Complex up = power(embed(deep.point(j), 140), d);
                        const Complex below = embed(shallow.point(j % shallow.size()), 140);
                        REQUIRE(relative_gap(up, below) < std::ldexp(1.0, -100));
                    }
                }
            }
        }
    }

    TEST_CASE("point heights")
    {
        CHECK(point_height(RadicalPoint{Rational(2), 8, 3}) == LogValue::log_of(Integer(2), Rational(1, 8)));
        CHECK(point_height(RadicalPoint{Rational(4), 2, 1}) == LogValue::log_of(Integer(2)));
        CHECK(point_height(RadicalPoint{Rational(1), 12, 5}).is_zero());
        // Tower: depth m height is the depth m-1 height divided by d.
        for (unsigned m = 1; m <= 8; ++m)
            CHECK(point_height(RadicalPoint{Rational(7, 3), std::uint64_t(1) << m, 0}) ==
                  point_height(RadicalPoint{Rational(7, 3), std::uint64_t(1) << (m - 1), 0}) / Rational(2));
    }

    TEST_CASE("height from the full conjugate set")
    {
        // h(gamma) = (1/n) sum over places of Q(gamma) of N_w log+|gamma|_w for
        // x^n - beta irreducible: archimedean places via embeddings, and above p
        // every root has valuation v_p(beta)/n.
        for (const Rational& beta : {Rational(2), Rational(3, 5), Rational(-7, 4), Rational(10, 27)}) {
            for (std::uint64_t n = 1; n <= 8; ++n) {
                const long prec = 200;
                Real sum(0.0, prec);
                for (std::uint64_t j = 0; j < n; ++j) {
                    Real l = log_abs(embed(RadicalPoint{beta, n, j}, prec));
                    if (mpfr_sgn(l.get()) > 0) sum += l;
                }
                for (const Integer& p : {Integer(2), Integer(3), Integer(5), Integer(7)}) {
                    const long v = padic_valuation(beta, p);
                    if (v < 0) sum += Real(Rational(-v), prec) * log_integer(p, prec);
                }
                sum /= Real(Rational(Integer(n)), prec);
                const Real h = point_height(RadicalPoint{beta, n, 0}).numeric(prec);
                CHECK(abs(sum - h).to_double() < 1e-20);
            }
        }
    }

    TEST_CASE("level valuations")
    {
        CHECK(level_valuation(Rational(2), 4, Integer(2)) == Rational(1, 4));
        CHECK(level_valuation(Rational(2), 4, Integer(3)) == 0);
        CHECK(level_valuation(Rational(4, 9), 2, Integer(3)) == -1);
    }

    TEST_CASE("errors")
    {
        CHECK_THROWS_AS(preimages(Rational(2), 1, 2), Error);
        try {
            preimages(Rational(2), 2, 21);
            FAIL("expected resource error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Resource);
        }
        CHECK(preimages(Rational(2), 2, 20).size() == (1u << 20));
        try {
            preimages(Rational(0), 2, 1);
            FAIL("expected input error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Input);
        }
    }
}
