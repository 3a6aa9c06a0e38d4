#include <doctest.h>

#include "orbit_integra/serialize.hpp"
#include "test_support.hpp"

using namespace orbit_integra;

TEST_SUITE("serialize")
{
    TEST_CASE("integers")
    {
        CHECK(integer_to_json(Integer(42)) == Json(42));
        const Integer big = (Integer(1) << 100) + 7;
        CHECK(integer_to_json(big).is_string());
        CHECK(integer_from_json(integer_to_json(big)) == big);
        CHECK(integer_from_json(integer_to_json(Integer(-5))) == -5);
    }

    TEST_CASE("log values")
    {
        const LogValue v = LogValue::log_of(Integer(2), Rational(2)) - LogValue::log_of(Integer(7), Rational(1, 3));
        const Json j = to_json(v);
        CHECK(j.dump() == R"({"terms":[[2,"2/1"],[7,"-1/3"]]})");
        CHECK(log_value_from_json(j) == v);
        CHECK(log_value_from_json(to_json(LogValue())).is_zero());
        std::mt19937_64 rng(2);
        for (int t = 0; t < 50; ++t) {
            const Rational x = test_support::random_rational(rng, 40);
            const LogValue w = weil_height(x) * test_support::small_rational(rng, 9, 9);
            CHECK(log_value_from_json(to_json(w)) == w);
        }
    }

    TEST_CASE("points, polynomials and profiles")
    {
        const RadicalPoint pt{Rational(-3, 4), 8, 5};
        const RadicalPoint back = radical_point_from_json(to_json(pt));
        CHECK(back.beta == pt.beta);
        CHECK(back.n == 8);
        CHECK(back.j == 5);

        const IntPolynomial f = IntPolynomial::binomial_model(9, Rational(8));
        CHECK(polynomial_from_json(to_json(f)) == f);

        const std::vector<Rational> profile{Rational(0), Rational(1), Rational(1, 4)};
        const Json pj = profile_to_json(profile);
        CHECK(pj.dump() == R"(["1/1","1/4","0/1"])");
        CHECK(profile_from_json(pj) == std::vector<Rational>{Rational(1), Rational(1, 4), Rational(0)});
    }

    TEST_CASE("integrality reports")
    {
        SIntegralityReport rep;
        rep.class_index = 3;
        rep.class_size = 4;
        rep.S = {Place::infinity(), Place::finite(7)};
        rep.verdict = false;
        rep.witnesses = {{PrimeGroup{Integer(79), true}, Rational(1)},
                         {PrimeGroup{(Integer(1) << 89) - 1, true}, Rational(1, 2)},
                         {PrimeGroup{Integer("1000000016000000063"), false}, Rational(2)}};
        rep.checked = {PrimeGroup{Integer(2), true}, PrimeGroup{Integer(79), true}};
        const Json j = to_json(rep);
        CHECK(j.at("witnesses").at(0).dump() == R"([79,"1/1"])");
        CHECK(j.at("witnesses").at(2).at(0) == "composite:1000000016000000063");
        const SIntegralityReport back = integrality_report_from_json(j);
        CHECK(back.class_index == 3);
        CHECK(back.class_size == 4);
        CHECK(back.S.size() == 2);
        CHECK(back.S[1] == Place::finite(7));
        CHECK_FALSE(back.verdict);
        REQUIRE(back.witnesses.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(back.witnesses[i].group.modulus == rep.witnesses[i].group.modulus);
            CHECK(back.witnesses[i].group.prime == rep.witnesses[i].group.prime);
            CHECK(back.witnesses[i].valuation == rep.witnesses[i].valuation);
        }
        CHECK(to_json(back).dump() == j.dump());
    }

    TEST_CASE("reports serialize deterministically")
    {
        const auto part = galois_orbits(preimages(Rational(16), 2, 2));
        const Json pj = to_json(part);
        CHECK(pj.at("classes").size() == 3);
        CHECK(to_json(galois_orbits(preimages(Rational(16), 2, 2))).dump() == pj.dump());

        const auto census = s_integral_census(Rational(3), Rational(2), 2, {Place::infinity(), Place::finite(7)}, 3);
        const Json cj = to_json(census);
        CHECK(cj.at("stabilization_depth") == 2);
        CHECK(cj.at("depths").size() == 4);
        CHECK(cj.at("S").dump() == R"(["inf","7"])");

        const auto poly = distance_polygon(Rational(3), Rational(2), 2, Integer(7));
        CHECK(to_json(poly).at("prime") == 7);
        CHECK(to_json(product_formula_check(Rational(-12, 35))).at("holds") == true);
        CHECK(to_json(degree_bound_report(Rational(4), 4)).at("satisfied") == true);
    }
}
