#include <doctest.h>

#include <cmath>

#include "orbit_integra/errors.hpp"
#include "orbit_integra/harness.hpp"
#include "orbit_integra/serialize.hpp"

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

const SIntegralityReport& only_class(const CensusReport& r, unsigned depth)
{
    REQUIRE(r.depths.at(depth).classes.size() == 1);
    return r.depths[depth].classes[0];
}

}  // namespace

TEST_SUITE("harness")
{
    TEST_CASE("AZ pairing examples")
    {
        PairingOptions from2;
        from2.first_depth = 2;
        const auto curve = az_pairing_curve(Rational(2), Rational(2), 2, 2, from2);
        REQUIRE(curve.size() == 1);
        CHECK(curve[0].n == 4);
        CHECK(curve[0].mean_lambda == log_(2) + log_(2, Rational(1, 4)));
        CHECK(curve[0].identity_holds);
        CHECK(curve[0].resultant_vanishes);
        CHECK(curve[0].mean_numeric == doctest::Approx(1.25 * std::log(2.0)));
        CHECK(kind_of([] { az_pairing_curve(Rational(2), Rational(2), 2, 2); }) == ErrorKind::Degenerate);

        for (const auto& rec : az_pairing_curve(Rational(1), Rational(2), 2, 5)) {
            CHECK(rec.mean_lambda == log_(2, Rational(1, static_cast<long>(rec.n))));
            CHECK(rec.identity_holds);
        }
        for (const auto& rec : az_pairing_curve(Rational(2), Rational(1), 3, 3)) CHECK(rec.mean_lambda == log_(2));

        try {
            az_pairing_curve(Rational(2), Rational(4), 2, 3);
            FAIL("expected degenerate error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Degenerate);
            CHECK(std::string(e.what()).find("depth 1") != std::string::npos);
        }
    }

    TEST_CASE("exact identity and direct archimedean check")
    {
        for (const auto& [alpha, beta, d] :
             {std::tuple{Rational(3), Rational(2), 2u}, std::tuple{Rational(-5, 7), Rational(11, 3), 3u},
              std::tuple{Rational(1, 2), Rational(-6), 2u}}) {
            PairingOptions opts;
            opts.direct_limit = 256;
            const auto curve = az_pairing_curve(alpha, beta, d, d == 2 ? 8 : 5, opts);
            for (const auto& rec : curve) {
                CHECK(rec.identity_holds);
                CHECK(rec.resultant_vanishes);
                CHECK(rec.expected == weil_height(alpha) + weil_height(beta) / Rational(Integer(rec.n)));
                if (rec.n <= 256) CHECK(std::abs(rec.archimedean_direct - rec.archimedean_exact) < 1e-9);
            }
        }
    }

    TEST_CASE("discrepancy examples")
    {
        const double a = discrepancy(Rational(2), Rational(2), 2, 2, Place::infinity());
        CHECK(a == doctest::Approx(std::log(2.0) - std::log(7.0) / 4).epsilon(1e-12));
        CHECK(a == doctest::Approx(0.20667).epsilon(1e-4));
        for (unsigned m = 0; m <= 5; ++m) CHECK(discrepancy(Rational(1), Rational(2), 2, m, Place::finite(7)) == 0.0);
        CHECK(discrepancy(Rational(0), Rational(1), 2, 1, Place::infinity()) == doctest::Approx(0.0));
        // Gaussian alpha: mean over the level matches a direct root sum.
        const GaussianRational g = GaussianRational::parse("3/5+4/5i");
        const OrbitLevel level = preimages(Rational(2), 2, 4);
        double direct = 0;
        for (const auto& z : level.points()) direct += lambda_local(g, z, Place::infinity()).to_double();
        direct /= static_cast<double>(level.size());
        CHECK(discrepancy(g, Rational(2), 2, 4, Place::infinity()) == doctest::Approx(std::abs(direct)).epsilon(1e-12));
    }

    TEST_CASE("gaussian heights")
    {
        const GaussianRational g = GaussianRational::parse("3/5+4/5i");
        CHECK(gaussian_height(g) == log_(5, Rational(1, 2)));
        CHECK(gaussian_degree(g) == 2);
        CHECK(gaussian_height(GaussianRational(Rational(3, 2))) == log_(3));
        CHECK(gaussian_degree(GaussianRational(Rational(3, 2))) == 1);
        // 1 + i: minimal polynomial x^2 - 2x + 2, h = (1/2) log 2.
        CHECK(gaussian_height(GaussianRational(Rational(1), Rational(1))) == log_(2, Rational(1, 2)));
    }

    TEST_CASE("archimedean closeness")
    {
        const auto r = archimedean_closeness(GaussianRational::parse("3/5+4/5i"), Rational(2), 2, 6, 0.5);
        CHECK(r.n == 64);
        CHECK(std::isfinite(r.ratio));
        CHECK(r.h_alpha == doctest::Approx(std::log(5.0) / 2));
        CHECK(r.field_degree == 2);

        const auto s = archimedean_closeness(Rational(2), Rational(2), 2, 4, 0.5);
        CHECK(s.closest_index == 0);
        CHECK(s.max_log_inv_distance == doctest::Approx(-std::log(2 - std::pow(2.0, 1.0 / 16))).epsilon(1e-12));
        CHECK(s.ratio < 0.05);

        for (const char* bad : {"0", "1", "-1", "0+1i", "0-1i"})
            CHECK(kind_of([bad] { archimedean_closeness(GaussianRational::parse(bad), Rational(2), 2, 3, 0.5); }) ==
                  ErrorKind::Precondition);
    }

    TEST_CASE("census for alpha = 3, beta = 2")
    {
        const auto plain = s_integral_census(Rational(3), Rational(2), 2, {Place::infinity()}, 3);
        CHECK(plain.s_fin == 0);
        CHECK(only_class(plain, 0).verdict);
        const auto& d1 = only_class(plain, 1);
        CHECK_FALSE(d1.verdict);
        REQUIRE(d1.witnesses.size() == 1);
        CHECK(d1.witnesses[0].group.modulus == 7);
        CHECK(d1.witnesses[0].valuation == 1);
        CHECK(plain.last_integral_depth == 0);
        CHECK(plain.stabilization_depth == 1);

        const auto with7 = s_integral_census(Rational(3), Rational(2), 2, {Place::infinity(), Place::finite(7)}, 4);
        CHECK(with7.s_fin == 1);
        CHECK(only_class(with7, 1).verdict);
        const auto& d2 = only_class(with7, 2);
        CHECK_FALSE(d2.verdict);
        CHECK(d2.witnesses.at(0).group.modulus == 79);
        const auto& d3 = only_class(with7, 3);
        CHECK_FALSE(d3.verdict);
        CHECK(d3.witnesses.at(0).group.modulus == 937);
        CHECK(with7.max_integral_size == 2);
        CHECK(with7.max_integral_depth == 1);
        CHECK(with7.stabilization_depth == 2);
        CHECK(with7.exceptional_count == 0);
        CHECK(with7.early_max_size == 2);
        CHECK(with7.integral_above_early_max == 0);

        CHECK(kind_of([] { s_integral_census(Rational(1), Rational(2), 2, {Place::infinity()}, 2); }) ==
              ErrorKind::Precondition);
        CHECK(kind_of([] { s_integral_census(Rational(-1), Rational(2), 2, {Place::infinity()}, 2); }) ==
              ErrorKind::Precondition);
    }

    TEST_CASE("clustering check")
    {
        const auto s = clustering_check(Rational(3), Rational(2), 2, Integer(7), 0.5);
        CHECK(s.close_pairs == 1);
        CHECK(s.ok);
        const auto t = clustering_check(Rational(1), Rational(2), 4, Integer(2), 0.5);
        CHECK(t.close_pairs == 0);
        CHECK(t.clustered_bound == doctest::Approx(2 * std::log(2.0) / 0.5 + 1));
        CHECK(kind_of([] { clustering_check(Rational(1), Rational(2), 4, Integer(2), 0); }) == ErrorKind::Input);
    }

    TEST_CASE("bound suite on a small config")
    {
        const nlohmann::json config = nlohmann::json::parse(R"({
            "cells": [
                {"kind": "az_rate", "alpha": "2", "beta": "2", "depths": [2, 6], "constant": 1},
                {"kind": "discrepancy", "alpha": "2", "beta": "2", "depths": [4, 7], "factor": 4},
                {"kind": "truncated", "alpha": "3", "beta": "2", "depths": [2, 6], "C3": 10},
                {"kind": "equidistribution", "alpha": "2", "beta": "2", "depths": [2, 6], "C7": 10},
                {"kind": "closeness", "alpha": "3/5+4/5i", "beta": "2", "depths": [2, 6], "constant": 5},
                {"kind": "clustering", "count": 60, "seed": 3, "max_n": 16, "max_p": 13},
                {"kind": "census", "alpha": "3", "beta": "2", "S": [7], "max_depth": 4}
            ]
        })");
        const SuiteReport rep = bound_suite(config);
        REQUIRE(rep.cells.size() == 7);
        for (const auto& cell : rep.cells) {
            INFO(cell.label << ": " << cell.message);
            CHECK(cell.pass);
            CHECK((!cell.rows.empty() || cell.kind == "clustering"));
        }
        CHECK(rep.all_pass);
        CHECK(rep.cells[0].implied.at("C_AZ") <= 1.0);
        CHECK(rep.cells[5].implied.at("violations") == 0);
        CHECK(rep.cells[6].implied.at("stabilization_depth") == 2);

        // Reports are reproducible bit for bit.
        CHECK(to_json(bound_suite(config)).dump() == to_json(rep).dump());
    }

    TEST_CASE("bound suite input errors")
    {
        CHECK(kind_of([] { bound_suite(nlohmann::json::object()); }) == ErrorKind::Input);
        CHECK(kind_of([] { bound_suite(nlohmann::json::parse(R"({"cells": [{"kind": "nope"}]})")); }) ==
              ErrorKind::Input);
        CHECK(kind_of([] { bound_suite(nlohmann::json::parse(R"({"cells": [{"kind": "az_rate", "beta": "2"}]})")); }) ==
              ErrorKind::Input);
        CHECK(kind_of([] {
                  bound_suite(nlohmann::json::parse(R"({"cells": [{"kind": "az_rate", "alpha": "2/0", "beta": "2", "depths": [1, 2]}]})"));
              }) == ErrorKind::Input);
        // Non-input failures are reported on the cell.
        const auto rep = bound_suite(nlohmann::json::parse(
            R"({"cells": [{"kind": "az_rate", "alpha": "2", "beta": "4", "depths": [0, 2]}]})"));
        CHECK_FALSE(rep.all_pass);
        CHECK_FALSE(rep.cells[0].message.empty());
    }
}
