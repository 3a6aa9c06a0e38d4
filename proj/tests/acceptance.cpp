// Acceptance runner: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "orbit_integra/binomial_galois.hpp"
#include "orbit_integra/errors.hpp"
#include "orbit_integra/harness.hpp"
#include "orbit_integra/padic_geometry.hpp"
#include "orbit_integra/serialize.hpp"
#include "test_support.hpp"

using namespace orbit_integra;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double time_limit;  // seconds, 0 = none
    std::function<Outcome()> run;
};

std::string config_dir = ORBIT_INTEGRA_CONFIG_DIR;

Json load_json(const std::string& name)
{
    std::ifstream in(config_dir + "/" + name);
    if (!in) throw std::runtime_error("cannot open " + config_dir + "/" + name);
    return Json::parse(in);
}

template <typename... Args>
std::string format(const char* fmt, Args... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

Outcome product_formula()
{
    std::mt19937_64 rng(20240611);
    std::size_t failures = 0;
    for (int i = 0; i < 10000; ++i) {
        const Rational x = test_support::random_rational(rng, 64);
        const auto rec = product_formula_check(x);
        if (!rec.holds || !rec.sum.is_zero()) ++failures;
    }
    return {failures == 0, format("10000 rationals (64-bit num/den), %zu failures", failures)};
}

Outcome az_identity()
{
    const char* alphas[] = {"2", "3", "1/2", "-2", "5/3", "-3/4", "7", "2/5", "10", "-1/3"};
    const char* betas[] = {"3", "2", "-5", "7/2", "6", "1/3", "-2", "11", "5/4", "3/7"};
    std::size_t cells = 0, records = 0, identity_failures = 0, float_failures = 0;
    double worst = 0;
    for (unsigned d : {2u, 3u, 4u}) {
        const unsigned max_depth = d == 2 ? 10 : d == 3 ? 6 : 5;
        for (int i = 0; i < 10; ++i) {
            PairingOptions opts;
            opts.direct_limit = 1024;
            const auto curve = az_pairing_curve(parse_rational(alphas[i]), parse_rational(betas[i]), d, max_depth, opts);
            ++cells;
            for (const auto& rec : curve) {
                ++records;
                if (!rec.identity_holds || !rec.resultant_vanishes || !(rec.mean_lambda == rec.expected))
                    ++identity_failures;
                const double gap = std::abs(rec.archimedean_direct - rec.archimedean_exact);
                const double mean_gap =
                    std::abs(rec.mean_numeric - rec.expected.to_double());
                worst = std::max({worst, gap, mean_gap});
                if (!(gap < 1e-9) || !(mean_gap < 1e-9)) ++float_failures;
            }
        }
    }
    return {cells == 30 && identity_failures == 0 && float_failures == 0,
            format("%zu cells, %zu depths up to n = 1024, %zu identity failures, %zu float failures, max gap %.2e",
                   cells, records, identity_failures, float_failures, worst)};
}

Outcome factor_oracle()
{
    const auto corpus = test_support::beta_corpus();
    std::size_t oracle_mismatch = 0, capelli_mismatch = 0;
    for (const Rational& beta : corpus) {
        for (std::uint64_t n = 1; n <= 16; ++n)
            if (factor_binomial(n, beta) != subset_factor_oracle(n, beta)) ++oracle_mismatch;
        for (std::uint64_t n = 1; n <= 64; ++n)
            if ((factor_binomial(n, beta).size() == 1) != capelli_irreducible(n, beta)) ++capelli_mismatch;
    }
    return {corpus.size() == 50 && oracle_mismatch == 0 && capelli_mismatch == 0,
            format("50 betas: %zu oracle mismatches (n <= 16), %zu Capelli mismatches (n <= 64)", oracle_mismatch,
                   capelli_mismatch)};
}

Outcome slope_sums()
{
    std::mt19937_64 rng(404);
    const unsigned long primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
    std::size_t slope_failures = 0, done = 0;
    while (done < 1000) {
        const Rational alpha = test_support::small_rational(rng, 1000, 100, false);
        const Rational beta = test_support::small_rational(rng, 10000, 1000);
        const std::uint64_t n = 1 + rng() % 64;
        const unsigned long p = primes[rng() % 25];
        if (power_equals(alpha, beta, n)) continue;
        const auto poly = distance_polygon(alpha, beta, n, Integer(p));
        if (poly.degree() != n || poly.slope_sum() != power_difference_valuation(alpha, beta, n, Integer(p)))
            ++slope_failures;
        ++done;
    }
    std::size_t quad_failures = 0, quad_done = 0;
    while (quad_done < 200) {
        const Rational alpha = test_support::small_rational(rng, 200, 20, false);
        const Rational beta = test_support::small_rational(rng, 2000, 100);
        const unsigned long p = primes[1 + rng() % 24];
        if (alpha * alpha == beta) continue;
        if (distance_profile(alpha, beta, 2, Integer(p)) != test_support::quadratic_profile(alpha, beta, p))
            ++quad_failures;
        ++quad_done;
    }
    return {slope_failures == 0 && quad_failures == 0,
            format("1000 shifted binomials: %zu slope-sum failures; 200 quadratic triples: %zu mismatches",
                   slope_failures, quad_failures)};
}

Outcome clustering()
{
    std::size_t samples = 0, violations = 0;
    double worst = 0;
    for (double eps : {0.5, 0.2}) {
        Json config = {{"cells", Json::array({Json{{"kind", "clustering"},
                                                   {"count", 1000},
                                                   {"seed", eps == 0.5 ? 5 : 6},
                                                   {"max_n", 64},
                                                   {"max_p", 97},
                                                   {"epsilon", eps}}})}};
        const SuiteReport rep = bound_suite(config);
        const auto& cell = rep.cells.at(0);
        samples += static_cast<std::size_t>(cell.implied.at("samples"));
        violations += static_cast<std::size_t>(cell.implied.at("violations"));
        worst = std::max(worst, cell.implied.at("max_close_count"));
    }
    return {samples == 2000 && violations == 0,
            format("%zu samples (eps 0.5 and 0.2), %zu violations, max close count %.0f", samples, violations, worst)};
}

Outcome dirichlet()
{
    bool ok = true;
    std::string detail;
    for (const auto& [alpha, tau] : {std::pair{GaussianRational(Rational(2)), 0.5}, std::pair{GaussianRational(Rational(3, 10)), 0.1}}) {
        const double value = dirichlet_quadrature(alpha, tau, 2048);
        const double target = -4 * M_PI * std::log(tau);
        const double rel = value / target - 1;
        ok = ok && std::abs(rel) < 0.01;
        detail += format("tau %.1f: %.5f vs %.5f (%+.3f%%) ", tau, value, target, 100 * rel);
    }
    return {ok, detail};
}

Outcome jensen()
{
    bool ok = true;
    std::string detail;
    for (const char* a : {"1/2", "3/5+4/5i", "2"}) {
        const double value = jensen_circle_quadrature(GaussianRational::parse(a), std::uint64_t(1) << 20);
        ok = ok && std::abs(value) < 1e-6;
        detail += format("alpha %s: %.2e ", a, value);
    }
    return {ok, detail};
}

Outcome discrepancy_decay()
{
    const Json suite = load_json("bound_suite.json");
    const Json baseline = load_json("calibration_baseline.json");
    Json cells = Json::array();
    for (const auto& cell : suite.at("cells"))
        if (cell.at("kind") == "discrepancy") cells.push_back(cell);
    const SuiteReport rep = bound_suite(Json{{"cells", cells}});
    bool ok = rep.cells.size() == 3;
    std::string detail;
    for (const auto& cell : rep.cells) {
        const auto& frozen = baseline.at("discrepancy").at(cell.label);
        const double base = cell.implied.at("baseline");
        const double frozen_base = frozen.at("baseline").get<double>();
        const bool regression = std::abs(base - frozen_base) <= 1e-9 * std::abs(frozen_base);
        ok = ok && cell.pass && regression;
        detail += format("%s: max ratio %.3f (limit %.1f)%s; ", cell.label.c_str(),
                         cell.implied.at("max_ratio_to_baseline"), cell.rows.front().rhs / base,
                         regression ? "" : " BASELINE DRIFT");
    }
    return {ok, detail};
}

Outcome census_finiteness()
{
    const CensusReport plain = s_integral_census(Rational(3), Rational(2), 2, {Place::infinity()}, 12);
    const CensusReport with7 =
        s_integral_census(Rational(3), Rational(2), 2, {Place::infinity(), Place::finite(7)}, 12);
    const auto& d1 = plain.depths.at(1).classes;
    const bool witness = d1.size() == 1 && !d1[0].verdict && d1[0].witnesses.size() == 1 &&
                         d1[0].witnesses[0].group.modulus == 7 && d1[0].witnesses[0].valuation == 1;
    const auto& e1 = with7.depths.at(1).classes;
    const bool integral7 = e1.size() == 1 && e1[0].verdict;
    const bool profile =
        distance_profile(Rational(3), Rational(2), 2, Integer(7)) == std::vector<Rational>{Rational(1), Rational(0)};
    const bool stable = plain.stabilization_depth <= 4 && with7.stabilization_depth <= 4;
    return {witness && integral7 && profile && stable,
            format("S={inf}: stabilizes at %u, depth-1 witness (7, 1) %s; S={inf,7}: stabilizes at %u, depth-1 %s; "
                   "p=7 profile {1,0} %s",
                   plain.stabilization_depth, witness ? "ok" : "MISMATCH", with7.stabilization_depth,
                   integral7 ? "integral" : "NOT integral", profile ? "ok" : "MISMATCH")};
}

Outcome uniform_bound()
{
    const Json suite = load_json("bound_suite.json");
    Json cells = Json::array();
    for (const auto& cell : suite.at("cells"))
        if (cell.at("kind") == "census") cells.push_back(cell);
    const SuiteReport rep = bound_suite(Json{{"cells", cells}});
    std::size_t failing = 0, late_max = 0, above = 0, exceptional_over = 0, errors = 0;
    double global_c = 0;
    for (const auto& cell : rep.cells) {
        if (!cell.message.empty() && !cell.implied.count("C")) {
            ++errors;
            ++failing;
            continue;
        }
        if (!cell.pass) ++failing;
        if (cell.implied.at("max_depth_attained") > 3) ++late_max;
        above += static_cast<std::size_t>(cell.implied.at("integral_above_early_max"));
        if (cell.implied.at("exceptional") > cell.implied.at("s_fin")) ++exceptional_over;
        global_c = std::max(global_c, cell.implied.at("C"));
    }
    const bool ok = rep.cells.size() == 20 && failing == 0 && late_max == 0 && above == 0 && exceptional_over == 0;
    return {ok, format("%zu configs to depth 12: max integral class size %.0f, %zu attain it after depth 3, %zu larger "
                       "integral classes, %zu configs with exceptional > |S_fin|, %zu errors",
                       rep.cells.size(), global_c, late_max, above, exceptional_over, errors)};
}

}  // namespace

int main(int argc, char** argv)
{
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[++i]);
        else if (std::strcmp(argv[i], "--config-dir") == 0 && i + 1 < argc) config_dir = argv[++i];
    }
    const std::vector<Criterion> criteria = {
        {1, "exact product formula", 5, product_formula},
        {2, "exact AZ-pairing identity", 60, az_identity},
        {3, "factorization oracle equivalence", 120, factor_oracle},
        {4, "Newton-polygon slope sums and quadratic profiles", 10, slope_sums},
        {5, "p-adic clustering bounds", 0, clustering},
        {6, "Dirichlet-form quadrature", 30, dirichlet},
        {7, "Jensen equilibrium integrals", 0, jensen},
        {8, "discrepancy decay shape", 0, discrepancy_decay},
        {9, "finiteness census", 60, census_finiteness},
        {10, "uniform bound census grid", 0, uniform_bound},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        if (only != 0 && c.id != only) continue;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.time_limit == 0 || secs < c.time_limit;
        const bool pass = out.pass && in_time;
        if (!pass) ++failures;
        std::string limit = c.time_limit > 0 ? format(", limit %.0f s", c.time_limit) : "";
        std::printf("%s [%d] %s: %s (%.2f s%s%s)\n", pass ? "PASS" : "FAIL", c.id, c.title, out.detail.c_str(), secs,
                    limit.c_str(), in_time ? "" : ", TOO SLOW");
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
