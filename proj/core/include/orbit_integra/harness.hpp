#ifndef ORBIT_INTEGRA_HARNESS_HPP
#define ORBIT_INTEGRA_HARNESS_HPP

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "orbit_integra/integrality.hpp"
#include "orbit_integra/local_heights.hpp"

namespace orbit_integra {

/// One place of a level total: infinity, a prime, or an unsplit cofactor.
struct PlaceTerm {
    PlaceContribution place;
    LogValue lambda_sum;      // sum over the level of lambda_{alpha,v}
    LogValue log_resultant;   // log|alpha^n - beta|_v
};

struct DepthRecord {
    unsigned depth = 0;
    std::uint64_t n = 1;
    std::vector<std::size_t> orbit_sizes;      // filled when requested
    std::vector<PlaceTerm> places;
    LogValue mean_lambda;                      // (1/n) sum_v sum_j lambda_{alpha,v}(z_j)
    LogValue expected;                         // h(alpha) + h(beta)/n
    bool identity_holds = false;
    bool resultant_vanishes = false;           // sum_v log|alpha^n - beta|_v == 0
    double mean_numeric = 0;
    double archimedean_exact = 0;              // numeric value of the exact archimedean level sum
    double archimedean_direct = 0;             // per-root embedding sum (0 when skipped)
    std::map<std::string, double> discrepancy; // place label -> D(n)
};

struct PairingOptions {
    unsigned first_depth = 0;
    bool direct_archimedean = true;  // per-root check, only up to direct_limit points
    std::uint64_t direct_limit = 1 << 12;
    bool galois_sizes = false;
    long precision = kDefaultPrecision;
};

/// Exact mean-lambda identity per depth first_depth..max_depth. Degenerate error naming
/// the depth when alpha^n = beta.
std::vector<DepthRecord> az_pairing_curve(const Rational& alpha, const Rational& beta, unsigned d, unsigned max_depth,
                                          const PairingOptions& options = {});

/// |mean lambda_{alpha,v} - integral|; the archimedean mean uses
/// sum_j log|z_j - alpha| = log|alpha^n - beta| (also for Gaussian alpha).
double discrepancy(const GaussianRational& alpha, const Rational& beta, unsigned d, unsigned depth, const Place& v,
                   long precision = kDefaultPrecision);

/// Absolute height of a Gaussian rational: Weil height when rational,
/// otherwise (1/2) log of the Mahler measure of its minimal polynomial.
LogValue gaussian_height(const GaussianRational& alpha);
/// [Q(alpha):Q], 1 or 2.
unsigned gaussian_degree(const GaussianRational& alpha);

struct ClosenessRecord {
    unsigned depth = 0;
    std::uint64_t n = 1;
    double max_log_inv_distance = 0;  // max_j -log|z_j - alpha|
    std::uint64_t closest_index = 0;
    double h_alpha = 0;
    double h_s = 0;                   // h(beta)/n
    unsigned field_degree = 1;
    double scale = 0;                 // D^3 (h(alpha) + h(s) + 1) n^eps
    double ratio = 0;                 // empirical C_eps
};

/// Precondition error when alpha is 0 or a root of unity.
ClosenessRecord archimedean_closeness(const GaussianRational& alpha, const Rational& beta, unsigned d, unsigned depth,
                                      double epsilon, long precision = kDefaultPrecision);

struct CensusDepth {
    unsigned depth = 0;
    std::uint64_t n = 1;
    std::vector<SIntegralityReport> classes;
};

struct CensusReport {
    Rational alpha, beta;
    unsigned d = 2;
    std::vector<Place> S;
    unsigned max_depth = 0;
    std::size_t large_class_threshold = 2;
    std::vector<CensusDepth> depths;

    std::size_t max_integral_size = 0;     // empirical C of the uniform bound
    int max_integral_depth = -1;           // first depth attaining it, -1 if none
    unsigned early_window = 3;
    std::size_t early_max_size = 0;          // largest integral class at depth <= early_window
    std::size_t integral_above_early_max = 0; // integral classes of any depth larger than that
    std::size_t exceptional_count = 0;     // integral classes larger than the threshold
    std::size_t s_fin = 0;
    int last_integral_depth = -1;
    unsigned stabilization_depth = 0;      // last integral depth + 1
};

struct CensusOptions {
    std::size_t large_class_threshold = 2;
    unsigned early_window = 3;
    long precision = kDefaultPrecision;
};

/// Requires rational alpha not in {0, 1, -1}, beta != 0, infinity in S.
CensusReport s_integral_census(const Rational& alpha, const Rational& beta, unsigned d, const std::vector<Place>& S,
                               unsigned max_depth, const CensusOptions& options = {});

struct ClusteringSample {
    Rational alpha, beta;
    std::uint64_t n = 1;
    Integer p;
    double epsilon = 0.5;
    std::size_t close_pairs = 0;     // count above v_p(beta)/n + 1/(p-1)
    std::size_t clustered = 0;       // count above v_p(beta)/n + epsilon / log p
    double clustered_bound = 0;      // p log p / epsilon + 1
    bool ok = false;
};

ClusteringSample clustering_check(const Rational& alpha, const Rational& beta, std::uint64_t n, const Integer& p,
                                  double epsilon);

struct SuiteRow {
    unsigned depth = 0;
    std::uint64_t n = 0;
    std::string place;
    double lhs = 0;
    double rhs = 0;
    bool pass = false;
};

struct CellReport {
    std::size_t index = 0;
    std::string kind;
    std::string label;
    bool pass = false;
    std::map<std::string, double> implied;
    std::vector<SuiteRow> rows;
    std::string message;
};

struct SuiteReport {
    std::vector<CellReport> cells;
    bool all_pass = false;
};

/// Evaluates each configured cell. Cell kinds: az_rate, discrepancy,
/// truncated, equidistribution, closeness, clustering, census.
/// Failures are reported, not thrown; malformed cells raise Input.
SuiteReport bound_suite(const nlohmann::json& config);

}  // namespace orbit_integra

#endif
