#include "orbit_integra/harness.hpp"

#include <cmath>
#include <random>

#include "orbit_integra/errors.hpp"
#include "orbit_integra/padic_geometry.hpp"
#include "orbit_integra/parallel.hpp"

namespace orbit_integra {

namespace {

std::uint64_t level_size(unsigned d, unsigned depth)
{
    if (d < 2) raise(ErrorKind::Input, "degree d must be >= 2");
    const std::uint64_t n = checked_power(d, depth);
    if (n == 0) raise(ErrorKind::Resource, "depth " + std::to_string(depth) + " exceeds the 2^20 level ceiling");
    return n;
}

Rational rational_power(const Rational& x, std::uint64_t n)
{
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), x.get_num().get_mpz_t(), n);
    mpz_pow_ui(out.get_den_mpz_t(), x.get_den().get_mpz_t(), n);
    return out;
}

Complex complex_power(Complex base, std::uint64_t n)
{
    const long prec = base.precision();
    Complex out(Real(1.0, prec), Real(prec));
    while (n) {
        if (n & 1) out *= base;
        base *= base;
        n >>= 1;
    }
    return out;
}

bool is_gaussian_unit_root(const GaussianRational& a)
{
    if (a.re == 0 && a.im == 0) return true;
    const bool re_unit = abs(a.re) == 1 && a.im == 0;
    const bool im_unit = a.re == 0 && abs(a.im) == 1;
    return re_unit || im_unit;
}

// log|alpha^n - beta| at infinity, numerically.
Real log_resultant(const GaussianRational& alpha, const Rational& beta, std::uint64_t n, long work)
{
    if (alpha.is_rational()) {
        const Rational diff = rational_power(alpha.re, n) - beta;
        if (diff == 0) raise(ErrorKind::Degenerate, "alpha^n = beta");
        return log(abs(Real(diff, work)));
    }
    const long bits = work + 2 * static_cast<long>(std::log2(static_cast<double>(n)) + 1) + 32;
    Complex p = complex_power(alpha.embed(bits), n);
    p.re -= Real(beta, bits);
    if (mpfr_zero_p(p.re.get()) && mpfr_zero_p(p.im.get())) raise(ErrorKind::Degenerate, "alpha^n = beta");
    return log_abs(p);
}

const nlohmann::json& field(const nlohmann::json& cell, const char* name)
{
    if (!cell.contains(name)) raise(ErrorKind::Input, std::string("cell is missing \"") + name + "\"");
    return cell.at(name);
}

std::string as_text(const nlohmann::json& j)
{
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    raise(ErrorKind::Input, "expected a rational as string or integer, got " + j.dump());
}

Rational rational_field(const nlohmann::json& cell, const char* name) { return parse_rational(as_text(field(cell, name))); }

GaussianRational gaussian_field(const nlohmann::json& cell, const char* name)
{
    return GaussianRational::parse(as_text(field(cell, name)));
}

double number_or(const nlohmann::json& cell, const char* name, double fallback)
{
    return cell.contains(name) ? cell.at(name).get<double>() : fallback;
}

std::pair<unsigned, unsigned> depth_range(const nlohmann::json& cell)
{
    const auto& r = field(cell, "depths");
    if (!r.is_array() || r.size() != 2) raise(ErrorKind::Input, "\"depths\" must be [first, last]");
    const unsigned lo = r[0].get<unsigned>(), hi = r[1].get<unsigned>();
    if (lo > hi) raise(ErrorKind::Input, "\"depths\" must be increasing");
    return {lo, hi};
}

std::vector<Place> places_field(const nlohmann::json& cell)
{
    std::vector<Place> S{Place::infinity()};
    if (cell.contains("S"))
        for (const auto& p : cell.at("S")) {
            Place v = Place::parse(as_text(p));
            if (v.is_finite()) S.push_back(v);
        }
    return S;
}

double hs_of(const Rational& beta, std::uint64_t n) { return weil_height(beta).to_double() / static_cast<double>(n); }

void run_az_rate(const nlohmann::json& cell, CellReport& out)
{
    const Rational alpha = rational_field(cell, "alpha"), beta = rational_field(cell, "beta");
    const unsigned d = cell.value("d", 2u);
    const auto [lo, hi] = depth_range(cell);
    const double c = number_or(cell, "constant", 1.0);
    PairingOptions opts;
    opts.direct_archimedean = false;
    opts.first_depth = lo;
    const auto curve = az_pairing_curve(alpha, beta, d, hi, opts);
    const double h_alpha = weil_height(alpha).to_double();
    double implied = 0;
    out.pass = true;
    for (unsigned m = lo; m <= hi; ++m) {
        const auto& rec = curve[m - lo];
        SuiteRow row{m, rec.n, "all", std::abs(rec.mean_numeric - h_alpha), az_rate_bound(static_cast<double>(rec.n), c),
                     false};
        row.pass = rec.identity_holds && row.lhs <= row.rhs;
        implied = std::max(implied, row.lhs / az_rate_bound(static_cast<double>(rec.n), 1.0));
        out.pass = out.pass && row.pass;
        out.rows.push_back(row);
    }
    out.implied["C_AZ"] = implied;
}

void run_discrepancy(const nlohmann::json& cell, CellReport& out)
{
    const GaussianRational alpha = gaussian_field(cell, "alpha");
    const Rational beta = rational_field(cell, "beta");
    const unsigned d = cell.value("d", 2u);
    const auto [lo, hi] = depth_range(cell);
    const Place v = Place::parse(cell.value("place", std::string("inf")));
    const double factor = number_or(cell, "factor", 4.0);
    const bool require_monotone = cell.value("require_monotone", false);
    const long prec = cell.value("precision", kDefaultPrecision);

    std::vector<double> values(hi - lo + 1);
    parallel_for(values.size(), [&](std::size_t i) {
        values[i] = discrepancy(alpha, beta, d, lo + static_cast<unsigned>(i), v, prec);
    });
    auto normalized = [&](std::size_t i) {
        const double n = static_cast<double>(level_size(d, lo + static_cast<unsigned>(i)));
        return n > 1 ? values[i] * std::sqrt(n / std::log(n)) : values[i];
    };
    const double baseline = normalized(0);
    bool monotone = true;
    out.pass = true;
    double implied = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const unsigned m = lo + static_cast<unsigned>(i);
        SuiteRow row{m, level_size(d, m), v.to_string(), normalized(i), factor * baseline, false};
        row.pass = values[i] >= 0 && row.lhs <= row.rhs;
        if (i > 0 && !(values[i] < values[i - 1])) monotone = false;
        if (baseline > 0) implied = std::max(implied, row.lhs / baseline);
        out.pass = out.pass && row.pass;
        out.rows.push_back(row);
    }
    out.implied["baseline"] = baseline;
    out.implied["max_ratio_to_baseline"] = implied;
    out.implied["monotone"] = monotone ? 1 : 0;
    if (require_monotone && !monotone) {
        out.pass = false;
        out.message = "D(n) is not strictly decreasing";
    }
}

void run_truncated(const nlohmann::json& cell, CellReport& out)
{
    const GaussianRational alpha = gaussian_field(cell, "alpha");
    const Rational beta = rational_field(cell, "beta");
    const unsigned d = cell.value("d", 2u);
    const auto [lo, hi] = depth_range(cell);
    const Place v = Place::parse(cell.value("place", std::string("inf")));
    const double c3 = number_or(cell, "C3", 1.0);
    out.pass = true;
    double implied = 0;
    for (unsigned m = lo; m <= hi; ++m) {
        const std::uint64_t n = level_size(d, m);
        const double nd = static_cast<double>(n);
        SuiteRow row{m, n, v.to_string(), discrepancy(alpha, beta, d, m, v), 0, false};
        row.rhs = truncated_discrepancy_bound(nd, hs_of(beta, n), c3);
        row.pass = row.lhs <= row.rhs;
        implied = std::max(implied, row.lhs / truncated_discrepancy_bound(nd, hs_of(beta, n), 1.0));
        out.pass = out.pass && row.pass;
        out.rows.push_back(row);
    }
    out.implied["C3"] = implied;
}

void run_equidistribution(const nlohmann::json& cell, CellReport& out)
{
    const GaussianRational alpha = gaussian_field(cell, "alpha");
    const Rational beta = rational_field(cell, "beta");
    const unsigned d = cell.value("d", 2u);
    const auto [lo, hi] = depth_range(cell);
    const double c7 = number_or(cell, "C7", 1.0), a = number_or(cell, "A", 1.0);
    const double delta = number_or(cell, "delta", 0.25), kappa = number_or(cell, "kappa", 0.2);
    const double h_alpha = gaussian_height(alpha).to_double();
    const double big_d = gaussian_degree(alpha);
    out.pass = true;
    double implied = 0;
    std::size_t hypothesis_failures = 0;
    for (unsigned m = lo; m <= hi; ++m) {
        const std::uint64_t n = level_size(d, m);
        const double nd = static_cast<double>(n), hs = hs_of(beta, n);
        const ClosenessRecord close = archimedean_closeness(alpha, beta, d, m, 0.5);
        const bool hypothesis =
            close.max_log_inv_distance < a * big_d * big_d * big_d * (h_alpha + hs + 1) * std::pow(nd, 0.5 - delta);
        if (!hypothesis) ++hypothesis_failures;
        SuiteRow row{m, n, "inf", discrepancy(alpha, beta, d, m, Place::infinity()), 0, false};
        row.rhs = n > 1 ? log_equidistribution_bound(nd, h_alpha, hs, c7, a, delta) : 0;
        row.pass = n == 1 || !hypothesis || row.lhs <= row.rhs;
        if (n > 1) implied = std::max(implied, row.lhs / log_equidistribution_bound(nd, h_alpha, hs, 1.0, a, delta));
        out.pass = out.pass && row.pass;
        out.rows.push_back(row);
    }
    out.implied["C7"] = implied;
    out.implied["hypothesis_failures"] = static_cast<double>(hypothesis_failures);
    out.implied["kappa_below_quarter"] = kappa < 0.25 ? 1 : 0;
    out.implied["delta_below_half"] = delta < 0.5 ? 1 : 0;
}

void run_closeness(const nlohmann::json& cell, CellReport& out)
{
    const GaussianRational alpha = gaussian_field(cell, "alpha");
    const Rational beta = rational_field(cell, "beta");
    const unsigned d = cell.value("d", 2u);
    const auto [lo, hi] = depth_range(cell);
    const double eps = number_or(cell, "epsilon", 0.5), c = number_or(cell, "constant", 1.0);
    out.pass = true;
    double implied = 0;
    for (unsigned m = lo; m <= hi; ++m) {
        const ClosenessRecord r = archimedean_closeness(alpha, beta, d, m, eps);
        SuiteRow row{m, r.n, "inf", r.max_log_inv_distance, c * r.scale, false};
        row.pass = row.lhs < row.rhs;
        implied = std::max(implied, r.ratio);
        out.pass = out.pass && row.pass;
        out.rows.push_back(row);
    }
    out.implied["C_eps"] = implied;
}

void run_clustering(const nlohmann::json& cell, CellReport& out)
{
    const std::size_t count = cell.value("count", std::size_t(1000));
    const std::uint64_t seed = cell.value("seed", std::uint64_t(1));
    const std::uint64_t max_n = cell.value("max_n", std::uint64_t(64));
    const unsigned max_p = cell.value("max_p", 97u);
    const double eps = number_or(cell, "epsilon", 0.5);
    std::vector<unsigned long> primes;
    for (unsigned long q = 2; q <= max_p; ++q)
        if (is_prime(Integer(q))) primes.push_back(q);
    if (primes.empty()) raise(ErrorKind::Input, "max_p leaves no primes");
    std::mt19937_64 rng(seed);
    auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    std::size_t violations = 0, evaluated = 0;
    double worst = 0;
    while (evaluated < count) {
        const unsigned long p = primes[static_cast<std::size_t>(pick(0, static_cast<long>(primes.size()) - 1))];
        // Powers of p in numerators and denominators exercise every valuation case.
        auto random_rational = [&](bool nonzero) {
            for (;;) {
                Integer num = pick(-60, 60), den = pick(1, 12);
                const long e = pick(-2, 2);
                Integer pe;
                mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(std::labs(e)));
                if (e > 0) num *= pe;
                if (e < 0) den *= pe;
                Rational x(num, den);
                x.canonicalize();
                if (!nonzero || x != 0) return x;
            }
        };
        const Rational alpha = random_rational(false), beta = random_rational(true);
        const std::uint64_t n = static_cast<std::uint64_t>(pick(1, static_cast<long>(max_n)));
        if (power_equals(alpha, beta, n)) continue;
        const ClusteringSample s = clustering_check(alpha, beta, n, Integer(p), eps);
        ++evaluated;
        worst = std::max(worst, static_cast<double>(s.close_pairs));
        if (!s.ok) {
            ++violations;
            if (out.rows.size() < 20)
                out.rows.push_back({0, n, std::to_string(p), static_cast<double>(s.close_pairs), 1, false});
        }
    }
    out.pass = violations == 0;
    out.implied["samples"] = static_cast<double>(evaluated);
    out.implied["violations"] = static_cast<double>(violations);
    out.implied["max_close_count"] = worst;
}

void run_census(const nlohmann::json& cell, CellReport& out)
{
    const Rational alpha = rational_field(cell, "alpha"), beta = rational_field(cell, "beta");
    const unsigned d = cell.value("d", 2u);
    const unsigned max_depth = cell.value("max_depth", 8u);
    const unsigned max_stabilization = cell.value("max_stabilization", max_depth);
    CensusOptions opts;
    opts.large_class_threshold = cell.value("threshold", std::size_t(2));
    opts.early_window = cell.value("early_window", 3u);
    const CensusReport r = s_integral_census(alpha, beta, d, places_field(cell), max_depth, opts);
    const std::size_t above = r.integral_above_early_max;
    for (const auto& depth : r.depths) {
        std::size_t integral = 0;
        for (const auto& c : depth.classes) integral += c.verdict ? 1 : 0;
        out.rows.push_back({depth.depth, depth.n, "S", static_cast<double>(integral),
                            static_cast<double>(depth.classes.size()), true});
    }
    out.pass = above == 0 && r.exceptional_count <= r.s_fin && r.stabilization_depth <= max_stabilization;
    out.implied["C"] = static_cast<double>(r.max_integral_size);
    out.implied["max_depth_attained"] = r.max_integral_depth;
    out.implied["integral_above_early_max"] = static_cast<double>(above);
    out.implied["exceptional"] = static_cast<double>(r.exceptional_count);
    out.implied["s_fin"] = static_cast<double>(r.s_fin);
    out.implied["stabilization_depth"] = r.stabilization_depth;
}

}  // namespace

std::vector<DepthRecord> az_pairing_curve(const Rational& alpha, const Rational& beta, unsigned d, unsigned max_depth,
                                          const PairingOptions& options)
{
    if (alpha == 0) raise(ErrorKind::Precondition, "alpha must be nonzero");
    if (beta == 0) raise(ErrorKind::Input, "beta must be nonzero");
    const LogValue h_alpha = weil_height(alpha), h_beta = weil_height(beta);
    std::vector<DepthRecord> out;
    for (unsigned m = options.first_depth; m <= max_depth; ++m) {
        const std::uint64_t n = level_size(d, m);
        if (power_equals(alpha, beta, n))
            raise(ErrorKind::Degenerate, "alpha^n = beta at depth " + std::to_string(m));
        DepthRecord rec;
        rec.depth = m;
        rec.n = n;
        const Rational nq{Integer(n)};
        const Rational diff = rational_power(alpha, n) - beta;

        PlaceTerm inf;
        inf.place.archimedean = true;
        inf.lambda_sum = lambda_level_sum(alpha, beta, n, Place::infinity());
        inf.log_resultant = log_abs(diff, Place::infinity());
        rec.places.push_back(std::move(inf));

        const CandidatePrimes cands = candidate_primes(alpha, beta, n);
        for (const auto& p : cands.primes) {
            const Place v = Place::finite(p);
            PlaceTerm t;
            t.place.group = {p, true};
            t.lambda_sum = lambda_level_sum(alpha, beta, n, v);
            t.log_resultant = log_abs(diff, v);
            rec.places.push_back(std::move(t));
        }
        for (const auto& c : cands.unfactored) {
            Integer rest = diff.get_num();
            const unsigned long e = strip_factor(rest, c);
            PlaceTerm t;
            t.place.group = {c, false};
            t.lambda_sum = LogValue::log_of(c, Rational(Integer(e)));
            t.log_resultant = -t.lambda_sum;
            rec.places.push_back(std::move(t));
        }

        LogValue total, resultant;
        for (auto& t : rec.places) {
            t.place.value = t.lambda_sum;
            total += t.lambda_sum;
            resultant += t.log_resultant;
            rec.discrepancy[t.place.label()] = std::abs((t.lambda_sum / nq).to_double());
        }
        rec.mean_lambda = total / nq;
        rec.expected = h_alpha + h_beta / nq;
        rec.identity_holds = rec.mean_lambda == rec.expected;
        rec.resultant_vanishes = resultant.is_zero();
        rec.mean_numeric = rec.mean_lambda.numeric(options.precision).to_double();
        rec.archimedean_exact = rec.places.front().lambda_sum.numeric(options.precision).to_double();

        if (options.direct_archimedean && n <= options.direct_limit) {
            const OrbitLevel level(beta, d, m);
            std::vector<Real> values(n, Real(options.precision));
            parallel_for(n, [&](std::size_t j) {
                values[j] = lambda_local(GaussianRational(alpha), level.point(j), Place::infinity(), options.precision)
                                .numeric;
            });
            rec.archimedean_direct =
                pairwise_reduce(std::move(values), [](const Real& a, const Real& b) { return a + b; },
                                Real(0.0, options.precision))
                    .to_double();
        }
        if (options.galois_sizes) rec.orbit_sizes = galois_orbits(OrbitLevel(beta, d, m), options.precision).sizes();
        out.push_back(std::move(rec));
    }
    return out;
}

double discrepancy(const GaussianRational& alpha, const Rational& beta, unsigned d, unsigned depth, const Place& v,
                   long precision)
{
    if (beta == 0) raise(ErrorKind::Input, "beta must be nonzero");
    const std::uint64_t n = level_size(d, depth);
    const Rational nq{Integer(n)};
    if (v.is_finite()) {
        const Rational a = alpha.is_rational() ? alpha.re : (raise(ErrorKind::Unsupported,
                                                                    "finite places need a rational alpha"),
                                                              Rational());
        return std::abs((lambda_level_sum(a, beta, n, v) / nq).to_double());
    }
    const long work = precision + 32;
    const Real mean = log_plus_abs(beta, v).numeric(work) / Real(nq, work) + log_plus_gaussian(alpha).numeric(work) -
                      log_resultant(alpha, beta, n, work) / Real(nq, work);
    // The equilibrium integral is 0 at every place.
    return std::abs(mean.to_double());
}

LogValue gaussian_height(const GaussianRational& alpha)
{
    if (alpha.is_rational()) return weil_height(alpha.re);
    // Minimal polynomial x^2 - 2a x + N, scaled to a primitive integer polynomial.
    const Rational two_a = 2 * alpha.re, norm = alpha.norm();
    Integer l;
    mpz_lcm(l.get_mpz_t(), two_a.get_den().get_mpz_t(), norm.get_den().get_mpz_t());
    const Integer c1 = two_a.get_num() * (l / two_a.get_den());
    const Integer c0 = norm.get_num() * (l / norm.get_den());
    Integer g = gcd(gcd(l, c1), c0);
    const Integer lc = l / g;
    return LogValue::log_of(lc, Rational(1, 2)) + log_plus_gaussian(alpha);
}

unsigned gaussian_degree(const GaussianRational& alpha) { return alpha.is_rational() ? 1 : 2; }

ClosenessRecord archimedean_closeness(const GaussianRational& alpha, const Rational& beta, unsigned d, unsigned depth,
                                      double epsilon, long precision)
{
    if (is_gaussian_unit_root(alpha))
        raise(ErrorKind::Precondition, "alpha = " + alpha.to_string() + " is preperiodic for z^d");
    const OrbitLevel level(beta, d, depth);
    const std::uint64_t n = level.size();
    std::vector<double> inv(n);
    const long work = precision + 16;
    const Complex a = alpha.embed(work);
    parallel_for(n, [&](std::size_t j) {
        const Real dist = abs(embed(level.point(j), work) - a);
        if (mpfr_zero_p(dist.get())) raise(ErrorKind::Pole, "alpha is a point of the level");
        inv[j] = -log(dist).to_double();
    });
    ClosenessRecord r;
    r.depth = depth;
    r.n = n;
    r.closest_index = static_cast<std::uint64_t>(std::max_element(inv.begin(), inv.end()) - inv.begin());
    r.max_log_inv_distance = inv[r.closest_index];
    r.h_alpha = gaussian_height(alpha).to_double();
    r.h_s = hs_of(beta, n);
    r.field_degree = gaussian_degree(alpha);
    const double dd = r.field_degree;
    r.scale = dd * dd * dd * (r.h_alpha + r.h_s + 1) * std::pow(static_cast<double>(n), epsilon);
    r.ratio = r.max_log_inv_distance / r.scale;
    return r;
}

CensusReport s_integral_census(const Rational& alpha, const Rational& beta, unsigned d, const std::vector<Place>& S,
                               unsigned max_depth, const CensusOptions& options)
{
    if (alpha == 0 || abs(alpha) == 1)
        raise(ErrorKind::Precondition, "alpha = " + format_rational(alpha) + " is preperiodic for z^d");
    if (beta == 0) raise(ErrorKind::Input, "beta must be nonzero");
    CensusReport r;
    r.alpha = alpha;
    r.beta = beta;
    r.d = d;
    r.S = S;
    std::sort(r.S.begin(), r.S.end());
    r.S.erase(std::unique(r.S.begin(), r.S.end()), r.S.end());
    r.max_depth = max_depth;
    r.large_class_threshold = options.large_class_threshold;
    r.early_window = options.early_window;
    for (const auto& v : r.S) r.s_fin += v.is_finite() ? 1 : 0;

    for (unsigned m = 0; m <= max_depth; ++m) {
        const OrbitLevel level(beta, d, m);
        const GaloisOrbitPartition part = galois_orbits(level, options.precision);
        CensusDepth cd;
        cd.depth = m;
        cd.n = level.size();
        cd.classes.resize(part.classes.size());
        parallel_for(part.classes.size(), [&](std::size_t i) {
            cd.classes[i] = is_s_integral(part.classes[i], i, beta, level.size(), alpha, r.S);
        });
        for (const auto& c : cd.classes) {
            if (!c.verdict) continue;
            r.last_integral_depth = static_cast<int>(m);
            if (c.class_size > r.max_integral_size) {
                r.max_integral_size = c.class_size;
                r.max_integral_depth = static_cast<int>(m);
            }
            if (c.class_size > r.large_class_threshold) ++r.exceptional_count;
        }
        r.depths.push_back(std::move(cd));
    }
    r.stabilization_depth = static_cast<unsigned>(r.last_integral_depth + 1);
    for (const auto& depth : r.depths)
        for (const auto& c : depth.classes)
            if (c.verdict && depth.depth <= r.early_window) r.early_max_size = std::max(r.early_max_size, c.class_size);
    for (const auto& depth : r.depths)
        for (const auto& c : depth.classes)
            if (c.verdict && c.class_size > r.early_max_size) ++r.integral_above_early_max;
    return r;
}

ClusteringSample clustering_check(const Rational& alpha, const Rational& beta, std::uint64_t n, const Integer& p,
                                  double epsilon)
{
    if (!(epsilon > 0)) raise(ErrorKind::Input, "epsilon must be positive");
    ClusteringSample s;
    s.alpha = alpha;
    s.beta = beta;
    s.n = n;
    s.p = p;
    s.epsilon = epsilon;
    const NewtonPolygon poly = distance_polygon(alpha, beta, n, p);
    const Rational base = level_valuation(beta, n, p);
    s.close_pairs = cluster_count(poly, base + Rational(Integer(1), Integer(p - 1)));
    const double log_p = std::log(p.get_d());
    const double t = base.get_d() + epsilon / log_p;
    for (const auto& seg : poly.segments)
        if (seg.root_valuation.get_d() > t) s.clustered += seg.multiplicity;
    s.clustered_bound = p.get_d() * log_p / epsilon + 1;
    s.ok = s.close_pairs <= 1 && static_cast<double>(s.clustered) <= s.clustered_bound;
    return s;
}

SuiteReport bound_suite(const nlohmann::json& config)
{
    if (!config.contains("cells") || !config.at("cells").is_array())
        raise(ErrorKind::Input, "suite config needs a \"cells\" array");
    const auto& cells = config.at("cells");
    SuiteReport report;
    report.cells.resize(cells.size());
    // Validate kinds up front so malformed configs fail as input errors.
    static const std::vector<std::string> kinds{"az_rate",   "discrepancy", "truncated", "equidistribution",
                                                 "closeness", "clustering",  "census"};
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const std::string kind = field(cells[i], "kind").get<std::string>();
        if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end())
            raise(ErrorKind::Input, "unknown cell kind \"" + kind + "\"");
    }
    parallel_for(cells.size(), [&](std::size_t i) {
        const auto& cell = cells[i];
        CellReport& out = report.cells[i];
        out.index = i;
        out.kind = cell.at("kind").get<std::string>();
        out.label = cell.value("label", out.kind + "#" + std::to_string(i));
        try {
            if (out.kind == "az_rate") run_az_rate(cell, out);
            else if (out.kind == "discrepancy") run_discrepancy(cell, out);
            else if (out.kind == "truncated") run_truncated(cell, out);
            else if (out.kind == "equidistribution") run_equidistribution(cell, out);
            else if (out.kind == "closeness") run_closeness(cell, out);
            else if (out.kind == "clustering") run_clustering(cell, out);
            else run_census(cell, out);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Input) throw;
            out.pass = false;
            out.message = e.what();
        }
    });
    report.all_pass = std::all_of(report.cells.begin(), report.cells.end(), [](const CellReport& c) { return c.pass; });
    return report;
}

}  // namespace orbit_integra
