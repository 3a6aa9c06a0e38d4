#include "orbit_integra/local_heights.hpp"

#include <cmath>
#include <numbers>

#include "orbit_integra/errors.hpp"
#include "orbit_integra/padic_geometry.hpp"
#include "orbit_integra/parallel.hpp"

namespace orbit_integra {

namespace {

void require_tau(double tau, bool allow_one)
{
    if (!(tau > 0) || tau > 1 || (!allow_one && tau == 1))
        raise(ErrorKind::Input, "tau must lie in (0, 1" + std::string(allow_one ? "]" : ")") + ", got " +
                                    std::to_string(tau));
}

Rational require_rational(const GaussianRational& alpha, const char* what)
{
    if (!alpha.is_rational())
        raise(ErrorKind::Unsupported, std::string(what) + " needs a rational alpha at finite places");
    return alpha.re;
}

// Exact test for z == alpha with rational alpha.
bool coincides(const Rational& alpha, const RadicalPoint& z)
{
    if (!power_equals(alpha, z.beta, z.n)) return false;
    return z.phase() == (alpha > 0 ? Rational(0) : Rational(1, 2));
}

// v_p(z - alpha) when all roots of the level share it.
Rational determined_valuation(const Rational& alpha, const RadicalPoint& z, const Integer& p)
{
    const NewtonPolygon poly = distance_polygon(alpha, z.beta, z.n, p);
    if (poly.segments.size() != 1)
        raise(ErrorKind::Unsupported, "v_" + p.get_str() +
                                          "(z - alpha) differs across the level; use the class aggregate");
    return poly.segments.front().root_valuation;
}

LocalHeightValue from_exact(const Place& v, LogValue value, long precision, std::string derivation)
{
    LocalHeightValue out;
    out.place = v;
    out.exact = true;
    out.numeric = value.numeric(precision);
    out.value = std::move(value);
    out.precision = precision;
    out.derivation = std::move(derivation);
    return out;
}

Real distance_to(const GaussianRational& alpha, const RadicalPoint& z, long precision)
{
    return abs(embed(z, precision) - alpha.embed(precision));
}

}  // namespace

Complex GaussianRational::embed(long precision) const { return Complex(Real(re, precision), Real(im, precision)); }

GaussianRational GaussianRational::parse(const std::string& raw)
{
    std::string text;
    for (char c : raw)
        if (c != ' ' && c != '*') text.push_back(c);
    if (text.empty()) raise(ErrorKind::Input, "empty number");
    if (text.back() != 'i') return GaussianRational(parse_rational(text));
    text.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t k = text.size(); k-- > 1;)
        if (text[k] == '+' || text[k] == '-') {
            split = k;
            break;
        }
    auto imag = [&](std::string s) {
        if (s.empty() || s == "+") return Rational(1);
        if (s == "-") return Rational(-1);
        if (s.front() == '+') s.erase(0, 1);
        return parse_rational(s);
    };
    if (split == std::string::npos) return GaussianRational(Rational(0), imag(text));
    return GaussianRational(parse_rational(text.substr(0, split)), imag(text.substr(split)));
}

std::string GaussianRational::to_string() const
{
    if (im == 0) return format_rational(re);
    return format_rational(re) + (im < 0 ? "-" : "+") + format_rational(abs(im)) + "i";
}

Rational chordal_distance(const ProjectivePoint& a, const ProjectivePoint& b, const Place& p)
{
    if (p.is_infinite()) raise(ErrorKind::Input, "exact chordal distance is defined at finite places");
    if ((a.x == 0 && a.y == 0) || (b.x == 0 && b.y == 0)) raise(ErrorKind::Input, "(0 : 0) is not a point of P^1");
    auto abs_p = [&](const Rational& x) -> Rational {
        if (x == 0) return 0;
        const long v = padic_valuation(x, p);
        Integer pw;
        mpz_pow_ui(pw.get_mpz_t(), p.prime().get_mpz_t(), static_cast<unsigned long>(std::labs(v)));
        return v >= 0 ? Rational(Integer(1), pw) : Rational(pw);
    };
    const Rational num = abs_p(a.x * b.y - b.x * a.y);
    return num / (std::max(abs_p(a.x), abs_p(a.y)) * std::max(abs_p(b.x), abs_p(b.y)));
}

Real chordal_distance(const Complex& x1, const Complex& x2, const Complex& y1, const Complex& y2)
{
    auto maxabs = [](const Complex& u, const Complex& w) {
        Real a = abs(u), b = abs(w);
        return a < b ? b : a;
    };
    Real denom = maxabs(x1, x2) * maxabs(y1, y2);
    if (mpfr_zero_p(denom.get())) raise(ErrorKind::Input, "(0 : 0) is not a point of P^1");
    return abs(x1 * y2 - y1 * x2) / denom;
}

LogValue log_plus_radical(const RadicalPoint& z, const Place& v)
{
    if (v.is_infinite()) {
        if (abs(z.beta.get_num()) > z.beta.get_den()) return LogValue::log_abs_of(z.beta) / Rational(Integer(z.n));
        return {};
    }
    const Rational val = level_valuation(z.beta, z.n, v.prime());
    if (val < 0) return LogValue::log_of(v.prime(), -val);
    return {};
}

LogValue log_plus_gaussian(const GaussianRational& alpha)
{
    const Rational n = alpha.norm();
    if (n > 1) return LogValue::log_abs_of(n) / Rational(2);
    return {};
}

LocalHeightValue lambda_local(const GaussianRational& alpha, const RadicalPoint& z, const Place& v, long precision)
{
    if (v.is_finite()) {
        const Rational a = require_rational(alpha, "lambda_local");
        if (coincides(a, z)) raise(ErrorKind::Pole, "lambda_local evaluated at z = alpha");
        const Rational dist = determined_valuation(a, z, v.prime());
        LogValue value = log_plus_radical(z, v) + log_plus_abs(a, v) + LogValue::log_of(v.prime(), dist);
        return from_exact(v, std::move(value), precision, "valuation");
    }
    const long work = precision + 16;
    if (alpha.is_rational() && coincides(alpha.re, z)) raise(ErrorKind::Pole, "lambda_local evaluated at z = alpha");
    Real dist = distance_to(alpha, z, work);
    Real tiny(work);
    mpfr_set_ui_2exp(tiny.get(), 1, -(work - 8), MPFR_RNDN);
    if (dist < tiny) raise(ErrorKind::Pole, "lambda_local evaluated at z = alpha");
    LogValue exact_part = log_plus_radical(z, v) + log_plus_gaussian(alpha);
    LocalHeightValue out;
    out.place = v;
    out.exact = false;
    out.numeric = exact_part.numeric(work) - log(dist);
    out.precision = precision;
    out.derivation = "embedding";
    return out;
}

LogValue lambda_class_sum(const Rational& alpha, const GaloisClass& cls, const Rational& beta, std::uint64_t n,
                          const Place& v)
{
    const Rational value = cls.factor.evaluate(alpha) / Rational(cls.factor.leading());
    if (value == 0) raise(ErrorKind::Pole, "alpha is a root of the class factor");
    const Rational deg(Integer(cls.factor.degree()));
    LogValue out = (log_plus_radical(RadicalPoint{beta, n, 0}, v) + log_plus_abs(alpha, v)) * deg;
    out -= log_abs(value, v);
    return out;
}

LogValue lambda_level_sum(const Rational& alpha, const Rational& beta, std::uint64_t n, const Place& v)
{
    LogValue out = log_plus_abs(beta, v) + log_plus_abs(alpha, v) * Rational(Integer(n));
    if (v.is_finite()) {
        const long val = power_difference_valuation(alpha, beta, n, v.prime());
        out += LogValue::log_of(v.prime(), Rational(val));
        return out;
    }
    if (power_equals(alpha, beta, n)) raise(ErrorKind::Degenerate, "alpha^n = beta");
    Rational power;
    mpz_pow_ui(power.get_num_mpz_t(), alpha.get_num().get_mpz_t(), n);
    mpz_pow_ui(power.get_den_mpz_t(), alpha.get_den().get_mpz_t(), n);
    out -= log_abs(power - beta, v);
    return out;
}

LocalHeightValue lambda_truncated(const GaussianRational& alpha, const RadicalPoint& z, const Place& v, double tau,
                                  long precision)
{
    require_tau(tau, false);
    const long work = precision + 16;
    const Real t(tau, work);
    LocalHeightValue out;
    out.place = v;
    out.exact = false;
    out.precision = precision;
    if (v.is_finite()) {
        const Rational a = require_rational(alpha, "lambda_truncated");
        LogValue base = log_plus_radical(z, v) + log_plus_abs(a, v);
        Real distance(0.0, work);
        if (!coincides(a, z)) {
            const Rational val = determined_valuation(a, z, v.prime());
            distance = exp(-Real(val, work) * log_integer(v.prime(), work));
        }
        out.numeric = base.numeric(work) - log(distance < t ? t : distance);
        out.derivation = "valuation";
        return out;
    }
    Real dist = distance_to(alpha, z, work);
    if (alpha.is_rational() && coincides(alpha.re, z)) dist = Real(0.0, work);
    LogValue base = log_plus_radical(z, v) + log_plus_gaussian(alpha);
    out.numeric = base.numeric(work) - log(dist < t ? t : dist);
    out.derivation = "embedding";
    return out;
}

LocalHeightValue equilibrium_integral(const GaussianRational& alpha, const Place& v)
{
    if (v.is_finite()) {
        require_rational(alpha, "equilibrium_integral");
        // Gauss point: log max(1, |alpha|_p) cancels log+|alpha|_p.
        return from_exact(v, LogValue(), kDefaultPrecision, "gauss-point");
    }
    // Jensen: the circle mean of log|z - alpha| is log+|alpha|.
    return from_exact(v, LogValue(), kDefaultPrecision, "jensen");
}

double jensen_circle_quadrature(const GaussianRational& alpha, std::uint64_t points)
{
    if (points < 2) raise(ErrorKind::Input, "quadrature needs at least 2 points");
    const double ar = alpha.re.get_d(), ai = alpha.im.get_d();
    const double log_plus_alpha = log_plus_gaussian(alpha).to_double();
    constexpr std::uint64_t tile = 4096;
    const std::uint64_t tiles = (points + tile - 1) / tile;
    std::vector<double> sums(tiles, 0.0);
    parallel_for(tiles, [&](std::size_t t) {
        std::vector<double> terms;
        const std::uint64_t lo = t * tile, hi = std::min(points, lo + tile);
        terms.reserve(hi - lo);
        for (std::uint64_t k = lo; k < hi; ++k) {
            const double theta = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(points);
            const double dx = std::cos(theta) - ar, dy = std::sin(theta) - ai;
            const double dist = std::hypot(dx, dy);
            if (dist == 0) raise(ErrorKind::Pole, "alpha is a quadrature node");
            terms.push_back(log_plus_alpha - std::log(dist));
        }
        sums[t] = pairwise_reduce(std::move(terms), std::plus<double>(), 0.0);
    });
    return pairwise_reduce(std::move(sums), std::plus<double>(), 0.0) / static_cast<double>(points);
}

TruncationConstants truncation_constants(double tau, const Place& v)
{
    require_tau(tau, true);
    if (v.is_infinite()) return {1 + 1 / tau, -4 * std::numbers::pi * std::log(tau)};
    return {1, -std::log(tau)};
}

namespace {

// Discrete energy of -log max(tau, |w - a|) on the disc |w - a| <= 1,
// extended by 0 outside the disc.
double chart_energy(double ax, double ay, double tau, unsigned grid)
{
    const double h = 2.0 / grid;
    auto g = [&](unsigned i, unsigned j) {
        const double x = ax - 1 + i * h, y = ay - 1 + j * h;
        return -std::log(std::max(tau, std::min(1.0, std::hypot(x - ax, y - ay))));
    };
    std::vector<double> rows(grid, 0.0);
    parallel_for(grid, [&](std::size_t i) {
        std::vector<double> lo(grid + 1), hi(grid + 1), cells;
        for (unsigned j = 0; j <= grid; ++j) {
            lo[j] = g(static_cast<unsigned>(i), j);
            hi[j] = g(static_cast<unsigned>(i) + 1, j);
        }
        cells.reserve(grid);
        for (unsigned j = 0; j < grid; ++j) {
            const double cx = -1 + (i + 0.5) * h, cy = -1 + (j + 0.5) * h;
            if (cx * cx + cy * cy > 1) continue;
            const double dx0 = hi[j] - lo[j], dx1 = hi[j + 1] - lo[j + 1];
            const double dy0 = lo[j + 1] - lo[j], dy1 = hi[j + 1] - hi[j];
            cells.push_back(0.5 * (dx0 * dx0 + dx1 * dx1 + dy0 * dy0 + dy1 * dy1));
        }
        rows[i] = pairwise_reduce(std::move(cells), std::plus<double>(), 0.0);
    });
    return pairwise_reduce(std::move(rows), std::plus<double>(), 0.0);
}

}  // namespace

double dirichlet_quadrature(const GaussianRational& alpha, double tau, unsigned grid)
{
    require_tau(tau, true);
    if (grid < 256) raise(ErrorKind::Input, "grid resolution must be >= 256");
    const double ar = alpha.re.get_d(), ai = alpha.im.get_d();
    const double modulus = std::hypot(ar, ai);
    if (!(std::abs(modulus - 1) > tau / 2))
        raise(ErrorKind::Precondition, "alpha must stay more than tau/2 away from the chart boundary |z| = 1");
    // Chart coordinates of alpha: z near 0, 1/z near infinity.
    double bx = 0, by = 0;
    if (modulus > 0) {
        const double m2 = modulus * modulus;
        bx = ar / m2;
        by = -ai / m2;
    }
    return chart_energy(ar, ai, tau, grid) + chart_energy(bx, by, tau, grid);
}

double frl_discrepancy_bound(double n, double height, double tau, double c2, const Place& v, double kappa)
{
    if (n < 2) raise(ErrorKind::Input, "orbit size must be >= 2");
    const TruncationConstants k = truncation_constants(tau, v);
    const double inner = 2 * height + c2 * std::log(n) / std::sqrt(n);
    return k.lipschitz / std::pow(n, 1 / kappa) + std::sqrt(std::max(0.0, inner)) * std::sqrt(k.dirichlet);
}

double truncated_discrepancy_bound(double n, double height, double c3)
{
    return c3 * (1 / std::sqrt(n) + std::sqrt(height + std::log(n) / n));
}

double az_rate_bound(double n, double c_az) { return c_az * (1 + std::log(std::sqrt(n))) / std::sqrt(n); }

double log_equidistribution_bound(double n, double h_alpha, double h_s, double c7, double a, double delta)
{
    return c7 / std::pow(n, delta) * std::sqrt(std::log(n)) * a * (h_alpha + h_s + 1);
}

double closeness_bound(double n, double h_alpha, double h_s, double c_eps, unsigned field_degree, double eps)
{
    const double d = field_degree;
    return c_eps * d * d * d * (h_alpha + h_s + 1) * std::pow(n, eps);
}

}  // namespace orbit_integra
