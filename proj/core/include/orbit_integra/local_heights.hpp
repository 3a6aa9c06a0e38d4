#ifndef ORBIT_INTEGRA_LOCAL_HEIGHTS_HPP
#define ORBIT_INTEGRA_LOCAL_HEIGHTS_HPP

#include <string>

#include "orbit_integra/binomial_galois.hpp"
#include "orbit_integra/exact_arith.hpp"
#include "orbit_integra/multiprecision.hpp"
#include "orbit_integra/radical_points.hpp"

namespace orbit_integra {

/// re + i*im with rational parts. Integrality and finite places need im = 0.
struct GaussianRational {
    Rational re = 0;
    Rational im = 0;

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT: implicit by design
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_rational() const { return im == 0; }
    Rational norm() const { return re * re + im * im; }
    Complex embed(long precision) const;
    /// Parses "a/b", or "a/b+c/d*i" style input such as "3/5+4/5i".
    static GaussianRational parse(const std::string& text);
    std::string to_string() const;
};

struct LocalHeightValue {
    Place place = Place::infinity();
    bool exact = false;
    LogValue value;       // when exact
    Real numeric{64};     // always filled
    long precision = 0;   // bits of the numeric field
    std::string derivation;

    double to_double() const { return numeric.to_double(); }
};

/// Point (x : y) of P^1(Q).
struct ProjectivePoint {
    Rational x;
    Rational y = 1;
};

/// Exact chordal distance at a finite place, in [0, 1].
Rational chordal_distance(const ProjectivePoint& a, const ProjectivePoint& b, const Place& p);
/// Archimedean chordal distance |x1 y2 - y1 x2| / (max(|x1|,|x2|) max(|y1|,|y2|)).
Real chordal_distance(const Complex& x1, const Complex& x2, const Complex& y1, const Complex& y2);

/// log+ |z|_v for a radical point, exact: max(0, -v_p(beta)/n) log p or
/// max(0, log|beta|/n).
LogValue log_plus_radical(const RadicalPoint& z, const Place& v);
/// log+ |alpha|_inf = max(0, log|alpha|) for a Gaussian rational (1/2 log of the norm).
LogValue log_plus_gaussian(const GaussianRational& alpha);

/// lambda_{alpha,v}(z) = log+|z|_v + log+|alpha|_v - log|z - alpha|_v.
/// At a finite place the value is returned only when every root of the level
/// has the same distance to alpha (otherwise it is not Galois-determined and
/// ErrorKind::Unsupported is raised; use lambda_class_sum). Pole error at z = alpha.
LocalHeightValue lambda_local(const GaussianRational& alpha, const RadicalPoint& z, const Place& v,
                              long precision = kDefaultPrecision);

/// Sum of lambda_{alpha,p} over one Galois class, exact:
/// deg * (log+|z|_p + log+|alpha|_p) + v_p(f(alpha)/lc f) log p.
LogValue lambda_class_sum(const Rational& alpha, const GaloisClass& cls, const Rational& beta, std::uint64_t n,
                          const Place& v);

/// Sum of lambda_{alpha,v} over the full level x^n = beta, exact at every
/// place: log+|beta|_v + n log+|alpha|_v - log|alpha^n - beta|_v.
LogValue lambda_level_sum(const Rational& alpha, const Rational& beta, std::uint64_t n, const Place& v);

/// log+|z|_v + log+|alpha|_v - log max(tau, |z - alpha|_v), 0 < tau < 1.
LocalHeightValue lambda_truncated(const GaussianRational& alpha, const RadicalPoint& z, const Place& v,
                                  double tau, long precision = kDefaultPrecision);

/// Integral of lambda_{alpha,v} against the equilibrium measure of z^d:
/// 0 at every place (Jensen at infinity, Gauss point at finite places).
LocalHeightValue equilibrium_integral(const GaussianRational& alpha, const Place& v);

/// Mean of lambda_{alpha,inf} over N equispaced points of the unit circle.
/// Tiles are summed in a fixed pairwise order.
double jensen_circle_quadrature(const GaussianRational& alpha, std::uint64_t points);

struct TruncationConstants {
    double lipschitz = 0;
    double dirichlet = 0;
};

/// Archimedean {1 + 1/tau, -4 pi log tau}; finite {1, -log tau}; 0 < tau <= 1.
TruncationConstants truncation_constants(double tau, const Place& v);

/// Two-chart Dirichlet energy of the truncated kernel: in each chart the
/// point alpha is moved to the origin and the discrete energy of
/// -log max(tau, |w|) is summed over the unit disc on a grid x grid mesh.
/// Requires ||alpha| - 1| > tau/2 and grid >= 256.
double dirichlet_quadrature(const GaussianRational& alpha, double tau, unsigned grid);

/// Lip/N^{1/kappa} + (2 h + C2 log N / sqrt N)^{1/2} <f,f>^{1/2} with the
/// constants of lambda_{tau,v}.
double frl_discrepancy_bound(double n, double height, double tau, double c2, const Place& v, double kappa = 1);

/// C3 (N^{-1/2} + (h + log N / N)^{1/2}).
double truncated_discrepancy_bound(double n, double height, double c3);
/// C_AZ (1 + log sqrt N) / sqrt N.
double az_rate_bound(double n, double c_az);
/// C7 / N^delta sqrt(log N) A (h(alpha) + h(s) + 1).
double log_equidistribution_bound(double n, double h_alpha, double h_s, double c7, double a, double delta);
/// C_eps D^3 (h(alpha) + h(s) + 1) N^eps.
double closeness_bound(double n, double h_alpha, double h_s, double c_eps, unsigned field_degree, double eps);

}  // namespace orbit_integra

#endif
