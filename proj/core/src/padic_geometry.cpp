#include "orbit_integra/padic_geometry.hpp"

#include <algorithm>

#include "orbit_integra/errors.hpp"
#include "orbit_integra/radical_points.hpp"

namespace orbit_integra {

namespace {

std::uint64_t digit_sum(std::uint64_t x, std::uint64_t p)
{
    std::uint64_t s = 0;
    while (x) {
        s += x % p;
        x /= p;
    }
    return s;
}

// b lies strictly below the chord from a to c.
bool strictly_below(const std::pair<std::uint64_t, long>& a, const std::pair<std::uint64_t, long>& b,
                    const std::pair<std::uint64_t, long>& c)
{
    const __int128 bx = static_cast<__int128>(b.first) - a.first, by = static_cast<__int128>(b.second) - a.second;
    const __int128 cx = static_cast<__int128>(c.first) - a.first, cy = static_cast<__int128>(c.second) - a.second;
    return bx * cy - by * cx > 0;
}

}  // namespace

std::uint64_t NewtonPolygon::degree() const
{
    std::uint64_t n = 0;
    for (const auto& s : segments) n += s.multiplicity;
    return n;
}

Rational NewtonPolygon::slope_sum() const
{
    Rational s = 0;
    for (const auto& seg : segments) s += seg.root_valuation * Rational(Integer(seg.multiplicity));
    return s;
}

std::vector<Rational> NewtonPolygon::root_valuations() const
{
    std::vector<Rational> out;
    out.reserve(degree());
    for (const auto& seg : segments)
        for (std::uint64_t i = 0; i < seg.multiplicity; ++i) out.push_back(seg.root_valuation);
    return out;
}

Rational NewtonPolygon::max_root_valuation() const
{
    if (segments.empty()) raise(ErrorKind::Input, "empty Newton polygon");
    return segments.front().root_valuation;
}

NewtonPolygon newton_polygon_from_valuations(const std::vector<std::optional<long>>& valuations, const Integer& p)
{
    if (valuations.size() < 2) raise(ErrorKind::Input, "Newton polygon needs degree >= 1");
    if (!valuations.front()) raise(ErrorKind::Input, "zero constant term: deflate the root at 0 first");
    if (!valuations.back()) raise(ErrorKind::Input, "zero leading coefficient");
    NewtonPolygon poly;
    poly.prime = p;
    auto& hull = poly.vertices;
    for (std::uint64_t k = 0; k < valuations.size(); ++k) {
        if (!valuations[k]) continue;
        std::pair<std::uint64_t, long> pt{k, *valuations[k]};
        while (hull.size() >= 2 && !strictly_below(hull[hull.size() - 2], hull.back(), pt)) hull.pop_back();
        hull.push_back(pt);
    }
    for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
        const auto len = hull[i + 1].first - hull[i].first;
        Rational slope(Integer(hull[i + 1].second - hull[i].second), Integer(len));
        slope.canonicalize();
        poly.segments.push_back({-slope, len});
    }
    return poly;
}

NewtonPolygon newton_polygon(const std::vector<Rational>& coeffs, const Integer& p)
{
    if (!is_prime(p)) raise(ErrorKind::Input, p.get_str() + " is not prime");
    std::vector<std::optional<long>> v(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        if (coeffs[k] != 0) v[k] = padic_valuation(coeffs[k], p);
    return newton_polygon_from_valuations(v, p);
}

long binomial_valuation(std::uint64_t n, std::uint64_t k, std::uint64_t p)
{
    if (k > n) raise(ErrorKind::Input, "k > n in binomial coefficient");
    return static_cast<long>((digit_sum(k, p) + digit_sum(n - k, p) - digit_sum(n, p)) / (p - 1));
}

bool power_equals(const Rational& alpha, const Rational& beta, std::uint64_t n)
{
    if (alpha == 0) return beta == 0;
    if (beta == 0) return false;
    const bool negative = alpha < 0 && n % 2 == 1;
    if ((beta < 0) != negative) return false;
    const Integer a = abs(alpha.get_num());
    const Integer& b = alpha.get_den();
    if (a == 1 && b == 1) return abs(beta) == 1;
    // Cheap size filter before taking roots.
    const auto bits_alpha = mpz_sizeinbase(a.get_mpz_t(), 2) + mpz_sizeinbase(b.get_mpz_t(), 2);
    const auto bits_beta = mpz_sizeinbase(beta.get_num().get_mpz_t(), 2) + mpz_sizeinbase(beta.get_den().get_mpz_t(), 2);
    if (n > 2 * (bits_beta + 2)) return false;
    if ((bits_alpha - 2) * n > bits_beta + 2) return false;
    Integer r;
    if (!mpz_root(r.get_mpz_t(), Integer(abs(beta.get_num())).get_mpz_t(), n) || r != a) return false;
    if (!mpz_root(r.get_mpz_t(), beta.get_den().get_mpz_t(), n) || r != b) return false;
    return true;
}

long power_difference_valuation(const Rational& alpha, const Rational& beta, std::uint64_t n, const Integer& p)
{
    if (power_equals(alpha, beta, n))
        raise(ErrorKind::Degenerate, "alpha^" + std::to_string(n) + " = beta: a level point equals alpha");
    if (alpha == 0) return padic_valuation(beta, p);
    const long a = padic_valuation(alpha, p);
    const long b = padic_valuation(beta, p);
    const long na = a * static_cast<long>(n);
    if (na != b) return std::min(na, b);

    // Same valuation: strip p and compare the units.
    auto unit = [&](const Rational& x, long v, Integer& num, Integer& den) {
        num = x.get_num();
        den = x.get_den();
        Integer pv;
        mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(std::labs(v)));
        if (v > 0) mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), pv.get_mpz_t());
        if (v < 0) mpz_divexact(den.get_mpz_t(), den.get_mpz_t(), pv.get_mpz_t());
    };
    Integer an, ad, bn, bd;
    unit(alpha, a, an, ad);
    unit(beta, b, bn, bd);

    const auto bits = (mpz_sizeinbase(an.get_mpz_t(), 2) + mpz_sizeinbase(ad.get_mpz_t(), 2)) * n;
    if (bits < (1u << 16)) {
        Integer x, y;
        mpz_pow_ui(x.get_mpz_t(), an.get_mpz_t(), n);
        mpz_pow_ui(y.get_mpz_t(), ad.get_mpz_t(), n);
        Integer diff = x * bd - bn * y;
        return b + static_cast<long>(strip_factor(diff, p));
    }
    for (unsigned long k = 64;; k *= 2) {
        Integer m;
        mpz_pow_ui(m.get_mpz_t(), p.get_mpz_t(), k);
        Integer x, y;
        const Integer e(std::to_string(n));
        mpz_powm(x.get_mpz_t(), an.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
        mpz_powm(y.get_mpz_t(), ad.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
        Integer diff = x * bd - bn * y;
        mpz_mod(diff.get_mpz_t(), diff.get_mpz_t(), m.get_mpz_t());
        if (diff != 0) return b + static_cast<long>(strip_factor(diff, p));
    }
}

NewtonPolygon distance_polygon(const Rational& alpha, const Rational& beta, std::uint64_t n, const Integer& p)
{
    if (n == 0) raise(ErrorKind::Input, "n must be >= 1");
    if (beta == 0) raise(ErrorKind::Input, "beta must be nonzero");
    if (!is_prime(p)) raise(ErrorKind::Input, p.get_str() + " is not prime");
    std::vector<std::optional<long>> v(n + 1);
    v[0] = power_difference_valuation(alpha, beta, n, p);
    v[n] = 0;
    if (alpha != 0) {
        const long a = padic_valuation(alpha, p);
        const bool small = p.fits_ulong_p() && p <= n;
        const std::uint64_t pu = small ? p.get_ui() : 0;
        for (std::uint64_t k = 1; k < n; ++k)
            v[k] = (small ? binomial_valuation(n, k, pu) : 0) + static_cast<long>(n - k) * a;
    }
    return newton_polygon_from_valuations(v, p);
}

std::vector<Rational> distance_profile(const Rational& alpha, const Rational& beta, std::uint64_t n, const Integer& p)
{
    return distance_polygon(alpha, beta, n, p).root_valuations();
}

std::size_t cluster_count(const std::vector<Rational>& profile, const Rational& t)
{
    return static_cast<std::size_t>(std::count_if(profile.begin(), profile.end(), [&](const Rational& v) { return v > t; }));
}

std::size_t cluster_count(const std::vector<Rational>& profile, double t)
{
    return static_cast<std::size_t>(
        std::count_if(profile.begin(), profile.end(), [&](const Rational& v) { return v.get_d() > t; }));
}

std::size_t cluster_count(const NewtonPolygon& polygon, const Rational& t)
{
    std::size_t c = 0;
    for (const auto& seg : polygon.segments)
        if (seg.root_valuation > t) c += seg.multiplicity;
    return c;
}

MinDistanceReport min_distance_report(const Rational& alpha, const Rational& beta, const Integer& p,
                                      unsigned max_depth, unsigned d)
{
    if (alpha == 0 || padic_valuation(alpha, p) != 0)
        raise(ErrorKind::Precondition, "min_distance_bound requires |alpha|_p = 1 (v_p(alpha) = 0)");
    MinDistanceReport r;
    for (unsigned m = 0; m <= max_depth; ++m) {
        const std::uint64_t n = checked_power(d, m);
        if (n == 0) raise(ErrorKind::Resource, "depth " + std::to_string(m) + " exceeds the level ceiling");
        if (power_equals(alpha, beta, n))
            raise(ErrorKind::Degenerate, "alpha^n = beta at depth " + std::to_string(m));
        Rational top = distance_polygon(alpha, beta, n, p).max_root_valuation();
        r.per_depth_max.push_back(top);
        if (m == 0 || top > r.bound) {
            r.bound = top;
            r.stabilization_depth = m;
        }
    }
    return r;
}

Rational min_distance_bound(const Rational& alpha, const Rational& beta, const Integer& p, unsigned max_depth,
                            unsigned d)
{
    return min_distance_report(alpha, beta, p, max_depth, d).bound;
}

}  // namespace orbit_integra
