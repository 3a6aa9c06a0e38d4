#ifndef ORBIT_INTEGRA_PADIC_GEOMETRY_HPP
#define ORBIT_INTEGRA_PADIC_GEOMETRY_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "orbit_integra/exact_arith.hpp"

namespace orbit_integra {

struct NewtonSegment {
    Rational root_valuation;
    std::uint64_t multiplicity = 0;
};

struct NewtonPolygon {
    Integer prime;
    std::vector<std::pair<std::uint64_t, long>> vertices;  // (index, valuation) on the lower hull
    std::vector<NewtonSegment> segments;                   // root valuations decreasing

    std::uint64_t degree() const;
    /// Sum of root_valuation * multiplicity.
    Rational slope_sum() const;
    /// Root valuations with multiplicity, decreasing.
    std::vector<Rational> root_valuations() const;
    Rational max_root_valuation() const;
};

/// Lower hull of (k, v_p(a_k)); zero interior coefficients are skipped.
/// Input error if the constant or leading coefficient is zero.
NewtonPolygon newton_polygon(const std::vector<Rational>& coeffs, const Integer& p);

/// Same, from precomputed valuations (nullopt = zero coefficient).
NewtonPolygon newton_polygon_from_valuations(const std::vector<std::optional<long>>& valuations, const Integer& p);

/// v_p(alpha^n - beta), Degenerate error when alpha^n = beta. Large powers
/// are reduced modulo p^K rather than expanded.
long power_difference_valuation(const Rational& alpha, const Rational& beta, std::uint64_t n, const Integer& p);

/// True when alpha^n == beta exactly.
bool power_equals(const Rational& alpha, const Rational& beta, std::uint64_t n);

/// Polygon of g(y) = (y + alpha)^n - beta at p, built from valuations only.
NewtonPolygon distance_polygon(const Rational& alpha, const Rational& beta, std::uint64_t n, const Integer& p);

/// Multiset {v_p(z_j - alpha)} over the n roots of x^n = beta, decreasing.
std::vector<Rational> distance_profile(const Rational& alpha, const Rational& beta, std::uint64_t n, const Integer& p);

/// Entries strictly above t, with multiplicity.
std::size_t cluster_count(const std::vector<Rational>& profile, const Rational& t);
std::size_t cluster_count(const std::vector<Rational>& profile, double t);
std::size_t cluster_count(const NewtonPolygon& polygon, const Rational& t);

struct MinDistanceReport {
    Rational bound;                        // max over depths of max(profile)
    std::vector<Rational> per_depth_max;   // depth 0..max_depth
    unsigned stabilization_depth = 0;      // first depth reaching the bound
};

/// Requires v_p(alpha) = 0; Degenerate error if some alpha^{d^m} = beta.
MinDistanceReport min_distance_report(const Rational& alpha, const Rational& beta, const Integer& p,
                                      unsigned max_depth, unsigned d = 2);
Rational min_distance_bound(const Rational& alpha, const Rational& beta, const Integer& p, unsigned max_depth,
                            unsigned d = 2);

/// v_p(n choose k) by Kummer's digit-sum formula.
long binomial_valuation(std::uint64_t n, std::uint64_t k, std::uint64_t p);

}  // namespace orbit_integra

#endif
