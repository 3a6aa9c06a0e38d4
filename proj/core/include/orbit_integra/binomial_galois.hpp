#ifndef ORBIT_INTEGRA_BINOMIAL_GALOIS_HPP
#define ORBIT_INTEGRA_BINOMIAL_GALOIS_HPP

#include <cstdint>
#include <vector>

#include "orbit_integra/int_polynomial.hpp"
#include "orbit_integra/radical_points.hpp"

namespace orbit_integra {

inline constexpr std::uint64_t kMaxFactorDegree = 256;

/// Vahlen-Capelli: x^n - beta is irreducible over Q iff beta is not a q-th
/// power for any prime q | n, and beta is not in -4 Q^4 when 4 | n.
bool capelli_irreducible(std::uint64_t n, const Rational& beta);

/// Irreducible factors of b x^n - a (beta = a/b), primitive with positive
/// leading coefficient, sorted by factor_order. Resource error for n > 256.
std::vector<IntPolynomial> factor_binomial(std::uint64_t n, const Rational& beta);

/// Brute force over root subsets at 256 bits, for n <= 16.
std::vector<IntPolynomial> subset_factor_oracle(std::uint64_t n, const Rational& beta);

struct GaloisClass {
    IntPolynomial factor;
    std::vector<std::uint64_t> indices;  // ascending

    std::size_t size() const noexcept { return indices.size(); }
};

struct GaloisOrbitPartition {
    Rational beta;
    unsigned d = 2;
    unsigned depth = 0;
    std::uint64_t n = 1;
    std::vector<GaloisClass> classes;  // in factor order

    std::vector<std::size_t> sizes() const;
    /// Index of the class containing point j.
    std::size_t class_of(std::uint64_t j) const;
};

/// Partitions a level into Galois orbits. Binomial factors are matched by an
/// exact phase test; other factors numerically, certified by rebuilding each
/// class polynomial and rounding it to the factor's integer coefficients.
/// A failed certificate is retried once at doubled precision, then raised as
/// ErrorKind::Certification. Above degree 256 only structural splits are
/// supported (Capelli-irreducible, or beta a square with n even).
GaloisOrbitPartition galois_orbits(const OrbitLevel& level, long precision = kDefaultPrecision);

struct DegreeBoundReport {
    Rational beta;
    std::uint64_t n = 1;
    std::size_t min_orbit_size = 0;
    std::uint64_t sqrt_threshold = 0;  // ceil(sqrt(n))
    bool satisfied = false;
    // Roots beta^{1/n} zeta^j with gcd(j, n) = 1 whose class is smaller than
    // phi(n)/2 (beta > 0 only). Logged, not asserted.
    std::uint64_t half_totient = 0;
    std::vector<std::uint64_t> primitive_phase_violations;
};

/// Precondition error for beta in {0, 1, -1}.
DegreeBoundReport degree_bound_report(const Rational& beta, std::uint64_t n);

}  // namespace orbit_integra

#endif
