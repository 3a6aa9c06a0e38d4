#ifndef ORBIT_INTEGRA_MODULAR_FACTOR_HPP
#define ORBIT_INTEGRA_MODULAR_FACTOR_HPP

#include <cstdint>
#include <vector>

#include "orbit_integra/int_polynomial.hpp"

namespace orbit_integra::modp {

/// Polynomial over F_p (p < 2^31), constant term first, trimmed.
using Poly = std::vector<std::uint64_t>;

Poly reduce(const IntPolynomial& f, std::uint64_t p);
Poly multiply(const Poly& a, const Poly& b, std::uint64_t p);
Poly remainder(const Poly& a, const Poly& m, std::uint64_t p);
Poly gcd(Poly a, Poly b, std::uint64_t p);
Poly make_monic(const Poly& a, std::uint64_t p);
std::uint64_t inverse(std::uint64_t a, std::uint64_t p);

/// Monic irreducible factors of a monic squarefree f (distinct-degree then
/// Cantor-Zassenhaus equal-degree splitting with a fixed-seed generator).
/// Output sorted by (degree, coefficients).
std::vector<Poly> factor_squarefree(const Poly& f, std::uint64_t p);

}  // namespace orbit_integra::modp

namespace orbit_integra {

/// Lifts f = lc(f) * prod(factors) mod p to the same identity mod p^k.
/// factors must be monic, pairwise coprime mod p. Returns monic lifts.
std::vector<std::vector<Integer>> hensel_lift(const IntPolynomial& f, const std::vector<modp::Poly>& factors,
                                              std::uint64_t p, unsigned k);

/// Irreducible factorization over Q of a primitive squarefree f with
/// positive leading coefficient, by reduction modulo a good prime, Hensel
/// lifting past twice the Landau-Mignotte bound, and subset recombination.
/// The prime is chosen among several candidates to minimize the number of
/// modular factors. Factors are primitive with positive leading coefficient.
std::vector<IntPolynomial> zassenhaus_factor(const IntPolynomial& f);

}  // namespace orbit_integra

#endif
