#ifndef ORBIT_INTEGRA_INTEGRALITY_HPP
#define ORBIT_INTEGRA_INTEGRALITY_HPP

#include <vector>

#include "orbit_integra/binomial_galois.hpp"
#include "orbit_integra/exact_arith.hpp"

namespace orbit_integra {

struct CandidatePrimes {
    std::vector<Integer> primes;      // ascending
    std::vector<Integer> unfactored;  // cofactors of alpha^n - beta that resisted factoring
};

/// Primes of den(alpha), num(beta), den(beta) and num/den(alpha^n - beta).
/// Degenerate error when alpha^n = beta.
CandidatePrimes candidate_primes(const Rational& alpha, const Rational& beta, std::uint64_t n);

struct IntegralityWitness {
    PrimeGroup group;
    /// v_p(gamma - alpha) > 0 of the closest class root when v_p(alpha) >= 0,
    /// v_p(gamma) < 0 when v_p(alpha) < 0. For an unsplit cofactor: the
    /// exponent of the cofactor in f(alpha).
    Rational valuation;
};

struct SIntegralityReport {
    std::size_t class_index = 0;
    std::size_t class_size = 0;
    std::vector<Place> S;
    bool verdict = false;
    std::vector<IntegralityWitness> witnesses;
    std::vector<PrimeGroup> checked;
};

/// S-integrality of a Galois class of x^n = beta relative to rational alpha.
/// Primes dividing den(alpha), beta or lc(f) are decided by the Newton
/// polygon of f(y + alpha); at any other prime the class roots and alpha are
/// integral, so a failure there is exactly a prime of num f(alpha) outside S.
/// Precondition error unless infinity is in S.
SIntegralityReport is_s_integral(const GaloisClass& cls, std::size_t class_index, const Rational& beta,
                                 std::uint64_t n, const Rational& alpha, const std::vector<Place>& S);

}  // namespace orbit_integra

#endif
