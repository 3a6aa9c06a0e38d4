#ifndef ORBIT_INTEGRA_INTEGER_FACTOR_HPP
#define ORBIT_INTEGRA_INTEGER_FACTOR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace orbit_integra {

using Integer = mpz_class;

/// Primes below the trial-division bound (10^6), ascending.
std::span<const std::uint32_t> small_primes();

inline constexpr std::uint32_t kTrialDivisionBound = 1'000'000;

/// Deterministic primality. Miller-Rabin with the first 13 prime bases is
/// exact below 3.3e24; larger inputs fall back to BPSW.
bool is_prime(const Integer& n);

struct FactorPiece {
    Integer base;
    unsigned long exponent = 0;
    bool prime = false;  // false: composite cofactor that could not be split
};

struct FactorBudget {
    std::uint64_t rho_iterations = 1u << 16;
};

/// Factors |n| (n != 0). Pieces are pairwise coprime and sorted by base.
/// Trial division up to 10^6, then Brent-Pollard rho with fixed seeds; a
/// cofactor that survives the rho budget is returned with prime == false.
/// Results are memoized, so repeated calls are cheap and deterministic.
std::vector<FactorPiece> factor_integer(const Integer& n, FactorBudget budget = {});

/// Trial division only; returns the prime part found and leaves the
/// cofactor in |rest|.
std::vector<FactorPiece> trial_divide(const Integer& n, Integer& rest,
                                      std::uint32_t bound = kTrialDivisionBound);

/// v_p(n) for n != 0 and prime p; strips the factor in place.
unsigned long strip_factor(Integer& n, const Integer& p);

}  // namespace orbit_integra

#endif
