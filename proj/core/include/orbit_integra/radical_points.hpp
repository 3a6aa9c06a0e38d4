#ifndef ORBIT_INTEGRA_RADICAL_POINTS_HPP
#define ORBIT_INTEGRA_RADICAL_POINTS_HPP

#include <cstdint>
#include <vector>

#include "orbit_integra/exact_arith.hpp"
#include "orbit_integra/multiprecision.hpp"

namespace orbit_integra {

inline constexpr std::uint64_t kMaxLevelSize = std::uint64_t(1) << 20;

/// One solution of x^n = beta:  |beta|^{1/n} * e^{2 pi i (j + theta)/n}
/// with theta = 0 for beta > 0 and 1/2 for beta < 0.
struct RadicalPoint {
    Rational beta;
    std::uint64_t n = 1;
    std::uint64_t j = 0;

    /// (j + theta)/n, the argument in turns, in [0, 1).
    Rational phase() const;
};

/// The d^depth points of phi^{-depth}(beta) for phi(z) = z^d.
class OrbitLevel {
public:
    OrbitLevel(Rational beta, unsigned d, unsigned depth);

    const Rational& beta() const noexcept { return beta_; }
    unsigned d() const noexcept { return d_; }
    unsigned depth() const noexcept { return depth_; }
    std::uint64_t size() const noexcept { return n_; }

    RadicalPoint point(std::uint64_t j) const;
    std::vector<RadicalPoint> points() const;

private:
    Rational beta_;
    unsigned d_;
    unsigned depth_;
    std::uint64_t n_;
};

/// Throws Input for d < 2 or beta == 0, Resource when d^m > 2^20.
OrbitLevel preimages(const Rational& beta, unsigned d, unsigned depth);

/// d^m, or 0 if it exceeds |limit|.
std::uint64_t checked_power(unsigned d, unsigned m, std::uint64_t limit = kMaxLevelSize);

/// Archimedean value with relative error below 2^-(precision-8).
Complex embed(const RadicalPoint& pt, long precision);

/// Embeddings of a whole level, index order; computed in parallel.
std::vector<Complex> embed_level(const OrbitLevel& level, long precision);

/// h(gamma) = h(beta)/n.
LogValue point_height(const RadicalPoint& pt);

/// v_p(beta)/n, the common valuation of all roots of x^n - beta above p.
Rational level_valuation(const Rational& beta, std::uint64_t n, const Integer& p);

}  // namespace orbit_integra

#endif
