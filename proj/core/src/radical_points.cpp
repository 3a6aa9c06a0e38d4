#include "orbit_integra/radical_points.hpp"

#include "orbit_integra/errors.hpp"
#include "orbit_integra/parallel.hpp"

namespace orbit_integra {

Rational RadicalPoint::phase() const
{
    Rational t(Integer(j) * 2 + (beta < 0 ? 1 : 0), Integer(n) * 2);
    t.canonicalize();
    return t;
}

std::uint64_t checked_power(unsigned d, unsigned m, std::uint64_t limit)
{
    std::uint64_t n = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (n > limit / d) return 0;
        n *= d;
    }
    return n <= limit ? n : 0;
}

OrbitLevel::OrbitLevel(Rational beta, unsigned d, unsigned depth)
    : beta_(std::move(beta)), d_(d), depth_(depth), n_(0)
{
    if (d_ < 2) raise(ErrorKind::Input, "degree d must be >= 2, got " + std::to_string(d_));
    if (beta_ == 0) raise(ErrorKind::Input, "beta must be nonzero");
    n_ = checked_power(d_, depth_);
    if (n_ == 0)
        raise(ErrorKind::Resource, std::to_string(d_) + "^" + std::to_string(depth_) + " exceeds the 2^20 level ceiling");
}

RadicalPoint OrbitLevel::point(std::uint64_t j) const
{
    if (j >= n_) raise(ErrorKind::Input, "root index out of range");
    return RadicalPoint{beta_, n_, j};
}

std::vector<RadicalPoint> OrbitLevel::points() const
{
    std::vector<RadicalPoint> out;
    out.reserve(n_);
    for (std::uint64_t j = 0; j < n_; ++j) out.push_back(RadicalPoint{beta_, n_, j});
    return out;
}

OrbitLevel preimages(const Rational& beta, unsigned d, unsigned depth)
{
    return OrbitLevel(beta, d, depth);
}

Complex embed(const RadicalPoint& pt, long precision)
{
    if (pt.beta == 0) raise(ErrorKind::Input, "beta must be nonzero");
    const long work = precision + 16;
    Real magnitude = root_of(abs(pt.beta), pt.n, work);
    Complex z = unit_phase(pt.phase(), work);
    z.re *= magnitude;
    z.im *= magnitude;
    Complex out(precision);
    mpfr_set(out.re.get(), z.re.get(), MPFR_RNDN);
    mpfr_set(out.im.get(), z.im.get(), MPFR_RNDN);
    return out;
}

std::vector<Complex> embed_level(const OrbitLevel& level, long precision)
{
    std::vector<Complex> out(level.size(), Complex(precision));
    parallel_for(level.size(), [&](std::size_t j) { out[j] = embed(level.point(j), precision); });
    return out;
}

LogValue point_height(const RadicalPoint& pt)
{
    return weil_height(pt.beta) / Rational(Integer(pt.n));
}

Rational level_valuation(const Rational& beta, std::uint64_t n, const Integer& p)
{
    if (n == 0) raise(ErrorKind::Input, "n must be positive");
    Rational v(padic_valuation(beta, p), Integer(n));
    v.canonicalize();
    return v;
}

}  // namespace orbit_integra
