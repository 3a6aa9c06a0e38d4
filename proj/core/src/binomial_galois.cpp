#include "orbit_integra/binomial_galois.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "orbit_integra/errors.hpp"
#include "orbit_integra/modular_factor.hpp"
#include "orbit_integra/parallel.hpp"

namespace orbit_integra {

namespace {

bool is_integer_power(const Integer& x, unsigned long q)
{
    Integer r;
    return mpz_root(r.get_mpz_t(), x.get_mpz_t(), q) != 0;
}

// beta = c^q for some rational c.
bool is_rational_power(const Rational& beta, unsigned long q)
{
    if (q % 2 == 0 && beta < 0) return false;
    Integer a = abs(beta.get_num());
    return is_integer_power(a, q) && is_integer_power(beta.get_den(), q);
}

Rational rational_sqrt(const Rational& x)
{
    Integer a, b;
    mpz_sqrt(a.get_mpz_t(), x.get_num().get_mpz_t());
    mpz_sqrt(b.get_mpz_t(), x.get_den().get_mpz_t());
    Rational r(a, b);
    r.canonicalize();
    return r;
}

Complex horner(const std::vector<Integer>& c, const Complex& z)
{
    const long prec = z.precision();
    Complex acc(Real(Rational(c.back()), prec), Real(prec));
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        acc *= z;
        acc.re += Real(Rational(c[i]), prec);
    }
    return acc;
}

// sum |c_k| |z|^k, the scale for a relative residual.
Real horner_scale(const std::vector<Integer>& c, const Real& r)
{
    const long prec = r.precision();
    Real acc(Rational(abs(c.back())), prec);
    for (std::size_t i = c.size() - 1; i-- > 0;) {
        acc *= r;
        acc += Real(Rational(abs(c[i])), prec);
    }
    return acc;
}

// Monic product of (x - z_j), constant term first.
std::vector<Complex> root_product(const std::vector<Complex>& roots, long prec)
{
    std::vector<Complex> c;
    c.emplace_back(Real(1.0, prec), Real(prec));
    for (const auto& z : roots) {
        std::vector<Complex> next(c.size() + 1, Complex(prec));
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= z * c[i];
        }
        c = std::move(next);
    }
    return c;
}

// Rounds scale * c_k to integers; nullopt unless every value is within 1/4.
std::optional<std::vector<Integer>> round_coefficients(const std::vector<Complex>& c, const Integer& scale)
{
    std::vector<Integer> out(c.size());
    const long prec = c.front().precision();
    const Real s(Rational(scale), prec);
    const Real quarter(0.25, prec);
    for (std::size_t i = 0; i < c.size(); ++i) {
        Real re = c[i].re * s;
        Real im = c[i].im * s;
        if (!(abs(im) < quarter)) return std::nullopt;
        Real rounded(prec);
        mpfr_round(rounded.get(), re.get());
        if (!(abs(re - rounded) < quarter)) return std::nullopt;
        mpfr_get_z(out[i].get_mpz_t(), rounded.get(), MPFR_RNDN);
    }
    return out;
}

// Exact: point with phase t (in turns) is a root of c_k x^k + c_0, given that
// the factor divides the binomial so the moduli agree.
bool binomial_phase_match(const IntPolynomial& f, const Rational& t)
{
    const long k = f.degree();
    Rational root_power = -Rational(f[0]) / Rational(f.leading());
    Rational theta = root_power < 0 ? Rational(1, 2) : Rational(0);
    Rational diff = Rational(Integer(k)) * t - theta;
    return diff.get_den() == 1;
}

std::vector<GaloisClass> assign_by_factors(std::uint64_t n, const Rational& beta, const std::vector<IntPolynomial>& factors,
                                           long precision)
{
    for (int attempt = 0; attempt < 2; ++attempt) {
        const long work = (precision + 2 * static_cast<long>(n) + 32) << attempt;
        std::vector<GaloisClass> classes(factors.size());
        for (std::size_t i = 0; i < factors.size(); ++i) classes[i].factor = factors[i];

        std::vector<std::size_t> numeric;
        for (std::size_t i = 0; i < factors.size(); ++i)
            if (!factors[i].is_binomial()) numeric.push_back(i);

        std::vector<long> owner(n, -1);
        std::vector<Complex> values(n, Complex(work));
        bool ok = true;
        parallel_for(n, [&](std::size_t j) {
            RadicalPoint pt{beta, n, j};
            const Rational t = pt.phase();
            for (std::size_t i = 0; i < factors.size(); ++i) {
                if (factors[i].is_binomial() && binomial_phase_match(factors[i], t)) {
                    owner[j] = static_cast<long>(i);
                    return;
                }
            }
            values[j] = embed(pt, work);
            const Real radius = abs(values[j]);
            Real best(work);
            long best_i = -1;
            for (std::size_t i : numeric) {
                Real residual = abs(horner(factors[i].coeffs(), values[j])) / horner_scale(factors[i].coeffs(), radius);
                if (best_i < 0 || residual < best) {
                    best = residual;
                    best_i = static_cast<long>(i);
                }
            }
            Real threshold(work);
            mpfr_set_ui_2exp(threshold.get(), 1, -work / 2, MPFR_RNDN);
            if (best_i >= 0 && best < threshold) owner[j] = best_i;
        });

        for (std::uint64_t j = 0; j < n; ++j) {
            if (owner[j] < 0) {
                ok = false;
                break;
            }
            classes[owner[j]].indices.push_back(j);
        }
        for (std::size_t i = 0; ok && i < classes.size(); ++i) {
            const auto& f = classes[i].factor;
            if (classes[i].size() != static_cast<std::size_t>(f.degree())) {
                ok = false;
                break;
            }
            if (f.is_binomial()) continue;
            std::vector<Complex> roots;
            for (auto j : classes[i].indices) roots.push_back(values[j]);
            auto rounded = round_coefficients(root_product(roots, work), f.leading());
            if (!rounded || IntPolynomial(*rounded) != f) ok = false;
        }
        if (ok) return classes;
    }
    raise(ErrorKind::Certification,
          "root assignment for x^" + std::to_string(n) + " - " + format_rational(beta) +
              " could not be certified at doubled precision");
}

std::vector<GaloisClass> binomial_classes(std::uint64_t n, const Rational& beta, long precision)
{
    if (n <= kMaxFactorDegree) return assign_by_factors(n, beta, factor_binomial(n, beta), precision);
    if (capelli_irreducible(n, beta)) {
        GaloisClass c;
        c.factor = IntPolynomial::binomial_model(n, beta).primitive_part();
        c.indices.resize(n);
        std::iota(c.indices.begin(), c.indices.end(), std::uint64_t(0));
        return {std::move(c)};
    }
    if (n % 2 == 0 && beta > 0 && is_rational_power(beta, 2)) {
        // x^n - c^2 = (x^{n/2} - c)(x^{n/2} + c); point j lies over (-1)^j c.
        const Rational c = rational_sqrt(beta);
        auto even = binomial_classes(n / 2, c, precision);
        auto odd = binomial_classes(n / 2, -c, precision);
        for (auto& cls : even)
            for (auto& j : cls.indices) j = 2 * j;
        for (auto& cls : odd)
            for (auto& j : cls.indices) j = 2 * j + 1;
        std::vector<GaloisClass> out = std::move(even);
        for (auto& cls : odd) out.push_back(std::move(cls));
        std::sort(out.begin(), out.end(),
                  [](const GaloisClass& a, const GaloisClass& b) { return factor_order(a.factor, b.factor); });
        return out;
    }
    raise(ErrorKind::Resource, "Galois partition of x^" + std::to_string(n) + " - " + format_rational(beta) +
                                   " needs a factorization above degree 256");
}

}  // namespace

bool capelli_irreducible(std::uint64_t n, const Rational& beta)
{
    if (beta == 0) raise(ErrorKind::Input, "beta must be nonzero");
    if (n == 0) raise(ErrorKind::Input, "n must be >= 1");
    for (unsigned long q : prime_divisors(n))
        if (is_rational_power(beta, q)) return false;
    if (n % 4 == 0) {
        Rational x = -beta / 4;
        if (x > 0 && is_rational_power(x, 4)) return false;
    }
    return true;
}

std::vector<IntPolynomial> factor_binomial(std::uint64_t n, const Rational& beta)
{
    if (n == 0) raise(ErrorKind::Input, "n must be >= 1");
    if (n > kMaxFactorDegree)
        raise(ErrorKind::Resource, "factor_binomial supports n <= 256, got " + std::to_string(n));
    IntPolynomial f = IntPolynomial::binomial_model(n, beta).primitive_part();
    if (capelli_irreducible(n, beta)) return {f};
    auto factors = zassenhaus_factor(f);
    std::sort(factors.begin(), factors.end(), factor_order);
    return factors;
}

std::vector<IntPolynomial> subset_factor_oracle(std::uint64_t n, const Rational& beta)
{
    if (n == 0 || n > 16) raise(ErrorKind::Input, "subset oracle supports 1 <= n <= 16");
    constexpr long prec = 256;
    const Integer b = beta.get_den();
    std::vector<Complex> roots;
    for (std::uint64_t j = 0; j < n; ++j) roots.push_back(embed(RadicalPoint{beta, n, j}, prec));

    IntPolynomial rest = IntPolynomial::binomial_model(n, beta).primitive_part();
    std::vector<std::size_t> remaining(n);
    std::iota(remaining.begin(), remaining.end(), std::size_t(0));
    std::vector<IntPolynomial> out;

    while (!remaining.empty()) {
        const std::size_t r0 = remaining.front();
        std::vector<std::size_t> found;
        IntPolynomial found_factor;
        for (std::size_t size = 1; size <= remaining.size() && found.empty(); ++size) {
            std::vector<std::size_t> chosen{r0};
            std::vector<Complex> product = root_product({roots[r0]}, prec);
            std::function<bool(std::size_t, const std::vector<Complex>&)> dfs =
                [&](std::size_t next, const std::vector<Complex>& poly) -> bool {
                if (chosen.size() == size) {
                    auto rounded = round_coefficients(poly, b);
                    if (!rounded) return false;
                    IntPolynomial cand = IntPolynomial(*rounded).primitive_part();
                    if (cand.degree() != static_cast<long>(size)) return false;
                    if (!IntPolynomial::exact_divide(rest, cand)) return false;
                    found = chosen;
                    found_factor = cand;
                    return true;
                }
                for (std::size_t k = next; k < remaining.size(); ++k) {
                    if (remaining.size() - k < size - chosen.size()) break;
                    chosen.push_back(remaining[k]);
                    std::vector<Complex> extended(poly.size() + 1, Complex(prec));
                    const Complex& z = roots[remaining[k]];
                    for (std::size_t i = 0; i < poly.size(); ++i) {
                        extended[i + 1] += poly[i];
                        extended[i] -= z * poly[i];
                    }
                    if (dfs(k + 1, extended)) return true;
                    chosen.pop_back();
                }
                return false;
            };
            dfs(1, product);
        }
        if (found.empty()) raise(ErrorKind::Certification, "subset oracle found no factor");
        rest = *IntPolynomial::exact_divide(rest, found_factor);
        out.push_back(found_factor);
        std::vector<std::size_t> next;
        for (auto j : remaining)
            if (std::find(found.begin(), found.end(), j) == found.end()) next.push_back(j);
        remaining = std::move(next);
    }
    std::sort(out.begin(), out.end(), factor_order);
    return out;
}

std::vector<std::size_t> GaloisOrbitPartition::sizes() const
{
    std::vector<std::size_t> out;
    for (const auto& c : classes) out.push_back(c.size());
    return out;
}

std::size_t GaloisOrbitPartition::class_of(std::uint64_t j) const
{
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (std::binary_search(classes[i].indices.begin(), classes[i].indices.end(), j)) return i;
    raise(ErrorKind::Input, "index " + std::to_string(j) + " outside the level");
}

GaloisOrbitPartition galois_orbits(const OrbitLevel& level, long precision)
{
    GaloisOrbitPartition out;
    out.beta = level.beta();
    out.d = level.d();
    out.depth = level.depth();
    out.n = level.size();
    out.classes = binomial_classes(level.size(), level.beta(), precision);
    return out;
}

DegreeBoundReport degree_bound_report(const Rational& beta, std::uint64_t n)
{
    if (beta == 0 || beta == 1 || beta == -1)
        raise(ErrorKind::Precondition, "beta must be neither zero nor a root of unity, got " + format_rational(beta));
    if (n == 0) raise(ErrorKind::Input, "n must be >= 1");
    DegreeBoundReport r;
    r.beta = beta;
    r.n = n;
    auto classes = binomial_classes(n, beta, kDefaultPrecision);
    r.min_orbit_size = classes.front().size();
    for (const auto& c : classes) r.min_orbit_size = std::min(r.min_orbit_size, c.size());
    Integer root;
    mpz_sqrt(root.get_mpz_t(), Integer(n).get_mpz_t());
    if (root * root < n) root += 1;
    r.sqrt_threshold = root.get_ui();
    r.satisfied = r.min_orbit_size >= r.sqrt_threshold;
    r.half_totient = euler_totient(static_cast<unsigned long>(n)) / 2;
    if (beta > 0) {
        for (const auto& c : classes)
            if (c.size() < r.half_totient)
                for (auto j : c.indices)
                    if (std::gcd(j, n) == 1) r.primitive_phase_violations.push_back(j);
        std::sort(r.primitive_phase_violations.begin(), r.primitive_phase_violations.end());
    }
    return r;
}

}  // namespace orbit_integra
