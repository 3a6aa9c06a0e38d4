#include "orbit_integra/modular_factor.hpp"

#include <algorithm>
#include <random>

#include "orbit_integra/errors.hpp"

namespace orbit_integra::modp {

namespace {

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) { return a * b % p; }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p)
{
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

Poly sub(const Poly& a, const Poly& b, std::uint64_t p)
{
    Poly out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = (out[i] + p - b[i]) % p;
    trim(out);
    return out;
}

// Quotient and remainder of a by m (m nonzero).
void divide(const Poly& a, const Poly& m, std::uint64_t p, Poly& q, Poly& r)
{
    r = a;
    trim(r);
    q.clear();
    if (r.size() < m.size()) return;
    const std::uint64_t inv = inverse(m.back(), p);
    q.assign(r.size() - m.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        const std::uint64_t t = mulmod(r[k + m.size() - 1], inv, p);
        q[k] = t;
        if (t == 0) continue;
        for (std::size_t j = 0; j < m.size(); ++j) r[k + j] = (r[k + j] + p - mulmod(t, m[j], p)) % p;
    }
    trim(r);
    trim(q);
}

Poly powmod_poly(Poly base, std::uint64_t e, const Poly& m, std::uint64_t p)
{
    Poly result{1};
    base = remainder(base, m, p);
    while (e) {
        if (e & 1) result = remainder(multiply(result, base, p), m, p);
        base = remainder(multiply(base, base, p), m, p);
        e >>= 1;
    }
    return result;
}

// Rows x^{i p} mod f; applying the matrix raises a polynomial to the p-th power.
class Frobenius {
public:
    Frobenius(const Poly& f, std::uint64_t p) : f_(f), p_(p)
    {
        const std::size_t n = f.size() - 1;
        Poly xp = powmod_poly(Poly{0, 1}, p, f, p);
        rows_.resize(n);
        rows_[0] = Poly{1};
        for (std::size_t i = 1; i < n; ++i) rows_[i] = remainder(multiply(rows_[i - 1], xp, p), f, p);
    }

    Poly apply(const Poly& a) const
    {
        const std::size_t n = rows_.size();
        std::vector<unsigned __int128> acc(n, 0);
        for (std::size_t i = 0; i < a.size() && i < n; ++i) {
            if (a[i] == 0) continue;
            const Poly& row = rows_[i];
            for (std::size_t j = 0; j < row.size(); ++j) acc[j] += static_cast<unsigned __int128>(a[i]) * row[j];
        }
        Poly out(n);
        for (std::size_t j = 0; j < n; ++j) out[j] = static_cast<std::uint64_t>(acc[j] % p_);
        trim(out);
        return out;
    }

private:
    Poly f_;
    std::uint64_t p_;
    std::vector<Poly> rows_;
};

void equal_degree_split(const Poly& g, std::size_t d, std::uint64_t p, const Frobenius& frob, std::mt19937_64& rng,
                        std::vector<Poly>& out)
{
    const std::size_t deg = g.size() - 1;
    if (deg == d) {
        out.push_back(g);
        return;
    }
    std::uniform_int_distribution<std::uint64_t> coeff(0, p - 1);
    for (;;) {
        Poly a(deg);
        for (auto& c : a) c = coeff(rng);
        trim(a);
        if (a.size() < 2) continue;
        // a^{(p^d - 1)/2} = (a^{1 + p + ... + p^{d-1}})^{(p-1)/2}
        Poly power = a, norm = a;
        for (std::size_t i = 1; i < d; ++i) {
            power = remainder(frob.apply(power), g, p);
            norm = remainder(multiply(norm, power, p), g, p);
        }
        Poly b = powmod_poly(norm, (p - 1) / 2, g, p);
        b = sub(b, Poly{1}, p);
        Poly h = gcd(b, g, p);
        if (h.size() <= 1 || h.size() == g.size()) continue;
        Poly q, r;
        divide(g, h, p, q, r);
        equal_degree_split(make_monic(h, p), d, p, frob, rng, out);
        equal_degree_split(make_monic(q, p), d, p, frob, rng, out);
        return;
    }
}

}  // namespace

std::uint64_t inverse(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

Poly reduce(const IntPolynomial& f, std::uint64_t p)
{
    Poly out(f.coeffs().size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mpz_fdiv_ui(f.coeffs()[i].get_mpz_t(), p);
    trim(out);
    return out;
}

Poly multiply(const Poly& a, const Poly& b, std::uint64_t p)
{
    if (a.empty() || b.empty()) return {};
    std::vector<unsigned __int128> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] += static_cast<unsigned __int128>(a[i]) * b[j];
    }
    Poly out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint64_t>(acc[i] % p);
    trim(out);
    return out;
}

Poly remainder(const Poly& a, const Poly& m, std::uint64_t p)
{
    Poly q, r;
    divide(a, m, p, q, r);
    return r;
}

Poly gcd(Poly a, Poly b, std::uint64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = remainder(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a.empty() ? a : make_monic(a, p);
}

Poly make_monic(const Poly& a, std::uint64_t p)
{
    if (a.empty()) return a;
    const std::uint64_t inv = inverse(a.back(), p);
    Poly out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = mulmod(a[i], inv, p);
    return out;
}

std::vector<Poly> factor_squarefree(const Poly& f_in, std::uint64_t p)
{
    Poly f = make_monic(f_in, p);
    std::vector<Poly> out;
    if (f.size() <= 2) {
        if (f.size() == 2) out.push_back(f);
        return out;
    }
    const Frobenius frob(f, p);
    std::mt19937_64 rng(0x5eed0f0b17ULL + p);

    Poly rest = f;
    Poly h{0, 1};  // x^{p^d} mod f
    for (std::size_t d = 1; rest.size() > 1; ++d) {
        if (2 * d > rest.size() - 1) {
            out.push_back(rest);
            break;
        }
        h = frob.apply(h);
        Poly g = gcd(sub(remainder(h, rest, p), Poly{0, 1}, p), rest, p);
        if (g.size() > 1) {
            equal_degree_split(g, d, p, frob, rng, out);
            Poly q, r;
            divide(rest, g, p, q, r);
            rest = make_monic(q, p);
        }
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

}  // namespace orbit_integra::modp

namespace orbit_integra {

namespace {

using ZPoly = std::vector<Integer>;

void ztrim(ZPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

void zreduce(ZPoly& a, const Integer& m)
{
    for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    ztrim(a);
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const Integer& m)
{
    if (a.empty() || b.empty()) return {};
    ZPoly out(a.size() + b.size() - 1, Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
    zreduce(out, m);
    return out;
}

ZPoly zadd(const ZPoly& a, const ZPoly& b, const Integer& m, int sign = 1)
{
    ZPoly out(std::max(a.size(), b.size()), Integer(0));
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (sign > 0)
            out[i] += b[i];
        else
            out[i] -= b[i];
    }
    zreduce(out, m);
    return out;
}

// Division by a monic polynomial modulo m.
void zdivmod(const ZPoly& a, const ZPoly& h, const Integer& m, ZPoly& q, ZPoly& r)
{
    r = a;
    ztrim(r);
    q.clear();
    if (r.size() < h.size()) return;
    q.assign(r.size() - h.size() + 1, Integer(0));
    for (std::size_t k = q.size(); k-- > 0;) {
        Integer t = r[k + h.size() - 1];
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
        q[k] = t;
        if (t == 0) continue;
        for (std::size_t j = 0; j < h.size(); ++j) mpz_submul(r[k + j].get_mpz_t(), t.get_mpz_t(), h[j].get_mpz_t());
    }
    zreduce(r, m);
    zreduce(q, m);
}

ZPoly lift_poly(const modp::Poly& a)
{
    ZPoly out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = Integer(a[i]);
    return out;
}

// s*a + t*b = 1 over F_p.
void xgcd_modp(const modp::Poly& a, const modp::Poly& b, std::uint64_t p, modp::Poly& s, modp::Poly& t)
{
    using modp::multiply;
    auto sub = [&](const modp::Poly& x, const modp::Poly& y) {
        modp::Poly out(std::max(x.size(), y.size()), 0);
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
        for (std::size_t i = 0; i < y.size(); ++i) out[i] = (out[i] + p - y[i]) % p;
        while (!out.empty() && out.back() == 0) out.pop_back();
        return out;
    };
    modp::Poly r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        // q = r0 / r1
        modp::Poly q, r = r0;
        const std::uint64_t inv = modp::inverse(r1.back(), p);
        if (r.size() >= r1.size()) {
            q.assign(r.size() - r1.size() + 1, 0);
            for (std::size_t k = q.size(); k-- > 0;) {
                const std::uint64_t c = r[k + r1.size() - 1] * inv % p;
                q[k] = c;
                for (std::size_t j = 0; j < r1.size(); ++j) r[k + j] = (r[k + j] + p - c * r1[j] % p) % p;
            }
            while (!r.empty() && r.back() == 0) r.pop_back();
            while (!q.empty() && q.back() == 0) q.pop_back();
        }
        modp::Poly s2 = sub(s0, multiply(q, s1, p));
        modp::Poly t2 = sub(t0, multiply(q, t1, p));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.size() != 1) raise(ErrorKind::Certification, "Hensel factors are not coprime modulo p");
    const std::uint64_t inv = modp::inverse(r0[0], p);
    for (auto& c : s0) c = c * inv % p;
    for (auto& c : t0) c = c * inv % p;
    s = std::move(s0);
    t = std::move(t0);
}

modp::Poly product_modp(const std::vector<modp::Poly>& fs, std::size_t lo, std::size_t hi, std::uint64_t p)
{
    modp::Poly acc{1};
    for (std::size_t i = lo; i < hi; ++i) acc = modp::multiply(acc, fs[i], p);
    return acc;
}

void lift_tree(const ZPoly& F, const std::vector<modp::Poly>& factors, std::size_t lo, std::size_t hi,
               std::uint64_t p, const Integer& pk, std::vector<ZPoly>& out)
{
    if (hi - lo == 1) {
        Integer lc_inv;
        mpz_invert(lc_inv.get_mpz_t(), F.back().get_mpz_t(), pk.get_mpz_t());
        ZPoly monic = F;
        for (auto& c : monic) c *= lc_inv;
        zreduce(monic, pk);
        out[lo] = std::move(monic);
        return;
    }
    const std::size_t mid = lo + (hi - lo) / 2;
    const std::uint64_t lc_p = mpz_fdiv_ui(F.back().get_mpz_t(), p);
    modp::Poly g0 = product_modp(factors, lo, mid, p);
    for (auto& c : g0) c = c * lc_p % p;
    modp::Poly h0 = product_modp(factors, mid, hi, p);
    modp::Poly s0, t0;
    xgcd_modp(g0, h0, p, s0, t0);

    ZPoly g = lift_poly(g0), h = lift_poly(h0), s = lift_poly(s0), t = lift_poly(t0);
    Integer m = p;
    while (m < pk) {
        Integer next = m * m;
        if (next > pk) next = pk;
        ZPoly f = F;
        zreduce(f, next);
        ZPoly e = zadd(f, zmul(g, h, next), next, -1);
        ZPoly q, r;
        zdivmod(zmul(s, e, next), h, next, q, r);
        ZPoly g1 = zadd(zadd(g, zmul(t, e, next), next), zmul(q, g, next), next);
        ZPoly h1 = zadd(h, r, next);
        ZPoly b = zadd(zadd(zmul(s, g1, next), zmul(t, h1, next), next), ZPoly{Integer(1)}, next, -1);
        ZPoly c, dd;
        zdivmod(zmul(s, b, next), h1, next, c, dd);
        ZPoly s1 = zadd(s, dd, next, -1);
        ZPoly t1 = zadd(zadd(t, zmul(t, b, next), next, -1), zmul(c, g1, next), next, -1);
        g = std::move(g1);
        h = std::move(h1);
        s = std::move(s1);
        t = std::move(t1);
        m = next;
    }
    // g carries the leading coefficient of F modulo p^k.
    g.resize(F.size() - h.size() + 1, Integer(0));
    g.back() = F.back();
    zreduce(g, pk);
    lift_tree(g, factors, lo, mid, p, pk, out);
    lift_tree(h, factors, mid, hi, p, pk, out);
}

Integer symmetric(const Integer& x, const Integer& m)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    if (2 * r > m) r -= m;
    return r;
}

bool squarefree_modp(const modp::Poly& f, std::uint64_t p)
{
    modp::Poly df;
    for (std::size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * (i % p) % p);
    while (!df.empty() && df.back() == 0) df.pop_back();
    if (df.empty()) return false;
    return modp::gcd(f, df, p).size() == 1;
}

bool is_prime_u64(std::uint64_t n)
{
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

std::vector<std::vector<Integer>> hensel_lift(const IntPolynomial& f, const std::vector<modp::Poly>& factors,
                                              std::uint64_t p, unsigned k)
{
    Integer pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p, k);
    std::vector<ZPoly> out(factors.size());
    if (factors.empty()) return out;
    ZPoly F = f.coeffs();
    zreduce(F, pk);
    lift_tree(F, factors, 0, factors.size(), p, pk, out);
    return out;
}

std::vector<IntPolynomial> zassenhaus_factor(const IntPolynomial& f_in)
{
    IntPolynomial f = f_in.primitive_part();
    const long n = f.degree();
    if (n <= 1) return {f};

    // Candidate primes: small primes congruent to 1 mod n (these often keep
    // binomials irreducible), then the smallest odd primes.
    std::vector<std::uint64_t> candidates;
    for (std::uint64_t q = std::uint64_t(n) + 1; candidates.size() < 6 && q < 200000; q += std::uint64_t(n))
        if (is_prime_u64(q) && q > 2) candidates.push_back(q);
    for (std::uint64_t q = 3; candidates.size() < 14; q += 2)
        if (is_prime_u64(q)) candidates.push_back(q);

    std::uint64_t best_p = 0;
    std::vector<modp::Poly> best;
    for (std::uint64_t p : candidates) {
        if (mpz_divisible_ui_p(f.leading().get_mpz_t(), p)) continue;
        modp::Poly fp = modp::reduce(f, p);
        if (!squarefree_modp(fp, p)) continue;
        auto fs = modp::factor_squarefree(fp, p);
        if (best_p == 0 || fs.size() < best.size()) {
            best_p = p;
            best = std::move(fs);
        }
        if (best.size() == 1) return {f};
    }
    if (best_p == 0) raise(ErrorKind::Resource,
                           "no good reduction prime found for " + f.to_string());

    // Landau-Mignotte: every factor g has |g|_inf <= 2^deg |f|_2; the
    // recombined lc(f)*g/lc(g) needs p^k > 2 lc(f) 2^n |f|_2.
    Integer norm2 = 0;
    for (const auto& c : f.coeffs()) norm2 += c * c;
    Integer norm = sqrt(norm2) + 1;
    Integer bound = 2 * abs(f.leading()) * norm;
    mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), n);
    unsigned k = 1;
    Integer pk = best_p;
    while (pk <= bound) {
        pk *= best_p;
        ++k;
    }

    std::vector<ZPoly> lifted = hensel_lift(f, best, best_p, k);

    std::vector<IntPolynomial> result;
    std::vector<std::size_t> alive(lifted.size());
    for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;
    IntPolynomial rest = f;

    for (std::size_t s = 1; 2 * s <= alive.size(); ++s) {
        bool found = true;
        while (found && 2 * s <= alive.size()) {
            found = false;
            std::vector<std::size_t> pick(s);
            for (std::size_t i = 0; i < s; ++i) pick[i] = i;
            for (;;) {
                ZPoly g{rest.leading()};
                for (std::size_t i : pick) g = zmul(g, lifted[alive[i]], pk);
                std::vector<Integer> sym(g.size());
                for (std::size_t i = 0; i < g.size(); ++i) sym[i] = symmetric(g[i], pk);
                IntPolynomial cand = IntPolynomial(std::move(sym)).primitive_part();
                if (cand.degree() >= 1) {
                    if (auto q = IntPolynomial::exact_divide(rest, cand)) {
                        result.push_back(cand);
                        rest = q->primitive_part();
                        std::vector<std::size_t> next;
                        for (std::size_t i = 0, j = 0; i < alive.size(); ++i) {
                            if (j < s && pick[j] == i) {
                                ++j;
                                continue;
                            }
                            next.push_back(alive[i]);
                        }
                        alive = std::move(next);
                        found = true;
                        break;
                    }
                }
                // next combination
                std::size_t i = s;
                while (i > 0 && pick[i - 1] == alive.size() - s + i - 1) --i;
                if (i == 0) break;
                ++pick[i - 1];
                for (std::size_t j = i; j < s; ++j) pick[j] = pick[j - 1] + 1;
            }
        }
    }
    if (rest.degree() >= 1) result.push_back(rest);
    std::sort(result.begin(), result.end(), factor_order);
    return result;
}

}  // namespace orbit_integra
