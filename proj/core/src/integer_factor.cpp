#include "orbit_integra/integer_factor.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>

#include "orbit_integra/errors.hpp"

namespace orbit_integra {

namespace {

std::vector<std::uint32_t> sieve(std::uint32_t bound)
{
    std::vector<bool> composite(bound + 1, false);
    std::vector<std::uint32_t> primes;
    for (std::uint32_t i = 2; i <= bound; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (std::uint64_t j = std::uint64_t(i) * i; j <= bound; j += i) composite[j] = true;
    }
    return primes;
}

// For odd p: n is divisible by p iff n * p^{-1} mod 2^64 <= (2^64 - 1) / p.
struct DivisibilityTable {
    std::vector<std::uint64_t> inverse;
    std::vector<std::uint64_t> limit;
};

const DivisibilityTable& divisibility_table(std::span<const std::uint32_t> primes)
{
    static const DivisibilityTable table = [&] {
        DivisibilityTable t;
        t.inverse.resize(primes.size());
        t.limit.resize(primes.size());
        for (std::size_t i = 0; i < primes.size(); ++i) {
            const std::uint64_t p = primes[i];
            if (p == 2) continue;
            std::uint64_t inv = p;
            for (int k = 0; k < 5; ++k) inv *= 2 - p * inv;
            t.inverse[i] = inv;
            t.limit[i] = ~std::uint64_t(0) / p;
        }
        return t;
    }();
    return table;
}

bool miller_rabin_witness(const Integer& n, const Integer& base, const Integer& d, unsigned long s)
{
    Integer x;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    const Integer n_minus_1 = n - 1;
    if (x == 1 || x == n_minus_1) return false;
    for (unsigned long r = 1; r < s; ++r) {
        x = (x * x) % n;
        if (x == n_minus_1) return false;
        if (x == 1) return true;
    }
    return true;
}

// Deterministic for n < 3317044064679887385961981 with these bases.
const Integer& mr_deterministic_limit()
{
    static const Integer limit("3317044064679887385961981");
    return limit;
}

Integer integer_root(const Integer& n, unsigned long k)
{
    Integer r;
    mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

// Returns (root, k) with n = root^k, k maximal; k == 1 when n is not a power.
std::pair<Integer, unsigned long> perfect_power(const Integer& n)
{
    if (n < 4 || !mpz_perfect_power_p(n.get_mpz_t())) return {n, 1};
    const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
    for (unsigned long k = bits; k >= 2; --k) {
        Integer r = integer_root(n, k);
        if (r < 2) continue;
        Integer back;
        mpz_pow_ui(back.get_mpz_t(), r.get_mpz_t(), k);
        if (back == n) {
            auto [rr, kk] = perfect_power(r);
            return {rr, kk * k};
        }
    }
    return {n, 1};
}

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t n)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b)
{
    while (b) {
        a %= b;
        std::swap(a, b);
    }
    return a;
}

// Brent-Pollard rho on machine words, same iteration schedule as below.
std::uint64_t pollard_brent64(std::uint64_t n, std::uint64_t budget)
{
    if (n % 2 == 0) return 2;
    for (std::uint64_t c = 1; c <= 8 && budget > 0; ++c) {
        std::uint64_t y = 2, x = 0, ys = 0, q = 1, g = 1, r = 1;
        const std::uint64_t m = 128;
        auto f = [&](std::uint64_t v) { return (mulmod64(v, v, n) + c) % n; };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                const std::uint64_t steps = std::min(m, r - k);
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = f(y);
                    q = mulmod64(q, x > y ? x - y : y - x, n);
                }
                g = gcd64(q, n);
                k += steps;
                if (budget <= steps) { budget = 0; break; }
                budget -= steps;
            }
            r *= 2;
        } while (g == 1 && budget > 0);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd64(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

// Brent's variant of Pollard rho. Returns a nontrivial divisor or 0.
Integer pollard_brent(const Integer& n, std::uint64_t budget)
{
    if (mpz_even_p(n.get_mpz_t())) return 2;
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
        const std::uint64_t f = pollard_brent64(mpz_get_ui(n.get_mpz_t()), budget);
        return Integer(static_cast<unsigned long>(f));
    }
    for (unsigned long c = 1; c <= 8 && budget > 0; ++c) {
        Integer y = 2, x, ys, q = 1, g = 1;
        std::uint64_t r = 1;
        const std::uint64_t m = 128;
        auto f = [&](const Integer& v) { return Integer((v * v + c) % n); };
        do {
            x = y;
            for (std::uint64_t i = 0; i < r; ++i) y = f(y);
            std::uint64_t k = 0;
            while (k < r && g == 1) {
                ys = y;
                const std::uint64_t steps = std::min(m, r - k);
                for (std::uint64_t i = 0; i < steps; ++i) {
                    y = f(y);
                    Integer diff = x - y;
                    q = (q * abs(diff)) % n;
                }
                g = gcd(q, n);
                k += steps;
                if (budget <= steps) { budget = 0; break; }
                budget -= steps;
            }
            r *= 2;
        } while (g == 1 && budget > 0);
        if (g == n) {
            do {
                ys = f(ys);
                g = gcd(Integer(abs(x - ys)), n);
            } while (g == 1);
        }
        if (g != 1 && g != n) return g;
    }
    return 0;
}

// Refines (base, exponent) pieces into a pairwise coprime family.
std::vector<FactorPiece> refine(std::vector<std::pair<Integer, unsigned long>> pending)
{
    std::map<Integer, unsigned long> base;
    while (!pending.empty()) {
        auto [b, e] = pending.back();
        pending.pop_back();
        if (b == 1 || e == 0) continue;
        bool merged = false;
        for (auto it = base.begin(); it != base.end(); ++it) {
            if (it->first == b) {
                it->second += e;
                merged = true;
                break;
            }
            Integer g = gcd(it->first, b);
            if (g == 1) continue;
            Integer k = it->first;
            unsigned long ek = it->second;
            base.erase(it);
            pending.emplace_back(g, ek);
            pending.emplace_back(Integer(k / g), ek);
            pending.emplace_back(g, e);
            pending.emplace_back(Integer(b / g), e);
            merged = true;
            break;
        }
        if (!merged) base.emplace(b, e);
    }
    std::vector<FactorPiece> out;
    out.reserve(base.size());
    for (auto& [b, e] : base) out.push_back({b, e, is_prime(b)});
    return out;
}

// Complete factorization of a machine-word cofactor by rho; false if the
// budget ran out on some composite piece.
bool factor_word(std::uint64_t r, std::vector<std::pair<Integer, unsigned long>>& pieces)
{
    std::vector<std::uint64_t> work{r};
    while (!work.empty()) {
        const std::uint64_t c = work.back();
        work.pop_back();
        if (c == 1) continue;
        const Integer ci(static_cast<unsigned long>(c));
        if (is_prime(ci)) {
            pieces.emplace_back(ci, 1);
            continue;
        }
        const std::uint64_t f = pollard_brent64(c, std::uint64_t(1) << 22);
        if (f == 0) return false;
        work.push_back(f);
        work.push_back(c / f);
    }
    return true;
}

std::vector<FactorPiece> factor_uncached(const Integer& n, FactorBudget budget)
{
    if (mpz_fits_ulong_p(n.get_mpz_t())) {
        Integer rest;
        std::vector<FactorPiece> found = trial_divide(n, rest, 1024);
        std::vector<std::pair<Integer, unsigned long>> pieces;
        for (auto& p : found) pieces.emplace_back(p.base, p.exponent);
        if (factor_word(mpz_get_ui(rest.get_mpz_t()), pieces)) return refine(std::move(pieces));
    }
    Integer rest;
    std::vector<FactorPiece> found = trial_divide(n, rest);
    std::vector<std::pair<Integer, unsigned long>> pieces;
    for (auto& p : found) pieces.emplace_back(p.base, p.exponent);

    std::vector<std::pair<Integer, unsigned long>> work;
    if (rest > 1) work.emplace_back(rest, 1);
    while (!work.empty()) {
        auto [c, e] = work.back();
        work.pop_back();
        if (c == 1) continue;
        Integer bound = Integer(kTrialDivisionBound) * kTrialDivisionBound;
        if (c < bound || is_prime(c)) {
            pieces.emplace_back(c, e);
            continue;
        }
        auto [root, k] = perfect_power(c);
        if (k > 1) {
            work.emplace_back(root, e * k);
            continue;
        }
        const std::size_t bits = mpz_sizeinbase(c.get_mpz_t(), 2);
        std::uint64_t iters = bits <= 256 ? budget.rho_iterations : budget.rho_iterations / 16;
        Integer f = pollard_brent(c, iters);
        if (f == 0) {
            pieces.emplace_back(c, e);
            continue;
        }
        work.emplace_back(f, e);
        work.emplace_back(Integer(c / f), e);
    }
    return refine(std::move(pieces));
}

}  // namespace

std::span<const std::uint32_t> small_primes()
{
    static const std::vector<std::uint32_t> primes = sieve(kTrialDivisionBound);
    return primes;
}

bool is_prime(const Integer& n)
{
    if (n < 2) return false;
    if (n < 4) return true;
    if (mpz_even_p(n.get_mpz_t())) return false;
    if (n <= kTrialDivisionBound) {
        auto primes = small_primes();
        return std::binary_search(primes.begin(), primes.end(), static_cast<std::uint32_t>(n.get_ui()));
    }
    static constexpr unsigned long bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
    for (unsigned long b : bases)
        if (mpz_divisible_ui_p(n.get_mpz_t(), b)) return false;
    if (n >= mr_deterministic_limit()) return mpz_probab_prime_p(n.get_mpz_t(), 24) > 0;
    Integer d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    for (unsigned long b : bases)
        if (miller_rabin_witness(n, Integer(b), d, s)) return false;
    return true;
}

unsigned long strip_factor(Integer& n, const Integer& p)
{
    return mpz_remove(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

std::vector<FactorPiece> trial_divide(const Integer& n, Integer& rest, std::uint32_t bound)
{
    std::vector<FactorPiece> out;
    rest = abs(n);
    const auto primes = small_primes();
    const DivisibilityTable& table = divisibility_table(primes);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const std::uint32_t p = primes[i];
        if (p > bound) break;
        const unsigned long square = static_cast<unsigned long>(p) * p;
        if (mpz_fits_ulong_p(rest.get_mpz_t())) {
            std::uint64_t r = mpz_get_ui(rest.get_mpz_t());
            if (p == 2) {
                const unsigned e = static_cast<unsigned>(std::countr_zero(r));
                if (e) {
                    r >>= e;
                    out.push_back({Integer(2), e, true});
                    rest = static_cast<unsigned long>(r);
                }
                continue;
            }
            // Native loop over the remaining primes.
            for (; i < primes.size(); ++i) {
                const std::uint64_t q = primes[i];
                if (q > bound || q * q > r) break;
                if (r * table.inverse[i] > table.limit[i]) continue;
                unsigned long e = 0;
                while (r * table.inverse[i] <= table.limit[i]) {
                    r *= table.inverse[i];
                    ++e;
                }
                out.push_back({Integer(static_cast<unsigned long>(q)), e, true});
            }
            rest = static_cast<unsigned long>(r);
            break;
        }
        if (mpz_cmp_ui(rest.get_mpz_t(), square) < 0) break;
        if (!mpz_divisible_ui_p(rest.get_mpz_t(), p)) continue;
        Integer pp = p;
        unsigned long e = strip_factor(rest, pp);
        out.push_back({pp, e, true});
    }
    if (rest > 1 && rest <= Integer(bound) * bound) {
        out.push_back({rest, 1, true});
        rest = 1;
    }
    std::sort(out.begin(), out.end(), [](const FactorPiece& a, const FactorPiece& b) { return a.base < b.base; });
    return out;
}

std::vector<FactorPiece> factor_integer(const Integer& n, FactorBudget budget)
{
    if (n == 0) raise(ErrorKind::Domain, "cannot factor 0");
    Integer key = abs(n);
    if (key == 1) return {};
    static std::mutex mutex;
    static std::map<Integer, std::vector<FactorPiece>> cache;
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto result = factor_uncached(key, budget);
    std::lock_guard lock(mutex);
    cache.emplace(key, result);
    return result;
}

}  // namespace orbit_integra
