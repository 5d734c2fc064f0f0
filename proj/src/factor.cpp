#include "ecs/factor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ecs {

namespace {

constexpr unsigned long kTrialBound = 1000000;

const std::vector<unsigned long>& small_primes() {
    static const std::vector<unsigned long> primes = [] {
        std::vector<bool> composite(kTrialBound + 1, false);
        std::vector<unsigned long> out;
        for (unsigned long i = 2; i <= kTrialBound; ++i) {
            if (composite[i]) continue;
            out.push_back(i);
            for (unsigned long j = i * i; j <= kTrialBound; j += i) composite[j] = true;
        }
        return out;
    }();
    return primes;
}

// Strong probable prime test to base a (a not a multiple of n).
bool strong_probable_prime(const BigInt& n, const BigInt& a, const BigInt& d, unsigned long s) {
    BigInt x = mod_pow(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = mod_floor(x * x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// One Brent rho round with polynomial x^2 + c. Returns a nontrivial factor or n.
BigInt brent_rho(const BigInt& n, unsigned long c) {
    BigInt y = 2, r = 1, q = 1, g = 1, x, ys;
    const unsigned long m = 128;
    while (g == 1) {
        x = y;
        for (BigInt i = 0; i < r; ++i) y = mod_floor(y * y + c, n);
        BigInt k = 0;
        while (k < r && g == 1) {
            ys = y;
            BigInt limit = r - k;
            if (limit > m) limit = m;
            for (BigInt i = 0; i < limit; ++i) {
                y = mod_floor(y * y + c, n);
                q = mod_floor(q * abs(x - y), n);
            }
            g = gcd(q, n);
            k += m;
        }
        r *= 2;
    }
    if (g == n) {
        // Backtrack one step at a time.
        do {
            ys = mod_floor(ys * ys + c, n);
            g = gcd(abs(x - ys), n);
        } while (g == 1);
    }
    return g;
}

void factor_into(const BigInt& n, std::map<BigInt, unsigned>& acc) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++acc[n];
        return;
    }
    // Deterministic parameter sweep keeps the factorization reproducible.
    for (unsigned long c = 1;; ++c) {
        const BigInt g = brent_rho(n, c);
        if (g != n && g != 1) {
            factor_into(g, acc);
            factor_into(n / g, acc);
            return;
        }
    }
}

}  // namespace

bool is_probable_prime(const BigInt& n) {
    if (n < 2) return false;
    static const unsigned long witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (unsigned long w : witnesses) {
        if (n == w) return true;
        if (n % w == 0) return false;
    }
    BigInt d = n - 1;
    unsigned long s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (unsigned long w : witnesses) {
        if (!strong_probable_prime(n, BigInt(w), d, s)) return false;
    }
    return true;
}

PrimeFactorization factor_integer(const BigInt& n) {
    if (n == 0) throw std::domain_error("factor_integer(0)");
    PrimeFactorization out;
    out.sign = n < 0 ? -1 : 1;
    BigInt m = abs(n);
    std::map<BigInt, unsigned> acc;
    for (unsigned long p : small_primes()) {
        if (m == 1) break;
        if (BigInt(p) * p > m) break;
        while (m % p == 0) {
            ++acc[BigInt(p)];
            m /= p;
        }
    }
    if (m > 1) factor_into(m, acc);
    out.factors.assign(acc.begin(), acc.end());
    return out;
}

BigInt PrimeFactorization::reassemble() const {
    BigInt n = sign;
    for (const auto& [p, e] : factors) n *= pow_int(p, e);
    return n;
}

std::vector<BigInt> prime_divisors(const BigInt& n) {
    const PrimeFactorization f = factor_integer(n);
    std::vector<BigInt> out;
    out.reserve(f.factors.size());
    for (const auto& [p, e] : f.factors) out.push_back(p);
    return out;
}

bool is_s_unit(const BigInt& n, const std::vector<BigInt>& s) {
    if (n == 0) throw std::domain_error("is_s_unit(0)");
    BigInt m = abs(n);
    for (const BigInt& p : s) {
        while (m % p == 0) m /= p;
    }
    return m == 1;
}

bool is_squarefree(const BigInt& n) {
    if (n == 0) return false;
    const PrimeFactorization f = factor_integer(n);
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](const auto& pe) { return pe.second == 1; });
}

}  // namespace ecs
