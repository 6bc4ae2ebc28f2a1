#include "hypercount/arith.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>

namespace hypercount {

namespace {

int jacobi_unsigned(u64 a, u64 n) {
    // n odd, a in [0, n)
    int t = 1;
    while (a != 0) {
        while ((a & 1) == 0) {
            a >>= 1;
            const u64 r = n & 7;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if ((a & 3) == 3 && (n & 3) == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

u64 residue(i64 d, u64 m) {
    if (d >= 0) return static_cast<u64>(d) % m;
    const u64 r = (static_cast<u64>(-(d + 1)) + 1) % m;
    return r == 0 ? 0 : m - r;
}

} // namespace

int jacobi(i64 a, i64 n) {
    if (n <= 0 || (n & 1) == 0) throw std::invalid_argument("jacobi: modulus must be odd and positive");
    return jacobi_unsigned(residue(a, static_cast<u64>(n)), static_cast<u64>(n));
}

int kronecker(i64 d, i64 n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int result = 1;
    u64 m;
    if (n < 0) {
        if (d < 0) result = -result;
        m = static_cast<u64>(-(n + 1)) + 1;
    } else {
        m = static_cast<u64>(n);
    }
    const int v = std::countr_zero(m);
    if (v > 0) {
        if ((d & 1) == 0) return 0;
        const i64 r = mod_floor(d, 8);
        const int k2 = (r == 1 || r == 7) ? 1 : -1;
        if (v & 1) result *= k2;
        m >>= v;
    }
    if (m == 1) return result;
    return result * jacobi_unsigned(residue(d, m), m);
}

Factorization factorize(u64 n) {
    constexpr u64 limit = (u64{1} << 63) - 1;
    if (n == 0 || n > limit)
        throw std::out_of_range("factorize: input must lie in [1, 2^63 - 1], got " + std::to_string(n));
    Factorization f;
    f.n = n;
    auto pull = [&](u64 p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.factors.push_back({p, e});
    };
    pull(2);
    pull(3);
    for (u64 p = 5; p <= n / p; p += 6) {
        pull(p);
        pull(p + 2);
    }
    if (n > 1) f.factors.push_back({n, 1});
    return f;
}

Rational nu(u64 n) {
    Rational r = 1;
    for (const auto& [p, e] : factorize(n).factors) {
        boost::multiprecision::cpp_int fact = 1;
        for (unsigned k = 2; k <= e; ++k) fact *= k;
        r /= fact;
    }
    return r;
}

u64 divisor_count(u64 n) {
    u64 count = 1;
    for (const auto& pe : factorize(n).factors) count *= pe.exponent + 1;
    return count;
}

std::vector<u64> divisors(u64 n) {
    std::vector<u64> out{1};
    for (const auto& [p, e] : factorize(n).factors) {
        const std::size_t base = out.size();
        u64 pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

unsigned omega_big(u64 n) {
    unsigned total = 0;
    for (const auto& pe : factorize(n).factors) total += pe.exponent;
    return total;
}

unsigned omega_small(u64 n) {
    return static_cast<unsigned>(factorize(n).factors.size());
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    const auto f = factorize(n);
    return f.factors.size() == 1 && f.factors[0].exponent == 1;
}

bool is_squarefree(u64 n) {
    if (n == 0) return false;
    for (const auto& pe : factorize(n).factors)
        if (pe.exponent > 1) return false;
    return true;
}

bool is_odd_squarefree_discriminant(i64 d) {
    return d < 0 && mod_floor(d, 4) == 1 && is_squarefree(static_cast<u64>(-d));
}

std::vector<u64> primes_up_to(u64 n) {
    std::vector<u64> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(n + 1, false);
    for (u64 i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= n; j += i) composite[j] = true;
    }
    return primes;
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 sqrt_mod_prime(u64 a, u64 p) {
    a %= p;
    if (a == 0) return 0;
    if (p == 2) return a;
    if (powmod(a, (p - 1) / 2, p) != 1) throw std::invalid_argument("sqrt_mod_prime: not a quadratic residue");
    if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
    u64 q = p - 1;
    unsigned s = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++s;
    }
    u64 z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
    u64 c = powmod(z, q, p);
    u64 r = powmod(a, (q + 1) / 2, p);
    u64 t = powmod(a, q, p);
    unsigned m = s;
    while (t != 1) {
        unsigned i = 0;
        u64 t2 = t;
        while (t2 != 1) {
            t2 = mulmod(t2, t2, p);
            ++i;
        }
        u64 b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = mulmod(b, b, p);
        r = mulmod(r, b, p);
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        m = i;
    }
    return r;
}

ExtGcd ext_gcd(i64 a, i64 b) {
    i64 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const i64 q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

} // namespace hypercount
