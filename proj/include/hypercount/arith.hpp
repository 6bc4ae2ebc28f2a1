#pragma once

// Exact integer primitives shared by the rest of the library.

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hypercount {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using Rational = boost::multiprecision::cpp_rational;

struct PrimePower {
    u64 prime;
    unsigned exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Canonical prime factorization: primes strictly increasing.
struct Factorization {
    u64 n = 1;
    std::vector<PrimePower> factors;
};

/// Kronecker symbol (d/n), defined for every integer pair.
int kronecker(i64 d, i64 n);

/// Jacobi symbol (a/n) for odd n > 0.
int jacobi(i64 a, i64 n);

/// Trial division. Throws std::out_of_range unless 1 <= n <= 2^63 - 1.
Factorization factorize(u64 n);

/// nu(p^a) = 1/a!, extended multiplicatively.
Rational nu(u64 n);

u64 divisor_count(u64 n);
std::vector<u64> divisors(u64 n);
unsigned omega_big(u64 n);
/// Number of distinct prime factors.
unsigned omega_small(u64 n);

bool is_prime(u64 n);
bool is_squarefree(u64 n);
/// d < 0, d = 1 mod 4 and squarefree: the discriminants this library works with.
bool is_odd_squarefree_discriminant(i64 d);

/// Primes p <= n, ascending (sieve of Eratosthenes).
std::vector<u64> primes_up_to(u64 n);

u64 isqrt(u64 n);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);
/// Square root of a modulo an odd prime p, a a quadratic residue (Tonelli-Shanks).
u64 sqrt_mod_prime(u64 a, u64 p);

/// Returns (g, x, y) with a*x + b*y = g = gcd(a, b) >= 0.
struct ExtGcd {
    i64 g, x, y;
};
ExtGcd ext_gcd(i64 a, i64 b);

/// Non-negative remainder.
inline i64 mod_floor(i64 a, i64 m) {
    i64 r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace hypercount
