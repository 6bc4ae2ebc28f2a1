#include "doctest.h"

#include <map>
#include <random>

#include "hypercount/arith.hpp"

using namespace hypercount;

namespace {

// Kronecker symbol from its defining pieces: Euler's criterion at odd primes,
// the residue of d mod 8 at 2, the sign at -1.
int kronecker_oracle(i64 d, i64 n) {
    if (n == 0) return (d == 1 || d == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (d < 0) sign = -1;
    }
    int out = sign;
    for (i64 p = 2; n > 1; ++p) {
        while (n % p == 0) {
            n /= p;
            int v;
            if (p == 2) {
                if (d % 2 == 0) v = 0;
                else v = (mod_floor(d, 8) == 1 || mod_floor(d, 8) == 7) ? 1 : -1;
            } else {
                const i64 r = mod_floor(d, p);
                if (r == 0) v = 0;
                else {
                    v = -1;
                    for (i64 x = 1; x < p; ++x)
                        if (x * x % p == r) v = 1;
                }
            }
            out *= v;
        }
    }
    return out;
}

} // namespace

TEST_CASE("kronecker examples") {
    CHECK(kronecker(-7, 1) == 1);
    CHECK(kronecker(5, 2) == -1);
    CHECK(kronecker(-3, 2) == -1);
    CHECK(kronecker(-15, 2) == 1);
    CHECK(kronecker(1, 0) == 1);
    CHECK(kronecker(-1, 0) == 1);
    CHECK(kronecker(5, 0) == 0);
}

TEST_CASE("kronecker agrees with a brute-force table") {
    for (i64 d : {-3, -7, -15, -23, -35, -39, 5, 13, 21, -4, 8, 12})
        for (i64 n = -60; n <= 60; ++n) CHECK_MESSAGE(kronecker(d, n) == kronecker_oracle(d, n), d << " " << n);
}

TEST_CASE("kronecker is completely multiplicative") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<i64> D(-500, 500), N(1, 10000);
    for (int i = 0; i < 3000; ++i) {
        const i64 d = D(rng), n = N(rng), m = N(rng);
        CHECK(kronecker(d, n * m) == kronecker(d, n) * kronecker(d, m));
    }
}

TEST_CASE("character sums vanish and the sign is right") {
    for (i64 d = -3; d >= -200; d -= 4) {
        if (!is_odd_squarefree_discriminant(d)) continue;
        i64 s = 0;
        for (i64 n = 0; n < -d; ++n) s += kronecker(d, n);
        CHECK(s == 0);
        CHECK(kronecker(d, -1) == -1);
    }
}

TEST_CASE("factorize") {
    CHECK(factorize(1).factors.empty());
    const auto f12 = factorize(12).factors;
    REQUIRE(f12.size() == 2);
    CHECK(f12[0] == PrimePower{2, 2});
    CHECK(f12[1] == PrimePower{3, 1});
    const auto f = factorize(9973).factors;
    REQUIRE(f.size() == 1);
    CHECK(f[0] == PrimePower{9973, 1});
    CHECK_THROWS_AS(factorize(0), std::out_of_range);
    CHECK_THROWS_AS(factorize(u64(1) << 63), std::out_of_range);
    for (u64 n = 1; n <= 3000; ++n) {
        u64 prod = 1;
        u64 last = 0;
        for (const auto& pp : factorize(n).factors) {
            CHECK(pp.prime > last);
            last = pp.prime;
            for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
        }
        CHECK(prod == n);
    }
}

TEST_CASE("nu and ordered prime factorizations") {
    CHECK(nu(1) == 1);
    CHECK(nu(8) == Rational(1, 6));
    CHECK(nu(12) == Rational(1, 2));
    // ordered[n] = number of ordered tuples of primes with product n
    const u64 N = 10000;
    std::vector<u64> ordered(N + 1, 0);
    ordered[1] = 1;
    const auto primes = primes_up_to(N);
    for (u64 n = 2; n <= N; ++n)
        for (u64 p : primes) {
            if (p > n) break;
            if (n % p == 0) ordered[n] += ordered[n / p];
        }
    for (u64 n = 1; n <= N; ++n) {
        const unsigned k = omega_big(n);
        Rational kf = 1;
        for (unsigned j = 2; j <= k; ++j) kf *= j;
        const Rational v = kf * nu(n);
        REQUIRE(denominator(v) == 1);
        CHECK(v == Rational(ordered[n]));
    }
}

TEST_CASE("divisors") {
    CHECK(divisor_count(1) == 1);
    CHECK(divisors(6) == std::vector<u64>{1, 2, 3, 6});
    CHECK(divisors(1) == std::vector<u64>{1});
    CHECK(omega_big(12) == 3);
    for (u64 n = 1; n <= 2000; ++n) {
        std::vector<u64> brute;
        for (u64 k = 1; k <= n; ++k)
            if (n % k == 0) brute.push_back(k);
        CHECK(divisors(n) == brute);
        CHECK(divisor_count(n) == brute.size());
    }
}

TEST_CASE("modular square roots") {
    for (u64 p : primes_up_to(400)) {
        if (p == 2) continue;
        for (u64 a = 1; a < p; ++a)
            if (jacobi(static_cast<i64>(a), static_cast<i64>(p)) == 1) {
                const u64 r = sqrt_mod_prime(a, p);
                CHECK(r * r % p == a);
            }
    }
}
