#include "doctest.h"

#include <cmath>

#include "hypercount/theta.hpp"

using namespace hypercount;

namespace {

// Representations of n by f, counted over a box large enough for n.
i64 representations(const QuadForm& f, i64 n) {
    const i64 d = -f.disc();
    const i64 B = static_cast<i64>(std::sqrt(4.0 * double(f.c) * double(n) / double(d))) + 2;
    i64 r = 0;
    for (i64 x = -B * 4; x <= B * 4; ++x)
        for (i64 y = -B; y <= B; ++y)
            if (f(x, y) == n) ++r;
    return r;
}

double lambda_oracle(const ClassCharacter& chi, i64 n) {
    const auto& G = chi.group();
    const int w = G.disc() == -3 ? 6 : 2;
    std::complex<double> s = 0;
    for (std::size_t k = 0; k < G.order(); ++k) s += chi.value(k) * double(representations(G.forms()[k], n) / w);
    return s.real();
}

} // namespace

TEST_CASE("small coefficients") {
    auto G15 = std::make_shared<const ClassGroup>(-15);
    const ClassCharacter triv(G15, GeneralCharacter{{0}});
    const ClassCharacter gen(G15, GenusCharacter{5, -3});
    CHECK(lambda(triv, 1) == 1);
    CHECK(lambda(gen, 2) == -2);
    CHECK(lambda(gen, 4) == 3);
    CHECK(lambda(triv, 4) == 3);
    CHECK(lambda(gen, 3) == -1);
    CHECK_THROWS_AS(lambda(gen, 0), std::invalid_argument);
    CHECK(lambda_zero(triv) == Rational(1));
    CHECK(lambda_zero(gen) == 0);
    auto G3 = std::make_shared<const ClassGroup>(-3);
    CHECK(lambda_zero(ClassCharacter(G3, GeneralCharacter{{}})) == Rational(1, 6));
}

TEST_CASE("coefficients agree with representation numbers") {
    for (i64 d : {-3, -7, -15, -23, -35, -39, -47, -71, -87}) {
        auto G = std::make_shared<const ClassGroup>(d);
        for (const auto& chi : all_characters(G))
            for (i64 n = 1; n <= 200; ++n) CHECK_MESSAGE(lambda(chi, n) == doctest::Approx(lambda_oracle(chi, n)).epsilon(1e-9), d << " " << chi.id() << " " << n);
    }
}

TEST_CASE("table route, prime route and direct route agree") {
    for (i64 d : {-23, -39, -55, -95, -119}) {
        auto G = std::make_shared<const ClassGroup>(d);
        const IdealCountTable table(G, 3000);
        for (const auto& chi : all_characters(G)) {
            const auto th = theta_coefficients(chi, table);
            const auto direct = theta_coefficients(chi, 3000);
            CHECK(th.max_imag < 1e-9);
            REQUIRE(th.coeffs.size() == 3001);
            for (i64 n = 1; n <= 3000; n += 7) CHECK(th.coeffs[n] == doctest::Approx(direct.coeffs[n]).epsilon(1e-9));
            for (u64 p : primes_up_to(2000)) CHECK(lambda_prime(chi, i64(p)) == doctest::Approx(th.coeffs[p]).epsilon(1e-9));
        }
        for (i64 n = 1; n <= 500; ++n) {
            const auto counts = ideal_class_counts(*G, n);
            for (std::size_t k = 0; k < G->order(); ++k) {
                // classes of an ideal and its conjugate carry the same count
                CHECK(counts[k] == counts[G->inverse(k)]);
                CHECK(counts[k] == table.count(n, k));
            }
        }
    }
}

TEST_CASE("checks pass on a sample and catch a corrupted table") {
    auto G = std::make_shared<const ClassGroup>(-39);
    for (const auto& chi : all_characters(G)) {
        auto th = theta_coefficients(chi, 2000);
        CHECK(check_basics(th).ok);
        CHECK(check_hecke_relations(th).ok);
        th.coeffs[6] += 0.5;
        CHECK_FALSE(check_hecke_relations(th).ok);
    }
    CHECK(check_kronecker_factorization(-39, -3, 13, 3000).ok);
    CHECK(check_kronecker_factorization(-39, 13, -3, 3000).ok);
    CHECK_THROWS_AS(check_kronecker_factorization(-39, 3, -13, 100), std::invalid_argument);
}
