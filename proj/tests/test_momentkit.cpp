#include "doctest.h"

#include <cmath>
#include <random>

#include "hypercount/momentkit.hpp"
#include "hypercount/theta.hpp"

using namespace hypercount;

namespace {

// Ballot numbers: paths of length a with steps +-1 ending at height c and never below 0.
i64 ballot(int a, int c) {
    if ((a - c) % 2 != 0) return 0;
    std::vector<std::vector<i64>> binom(a + 1, std::vector<i64>(a + 1, 0));
    for (int n = 0; n <= a; ++n) {
        binom[n][0] = 1;
        for (int k = 1; k <= n; ++k) binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0);
    }
    const int j = (a - c) / 2;
    return binom[a][j] - (j > 0 ? binom[a][j - 1] : 0);
}

// Sum over all ordered k-tuples of primes, no grouping at all.
double ordered_power(const std::vector<i64>& primes, const std::map<i64, double>& b, const std::map<i64, double>& lam, int k) {
    double total = 0;
    std::vector<std::size_t> idx(k, 0);
    while (true) {
        double term = 1;
        for (std::size_t i : idx) term *= b.at(primes[i]) * lam.at(primes[i]) / std::sqrt(double(primes[i]));
        total += term;
        int pos = k - 1;
        while (pos >= 0 && ++idx[pos] == primes.size()) idx[pos--] = 0;
        if (pos < 0) break;
    }
    return total;
}

} // namespace

TEST_CASE("h coefficients") {
    CHECK(h_coeff_exact(2, 0) == 1);
    CHECK(h_coeff_exact(2, 2) == 1);
    CHECK(h_coeff_exact(3, 1) == 2);
    CHECK(h_coeff_exact(4, 0) == 2);
    for (int a = 1; a <= 19; a += 2) CHECK(h_coeff_exact(a, 0) == 0);
    for (int a = 0; a <= 40; ++a)
        for (int c = 0; c <= a; ++c) {
            CHECK(h_coeff_exact(a, c) == ballot(a, c));
            if (a <= 20) {
                const auto h = h_coeff(a, c);
                CHECK(h.exact >= 0);
                CHECK(h.exact <= (i64(1) << (a + 1)));
                CHECK(std::abs(h.quadrature - double(h.exact)) <= 1e-10 * std::max(1.0, double(h.exact)));
            }
        }
    CHECK_THROWS_AS(h_coeff_exact(61, 0), std::invalid_argument);
    CHECK_THROWS_AS(h_coeff_exact(3, 4), std::invalid_argument);
}

TEST_CASE("chebyshev powers reproduce lambda(p)^a") {
    for (double l : {-2.0, -1.3, 0.0, 0.7, 2.0}) {
        const auto lam = chebyshev_powers(l, 12);
        CHECK(lam[0] == 1);
        CHECK(lam[1] == l);
        for (int a = 0; a <= 12; ++a) {
            double s = 0;
            for (int c = 0; c <= a; ++c) s += double(h_coeff_exact(a, c)) * lam[c];
            CHECK(s == doctest::Approx(std::pow(l, a)).epsilon(1e-9).scale(1));
        }
    }
}

TEST_CASE("g_xi against theta coefficients") {
    auto G = std::make_shared<const ClassGroup>(-23);
    for (const auto& chi : all_characters(G))
        for (i64 p : {2, 3, 5, 23, 29}) {
            for (int a = 0; a <= 4; ++a) {
                double direct = 0;
                i64 pc = 1;
                for (int c = 0; c <= a; ++c, pc *= p)
                    direct += double(h_coeff_exact(a, c)) / std::sqrt(double(pc)) * lambda(chi, pc);
                CHECK(g_xi(chi, p, a) == doctest::Approx(direct).epsilon(1e-9));
            }
        }
    CHECK_THROWS_AS(g_xi(ClassCharacter(G, GeneralCharacter{{0}}), 4, 1), std::invalid_argument);
}

TEST_CASE("power expansion against ordered tuples") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> B(-4, 4), L(-2, 2);
    for (int trial = 0; trial < 40; ++trial) {
        const i64 lo = 10 + i64(rng() % 50), hi = lo + 5 + i64(rng() % 30);
        const int k = 1 + int(rng() % 4);
        std::map<i64, double> b;
        SymbolicEigenvalues lam;
        std::vector<i64> primes;
        for (u64 p : primes_up_to(u64(hi)))
            if (i64(p) > lo) {
                primes.push_back(i64(p));
                b[i64(p)] = B(rng);
                lam.lambda[i64(p)] = L(rng);
            }
        if (primes.empty()) continue;
        const auto rep = p_expand_identity(lo, hi, b, lam, k);
        CHECK(rep.ok);
        CHECK(rep.rhs == doctest::Approx(ordered_power(primes, b, lam.lambda, k)).epsilon(1e-9).scale(1));
    }
    std::map<i64, double> b{{11, 5.0}, {13, 1.0}};
    SymbolicEigenvalues lam{{{11, 1.0}, {13, 1.0}}};
    CHECK_THROWS_AS(p_expand_identity(10, 13, b, lam, 2), std::invalid_argument);
    std::map<i64, double> many;
    SymbolicEigenvalues lm;
    for (u64 p : primes_up_to(5000)) many[i64(p)] = 1, lm.lambda[i64(p)] = 1;
    CHECK_THROWS_AS(p_expand_identity(1, 5000, many, lm, 4, 1e-9, 1000), std::length_error);
}

TEST_CASE("interval schedule") {
    const auto rec = schedule_recurrence(20, 10);
    REQUIRE(rec.size() >= 2);
    CHECK(rec[0] == 400);
    const auto s = schedule(20, 10);
    CHECK(s.N == std::vector<i64>{400, 120});
    double recip = 0;
    for (std::size_t r = 0; r < s.R(); ++r) {
        CHECK(s.N[r] > 100);
        if (r) CHECK(s.N[r] < s.N[r - 1]);
        CHECK(s.N[r] % 2 == 0);
        recip += 1.0 / double(s.N[r]);
    }
    CHECK(s.reciprocal_sum == doctest::Approx(recip));
    const auto [lo1, hi1] = s.log_interval(1);
    CHECK(lo1 == doctest::Approx(14 * std::log(2.0)));
    CHECK(lo1 < hi1);
    const auto [lo2, hi2] = s.log_interval(2);
    CHECK(lo2 == doctest::Approx(hi1));
    CHECK(hi2 > lo2);
    CHECK_THROWS_AS(s.log_interval(3), std::out_of_range);
    CHECK_THROWS_AS(schedule(1, 10), std::invalid_argument);
    CHECK_THROWS_AS(schedule(20, 1), std::invalid_argument);
}

TEST_CASE("prime sums") {
    const auto rows = mertens_rows({1e3, 1e5, 1e7});
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) CHECK(std::abs(r.drift) < 0.01);

    auto G = std::make_shared<const ClassGroup>(-23);
    auto H = std::make_shared<const ClassGroup>(-15);
    const auto cg = all_characters(G);
    const auto ch = all_characters(H);
    CHECK(orthogonality_coefficient(cg[0], cg[0]) == 2);
    CHECK(orthogonality_coefficient(cg[1], cg[2]) == 1);
    CHECK(orthogonality_coefficient(cg[1], cg[1]) == 1);
    CHECK(orthogonality_coefficient(cg[0], cg[1]) == 0);
    CHECK(orthogonality_coefficient(cg[0], ch[0]) == 1);
    CHECK(orthogonality_coefficient(ch[1], ch[1]) == 2);
    CHECK(orthogonality_coefficient(ch[0], ch[1]) == 0);
    // (5, -3) on -15 and (5, -7) on -35 share the factor 5
    auto K = std::make_shared<const ClassGroup>(-35);
    CHECK(genus_overlap(ch[1], ClassCharacter(K, GenusCharacter{5, -7})) == 1);

    const std::vector<double> grid{1e2, 1e4, 1e6};
    const auto series = orthogonality_series(cg[1], cg[2], grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(series[i].x == grid[i]);
        CHECK(series[i].sum == doctest::Approx(orthogonality_sum(cg[1], cg[2], grid[i])));
        double direct = 0;
        if (grid[i] <= 1e4) {
            for (u64 p : primes_up_to(u64(grid[i]))) direct += lambda(cg[1], i64(p)) * lambda(cg[2], i64(p)) / double(p);
            CHECK(series[i].sum == doctest::Approx(direct).epsilon(1e-9));
        }
    }
    // drift stays bounded as x grows
    CHECK(std::abs(series[2].drift - series[1].drift) < 0.2);
    CHECK_THROWS_AS(orthogonality_series(cg[0], cg[1], {2e8}), std::invalid_argument);
}

TEST_CASE("exponent tables") {
    auto G = std::make_shared<const ClassGroup>(-15);
    auto H = std::make_shared<const ClassGroup>(-35);
    const auto rep = theta_lower_bound(-15, -35);
    CHECK(rep.pairs == i64(G->order() * H->order()));
    CHECK(rep.ok);
    CHECK(rep.min_theta >= Rational(1, 4));
    for (const auto& a : all_characters(G))
        for (const auto& b : all_characters(H)) {
            const auto e = exponent_tables(a, b);
            CHECK(e.eta >= 0);
            CHECK(e.theta >= Rational(1, 4));
        }
    CHECK_THROWS_AS(exponent_tables(all_characters(G)[0], all_characters(G)[1]), std::invalid_argument);
    CHECK_THROWS_AS(theta_lower_bound(-15, -15), std::invalid_argument);
}

TEST_CASE("elementary inequalities") {
    const auto rep = elementary_inequalities(20000, 4);
    CHECK(rep.samples == 20000);
    CHECK(rep.violations == 0);
    CHECK(rep.min_slack_elementary >= -1e-12);
    CHECK(rep.min_slack_exptaylor >= -1e-12);
    CHECK(exptaylor_slack(0.54, 4) > 0);
    CHECK_THROWS_AS(exptaylor_slack(1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(exptaylor_slack(5.0, 4), std::invalid_argument);
}
