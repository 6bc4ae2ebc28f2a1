// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "hypercount/count.hpp"
#include "hypercount/kernel.hpp"
#include "hypercount/momentkit.hpp"
#include "hypercount/theta.hpp"

using namespace hypercount;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

std::vector<i64> discriminants(i64 lo, i64 hi) {
    std::vector<i64> out;
    for (i64 d = hi; d >= lo; --d)
        if (is_odd_squarefree_discriminant(d)) out.push_back(d);
    return out;
}

Outcome ac1() {
    const i64 a = count_general(PlanePoint::i(), PlanePoint::i(), 2.0).count;
    const i64 b = count_general(PlanePoint::rho(), PlanePoint::rho(), 2.0).count;
    std::ostringstream s;
    s << "N(2;i,i)=" << a << " N(2;rho,rho)=" << b;
    return {a == 4 && b == 6, s.str()};
}

Outcome ac2() {
    std::mt19937_64 rng(2024);
    const auto ds = discriminants(-100, -3);
    int pairs = 0, mismatches = 0;
    while (pairs < 120) {
        const auto P = heegner_points(ds[rng() % ds.size()]);
        const auto Q = heegner_points(ds[rng() % ds.size()]);
        const QuadForm p = P[rng() % P.size()].form, p0 = Q[rng() % Q.size()].form;
        const Threshold X(16 + i64(rng() % (8000 - 16 + 1)), 8);
        const auto e = count_heegner_exact(p, p0, X);
        const auto f = count_general(PlanePoint::from_form(p0), PlanePoint::from_form(p), boost::rational_cast<double>(X));
        ++pairs;
        if (e.count != f.count) ++mismatches;
    }
    std::ostringstream s;
    s << pairs << " pairs, " << mismatches << " mismatches";
    return {mismatches == 0, s.str()};
}

Outcome ac3() {
    const auto z = PlanePoint::from_form(ClassGroup(-7).forms().front());
    const auto w = PlanePoint::from_form(ClassGroup(-15).forms().front());
    const auto r = count_general(z, w, 1e5);
    const double ratio = double(r.count) / 1e5;
    std::ostringstream s;
    s << "N=" << r.count << " N/X=" << ratio;
    return {std::abs(ratio - 6) <= 0.15, s.str()};
}

Outcome ac4() {
    bool ok = true;
    std::ostringstream s;
    for (i64 x : {10, 100, 500, 1000}) {
        const auto t = pair_class_sum(-7, -15, x);
        ok = ok && t.lhs == t.rhs;
        s << "x=" << x << ":" << t.lhs << "/" << t.rhs << " ";
    }
    return {ok, s.str()};
}

Outcome ac5() {
    i64 checked = 0, compared = 0, bad = 0;
    for (auto [d, d0] : {std::pair<i64, i64>{-7, -15}, {-7, -23}, {-15, -23}})
        for (i64 delta = -1; delta >= -200; --delta) {
            if (std::gcd(d * d0, delta) != 1) continue;
            if ((delta * delta - d * d0) % 4 != 0 || delta * delta <= d * d0) continue;
            const i64 hw = hardy_williams(d, d0, delta);
            const auto h = pair_class_number(d, d0, delta).count();
            ++checked;
            if (hw < 0) ++bad;
            if (h > 0) {
                ++compared;
                if (hw != i64(h)) ++bad;
            }
        }
    std::ostringstream s;
    s << checked << " deltas, " << compared << " with orbits, " << bad << " failures";
    return {bad == 0 && checked > 0, s.str()};
}

Outcome ac6() {
    i64 chars = 0, bad = 0;
    for (i64 d : discriminants(-500, -3)) {
        auto G = std::make_shared<const ClassGroup>(d);
        for (const auto& chi : genus_characters(G)) {
            const auto [d1, d2] = chi.genus_factorization();
            ++chars;
            if (!check_kronecker_factorization(d, d1, d2, 10000).ok) ++bad;
        }
    }
    std::ostringstream s;
    s << chars << " genus characters, " << bad << " failures";
    return {bad == 0, s.str()};
}

Outcome ac7() {
    i64 chars = 0, bad = 0;
    for (i64 d : discriminants(-500, -3)) {
        auto G = std::make_shared<const ClassGroup>(d);
        const IdealCountTable table(G, 10000);
        for (const auto& chi : all_characters(G)) {
            ++chars;
            if (!check_basics(theta_coefficients(chi, table), 1e-9).ok) ++bad;
        }
    }
    std::ostringstream s;
    s << chars << " characters, " << bad << " failures";
    return {bad == 0, s.str()};
}

Outcome ac8() {
    double worst = 0;
    for (double R : {0.1, 1.0, 5.0, 10.0}) {
        const double v = h_R(R, {0.0, 0.5}).value.real();
        worst = std::max(worst, std::abs(v - 4 * std::numbers::pi * std::sinh(R / 2) * std::sinh(R / 2)));
    }
    std::ostringstream s;
    s << "max error " << worst;
    return {worst <= 1e-8, s.str()};
}

Outcome ac9() {
    std::mt19937_64 rng(909);
    std::uniform_real_distribution<double> X(5, 300), del(0.02, 0.8), x(-0.5, 0.5), y(0.866, 3.0);
    int violations = 0;
    for (int i = 0; i < 50; ++i) {
        const PlanePoint z(x(rng), y(rng)), w(x(rng), y(rng));
        const double XX = X(rng), dd = std::min(del(rng), 0.9 * std::acosh(XX / 2));
        const double N = double(count_general(z, w, XX).count);
        const double lo = K_pm_count(z, w, XX, dd, Sign::Minus), hi = K_pm_count(z, w, XX, dd, Sign::Plus);
        if (!(lo <= N && N <= hi)) ++violations;
    }
    std::ostringstream s;
    s << "50 instances, " << violations << " violations";
    return {violations == 0, s.str()};
}

Outcome ac10() {
    double worst = 0;
    for (double X : {10.0, 100.0, 1000.0, 10000.0}) {
        const double delta = std::pow(X, -1.0 / 3);
        for (Sign sg : {Sign::Plus, Sign::Minus}) {
            const double v = h_pm(X, delta, {0.0, 0.5}, sg).real();
            worst = std::max(worst, std::abs(v - std::numbers::pi * X) / (1 + delta * X));
        }
    }
    std::ostringstream s;
    s << "max |h - pi X| / (1 + delta X) = " << worst;
    return {worst <= 5, s.str()};
}

Outcome ac11() {
    bool ok = h_coeff_exact(2, 0) == 1;
    for (int a = 1; a <= 19; a += 2) ok = ok && h_coeff_exact(a, 0) == 0;
    for (int a = 0; a <= 20; ++a)
        for (int c = 0; c <= a; ++c) {
            const auto h = h_coeff(a, c);
            ok = ok && h.exact >= 0 && h.exact <= (i64(1) << (a + 1));
        }
    std::mt19937_64 rng(1111);
    std::uniform_real_distribution<double> B(-4, 4), L(-2, 2);
    int failures = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const i64 lo = 2 + i64(rng() % 200), hi = lo + 10 + i64(rng() % 60);
        const int k = 1 + int(rng() % 4);
        std::map<i64, double> b;
        SymbolicEigenvalues lam;
        for (u64 p : primes_up_to(u64(hi)))
            if (i64(p) > lo) b[i64(p)] = B(rng), lam.lambda[i64(p)] = L(rng);
        if (!p_expand_identity(lo, hi, b, lam, k, 1e-9).ok) ++failures;
    }
    const auto th = theta_lower_bound(-15, -35);
    std::ostringstream s;
    s << "h table " << (ok ? "ok" : "bad") << ", p_expand failures " << failures << "/200, min theta " << th.min_theta
      << " over " << th.pairs << " pairs";
    return {ok && failures == 0 && th.ok, s.str()};
}

Outcome ac12() {
    const auto z = PlanePoint::from_form(ClassGroup(-7).forms().front());
    const auto w = PlanePoint::from_form(ClassGroup(-15).forms().front());
    std::vector<ErrorMoment> ms;
    std::ostringstream s;
    for (double X : {1e3, 1e4, 1e5}) {
        ms.push_back(error_moment(z, w, X, 4001));
        s << "X=" << X << " mean_E2=" << ms.back().mean_E2 << " ";
    }
    const double slope = fitted_exponent(ms);
    s << "slope=" << slope;
    return {slope >= 0.6 && slope <= 1.4, s.str()};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"AC1 stabilizer counts (<1 s)", ac1},
        {"AC2 exact/float agreement (<60 s)", ac2},
        {"AC3 leading constant (<600 s)", ac3},
        {"AC4 pair class sum identity", ac4},
        {"AC5 divisor sum vs orbit count", ac5},
        {"AC6 Kronecker factorization", ac6},
        {"AC7 coefficient bounds", ac7},
        {"AC8 ball volume (<5 s)", ac8},
        {"AC9 squeeze", ac9},
        {"AC10 main term of h+-", ac10},
        {"AC11 combinatorics", ac11},
        {"AC12 second-moment exponent", ac12},
    };
    const std::vector<double> limits = {1, 60, 600, 0, 0, 0, 0, 5, 0, 0, 0, 1800};
    int failed = 0;
    double total = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        total += secs;
        if (limits[k] > 0 && secs > limits[k]) {
            o.ok = false;
            o.detail += " (time limit exceeded)";
        }
        if (!o.ok) ++failed;
        std::printf("%s %s: %s [%.2f s]\n", o.ok ? "PASS" : "FAIL", criteria[k].first.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed in %.1f s\n", int(criteria.size()) - failed, criteria.size(), total);
    return failed == 0 ? 0 : 1;
}
