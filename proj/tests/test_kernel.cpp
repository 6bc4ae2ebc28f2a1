#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hypercount/count.hpp"
#include "hypercount/kernel.hpp"

using namespace hypercount;

namespace {

double h_R_direct(double R, double t) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double v = ts.integrate([&](double r) { return std::sqrt(std::max(0.0, std::cosh(R) - std::cosh(r))) * std::cos(r * t); },
                                  0.0, R);
    return std::pow(2.0, 2.5) * v;
}

} // namespace

TEST_CASE("ball volume") {
    for (double R : {0.1, 1.0, 5.0, 10.0}) {
        const auto e = h_R(R, {0.0, 0.5});
        const double vol = 4 * std::numbers::pi * std::sinh(R / 2) * std::sinh(R / 2);
        CHECK(std::abs(e.value.real() - vol) <= 1e-8);
        CHECK(std::abs(e.value.imag()) < 1e-12);
    }
    CHECK_THROWS_AS(h_R(0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(h_R(1.0, {0.0, 0.7}), std::invalid_argument);
}

TEST_CASE("transform agrees with a direct integral") {
    for (double R : {0.3, 1.0, 2.5, 6.0})
        for (double t : {0.0, 0.5, 3.0, 11.0}) {
            const auto e = h_R(R, t);
            CHECK(e.value.real() == doctest::Approx(h_R_direct(R, t)).epsilon(1e-7).scale(std::exp(R / 2)));
        }
}

TEST_CASE("normalized small ball") {
    CHECK(h_delta(1e-4, {0.0, 0.5}).value.real() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(h_delta(1e-4, 1.0).value.real() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK_THROWS_AS(h_delta(1.5, 1.0), std::invalid_argument);
}

TEST_CASE("main term of the smoothed transforms") {
    for (double X : {10.0, 100.0, 1000.0, 10000.0}) {
        const double delta = std::pow(X, -1.0 / 3);
        for (Sign s : {Sign::Plus, Sign::Minus}) {
            const double v = h_pm(X, delta, {0.0, 0.5}, s).real();
            CHECK(std::abs(v - std::numbers::pi * X) <= 5 * (1 + delta * X));
        }
        CHECK(h_pm(X, delta, {0.0, 0.5}, Sign::Minus).real() <= h_pm(X, delta, {0.0, 0.5}, Sign::Plus).real());
    }
    CHECK_THROWS_AS(h_pm(3.0, 0.5, 1.0, Sign::Plus), std::invalid_argument);
}

TEST_CASE("lens area") {
    // disjoint balls and containment
    CHECK(lens_area(5.0, 1.0, 0.5) == 0.0);
    const double small = 4 * std::numbers::pi * std::sinh(0.25) * std::sinh(0.25);
    CHECK(lens_area(0.1, 2.0, 0.5) == doctest::Approx(small).epsilon(1e-10));
    // symmetric in the two radii
    for (auto [rho, a, b] : {std::tuple{1.0, 0.8, 0.6}, {0.5, 0.4, 0.3}, {2.0, 1.5, 0.9}})
        CHECK(lens_area(rho, a, b) == doctest::Approx(lens_area(rho, b, a)).epsilon(1e-8));
    // tiny radii: the Euclidean lens
    const double r1 = 1e-3, r2 = 8e-4, dd = 1.2e-3;
    const double euclid = r1 * r1 * std::acos((dd * dd + r1 * r1 - r2 * r2) / (2 * dd * r1)) +
                          r2 * r2 * std::acos((dd * dd + r2 * r2 - r1 * r1) / (2 * dd * r2)) -
                          0.5 * std::sqrt((-dd + r1 + r2) * (dd + r1 - r2) * (dd - r1 + r2) * (dd + r1 + r2));
    CHECK(lens_area(dd, r1, r2) == doctest::Approx(euclid).epsilon(1e-4));
}

TEST_CASE("kernels bracket the indicator") {
    const double X = 50, delta = 0.2;
    const double Y = std::acosh(X / 2);
    for (double uu = 0; uu < 40; uu += 0.37) {
        const double ind = 4 * uu + 2 <= X ? 1.0 : 0.0;
        const double kp = k_pm(uu, X, delta, Sign::Plus), km = k_pm(uu, X, delta, Sign::Minus);
        CHECK(km <= ind + 1e-12);
        CHECK(kp >= ind - 1e-12);
        CHECK(kp >= -1e-12);
        CHECK(kp <= 1 + 1e-9);
        if (4 * uu + 2 > 2 * std::cosh(Y + 2 * delta)) CHECK(kp == 0.0);
    }
}

TEST_CASE("squeeze on random instances") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> X(5, 120), del(0.05, 0.6), x(-0.5, 0.5), y(0.87, 2.0);
    for (int i = 0; i < 8; ++i) {
        const PlanePoint z(x(rng), y(rng)), w(x(rng), y(rng));
        const double XX = X(rng), dd = std::min(del(rng), 0.9 * std::acosh(XX / 2));
        const double N = double(count_general(z, w, XX).count);
        CHECK(K_pm_count(z, w, XX, dd, Sign::Minus) <= N + 1e-9);
        CHECK(K_pm_count(z, w, XX, dd, Sign::Plus) >= N - 1e-9);
    }
}

TEST_CASE("oscillatory tail") {
    CHECK_THROWS_AS(H_x(100, 0.0, 0.1, Sign::Plus), std::invalid_argument);
    const double v = H_x(1e4, 5.0, 0.1, Sign::Plus);
    CHECK(std::abs(v) <= 2 * std::sqrt(std::numbers::pi) * std::exp(0.05) * std::pow(5.0, -1.5) * 100 + 1e-12);
}
