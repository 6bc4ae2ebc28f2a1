#include "hypercount/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "hypercount/count.hpp"

namespace hypercount {

namespace {

using cld = std::complex<long double>;
using Gauss = boost::math::quadrature::gauss<long double, 20>;

constexpr long double kPi = std::numbers::pi_v<long double>;

// With r = R - v^2: 2v sqrt(2 sinh(R - v^2/2) sinh(v^2/2)) cos(t (R - v^2)) on [0, sqrt R].
cld integrand(long double R, cld t, long double v) {
    const long double v2 = v * v;
    const long double gap = 2 * std::sinh(R - v2 / 2) * std::sinh(v2 / 2);
    return 2 * v * std::sqrt(gap) * std::cos(t * (R - v2));
}

cld composite(long double R, cld t, long long panels) {
    const long double top = std::sqrt(R);
    const long double hw = top / (2 * panels);
    const auto& x = Gauss::abscissa();
    const auto& w = Gauss::weights();
    cld sum = 0;
    for (long long p = 0; p < panels; ++p) {
        const long double mid = top * (2 * p + 1) / (2 * panels);
        cld part = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (x[i] == 0) part += w[i] * integrand(R, t, mid);
            else part += w[i] * (integrand(R, t, mid - hw * x[i]) + integrand(R, t, mid + hw * x[i]));
        }
        sum += part * hw;
    }
    return sum;
}

long double ball_area(long double r) {
    const long double s = std::sinh(r / 2);
    return 4 * kPi * s * s;
}

} // namespace

TransformEval h_R(double R, std::complex<double> t) {
    if (!(R > 0) || !std::isfinite(R)) throw std::invalid_argument("h_R: R must be positive");
    if (!(std::abs(t.imag()) <= 0.5)) throw std::invalid_argument("h_R: |Im t| must be <= 1/2");
    const long double Rl = R;
    const cld tl(t.real(), t.imag());
    const long double target = 1e-12L * std::max(1.0L, std::exp(Rl / 2));
    long long panels = 2 + static_cast<long long>(std::ceil(Rl)) +
                       static_cast<long long>(std::ceil(std::abs(t.real()) * Rl / 4));
    cld coarse = composite(Rl, tl, panels);
    cld fine = composite(Rl, tl, 2 * panels);
    while (std::abs(fine - coarse) > target && panels < (1LL << 20)) {
        panels *= 2;
        coarse = fine;
        fine = composite(Rl, tl, 2 * panels);
    }
    const long double scale = 4 * std::sqrt(2.0L); // 2^{5/2}
    const cld value = scale * fine;
    return {R, t, {static_cast<double>(value.real()), static_cast<double>(value.imag())},
            static_cast<double>(scale * std::abs(fine - coarse))};
}

TransformEval h_delta(double delta, std::complex<double> t) {
    if (!(delta > 0 && delta <= 1)) throw std::invalid_argument("h_delta: need 0 < delta <= 1");
    TransformEval e = h_R(delta, t);
    const double norm = static_cast<double>(ball_area(delta));
    e.value /= norm;
    e.quadrature_error /= norm;
    return e;
}

std::complex<double> h_pm(double X, double delta, std::complex<double> t, Sign sign) {
    if (!(X > 4)) throw std::invalid_argument("h_pm: X must exceed 4");
    if (!(delta > 0 && delta <= 1)) throw std::invalid_argument("h_pm: need 0 < delta <= 1");
    const double Y = std::acosh(X / 2);
    return h_R(Y + sign_value(sign) * delta, t).value * h_delta(delta, t).value;
}

double lens_area(double rho, double R1, double delta) {
    if (!(R1 > 0) || !(delta > 0) || !(rho >= 0)) throw std::invalid_argument("lens_area: bad radii");
    if (rho >= R1 + delta) return 0;
    if (rho + delta <= R1) return static_cast<double>(ball_area(delta));
    if (rho + R1 <= delta) return static_cast<double>(ball_area(R1));
    // Polar coordinates about w: a circle of radius s meets B(z, R1) in an arc of angle 2 arccos c(s).
    const long double r = rho, R = R1;
    const long double cosh_r = std::cosh(r), sinh_r = std::sinh(r);
    const long double gap = 2 * std::sinh((r + R) / 2) * std::sinh((r - R) / 2); // cosh rho - cosh R1
    double area = 0;
    const double lo = std::abs(R1 - rho);
    if (R1 > rho) area += static_cast<double>(ball_area(lo)); // circles fully inside
    const double hi = std::min(static_cast<double>(delta), R1 + rho);
    if (hi > lo) {
        auto f = [&](double s) {
            const long double sh = std::sinh(static_cast<long double>(s) / 2);
            long double c = (gap + 2 * cosh_r * sh * sh) / (sinh_r * std::sinh(static_cast<long double>(s)));
            c = std::clamp(c, -1.0L, 1.0L);
            return static_cast<double>(std::sinh(static_cast<long double>(s)) * 2 * std::acos(c));
        };
        boost::math::quadrature::tanh_sinh<double> ts;
        area += ts.integrate(f, lo, hi, 1e-12);
    }
    return area;
}

namespace {

double k_from_rho(double rho, double R1, double delta) {
    const double v = lens_area(rho, R1, delta) / static_cast<double>(ball_area(delta));
    return std::clamp(v, 0.0, 1.0);
}

void check_kernel_args(double X, double delta) {
    if (!(delta > 0 && delta <= 1)) throw std::invalid_argument("k_pm: need 0 < delta <= 1");
    if (!(X >= 2) || !(std::acosh(X / 2) - delta > 0)) throw std::invalid_argument("k_pm: need arccosh(X/2) > delta");
}

} // namespace

double k_pm(long double u, double X, double delta, Sign sign) {
    check_kernel_args(X, delta);
    if (u < 0) throw std::invalid_argument("k_pm: u must be nonnegative");
    // Full containment (k+ = 1) and disjointness (k- = 0) both reduce to 4u + 2 vs X.
    if (sign == Sign::Plus && 4 * u + 2 <= X) return 1;
    if (sign == Sign::Minus && 4 * u + 2 >= X) return 0;
    const double Y = std::acosh(X / 2);
    const double rho = static_cast<double>(2 * std::asinh(std::sqrt(u)));
    return k_from_rho(rho, Y + sign_value(sign) * delta, delta);
}

double K_pm_count(const PlanePoint& z, const PlanePoint& w, double X, double delta, Sign sign) {
    check_kernel_args(X, delta);
    const double Y = std::acosh(X / 2);
    const double R1 = Y + sign_value(sign) * delta;
    const double support = 2 * std::cosh(R1 + delta) * (1 + 1e-12);
    double total = 0;
    for_each_lattice_point(z, w, std::max(support, X), [&](const Mat2& g, long double uu) {
        const bool inside = exact_within(z, w, g, X);
        double k;
        if (sign == Sign::Plus && inside) k = 1;
        else if (sign == Sign::Minus && !inside) k = 0;
        else k = k_from_rho(static_cast<double>(2 * std::asinh(std::sqrt(uu))), R1, delta);
        total += 2 * k;
    });
    return total;
}

double H_x(double x, double t, double delta, Sign sign) {
    if (!(t > 0)) throw std::invalid_argument("H_x: t must be positive");
    if (!(x >= 4)) throw std::invalid_argument("H_x: x must be >= 4");
    const double s = sign_value(sign);
    const double amp = 2 * std::sqrt(std::numbers::pi) * std::exp(s * delta / 2) * std::pow(t, -1.5) * std::sqrt(x);
    return amp * std::cos(t * std::log(x) + s * delta * t - 3 * std::numbers::pi / 4);
}

} // namespace hypercount
