#pragma once

// Selberg/Harish-Chandra transforms of ball indicators and the smoothed kernels k+-.

#include <complex>

#include "hypercount/heegner.hpp"

namespace hypercount {

struct TransformEval {
    double R;
    std::complex<double> t;
    std::complex<double> value;
    double quadrature_error; // |difference| to the evaluation at half the panel count
};

enum class Sign { Plus, Minus };

inline int sign_value(Sign s) { return s == Sign::Plus ? 1 : -1; }

/// 2^{5/2} int_0^R sqrt(cosh R - cosh r) cos(r t) dr.
/// Throws std::invalid_argument unless R > 0 and |Im t| <= 1/2.
TransformEval h_R(double R, std::complex<double> t);

/// h_R(delta, t) / (4 pi sinh^2(delta / 2)); requires 0 < delta <= 1.
TransformEval h_delta(double delta, std::complex<double> t);

/// h_{Y +- delta}(t) h_delta(t) / (4 pi sinh^2(delta / 2)), Y = arccosh(X / 2).
/// Requires X > 4 and 0 < delta <= 1.
std::complex<double> h_pm(double X, double delta, std::complex<double> t, Sign sign);

/// Hyperbolic area of B(z, R1) cap B(w, delta) with d(z, w) = rho.
double lens_area(double rho, double R1, double delta);

/// k+-(u): the indicator of 4u + 2 <= 2 cosh(Y +- delta) convolved with the normalized
/// indicator of the delta-ball, Y = arccosh(X / 2).
double k_pm(long double u, double X, double delta, Sign sign);

/// Sum over gamma in SL2(Z) of k+-(u(z, gamma w)), +-gamma counted separately.
/// Requires Y - delta > 0 and 0 < delta <= 1.
double K_pm_count(const PlanePoint& z, const PlanePoint& w, double X, double delta, Sign sign);

/// 2 sqrt(pi) e^{+-delta/2} t^{-3/2} x^{1/2} cos(t log x +- delta t - 3 pi / 4). Requires t > 0.
double H_x(double x, double t, double delta, Sign sign);

} // namespace hypercount
