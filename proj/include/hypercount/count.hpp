#pragma once

// Hyperbolic lattice point counts N(X; z, w) = #{gamma in SL2(Z) : 4u(z, gamma w) + 2 <= X}
// and their quadratic-form counterparts.

#include <functional>
#include <vector>

#include <boost/rational.hpp>

#include "hypercount/heegner.hpp"

namespace hypercount {

/// 2 pi / vol(SL2(Z) \ H) with vol = pi / 3.
inline constexpr double kMainTermConstant = 6.0;

enum class CountMode { Float, ExactHeegner };

/// One distance shell: every counted gamma at the same value (4u + 2 in Float mode,
/// the codiscriminant m in ExactHeegner mode).
struct Shell {
    double value;
    i64 multiplicity;
};

struct CountReport {
    double X = 0;
    i64 count = 0; // group elements, +gamma and -gamma counted separately
    double main_term = 0;
    double error = 0;
    CountMode mode = CountMode::Float;
    std::vector<Shell> shells; // filled only on request, ascending by value
};

struct CountOptions {
    unsigned threads = 1;
    bool collect_shells = false;
};

/// Exact count. Candidates within 1e-9 (relative) of the threshold are decided in exact
/// arithmetic: integer codiscriminants when both points carry forms, rationals otherwise.
/// Throws std::invalid_argument for X < 2.
CountReport count_general(const PlanePoint& z, const PlanePoint& w, double X, const CountOptions& opts = {});

/// Visits every gamma (up to sign: c > 0, or c == 0 and d == 1) with 4u(z, gamma w) + 2 <= X_max,
/// passing gamma and u. Inclusion is decided exactly as in count_general; the visiting
/// order is deterministic.
using LatticeVisitor = std::function<void(const Mat2& gamma, long double u)>;
void for_each_lattice_point(const PlanePoint& z, const PlanePoint& w, double X_max, const LatticeVisitor& visit);

/// Decides 4u(z, gamma w) + 2 <= X exactly (integer codiscriminants when both points carry
/// forms, rationals in the exact double inputs otherwise).
bool exact_within(const PlanePoint& z, const PlanePoint& w, const Mat2& gamma, double X);

/// Sorted values 4u(z, gamma w) + 2 <= X_max over all gamma (each +-gamma pair listed twice).
std::vector<long double> distance_profile(const PlanePoint& z, const PlanePoint& w, double X_max);

struct ErrorSample {
    double x;
    double E; // N(x) - 6x
};

struct ErrorMoment {
    double X;
    std::vector<ErrorSample> samples; // uniform grid on [X, 2X]
    double mean_E;                    // trapezoid estimate of (1/X) int_X^{2X} E
    double mean_E2;                   // same for E^2
};

/// Samples E(x) on `samples` equispaced points of [X, 2X] (the single point X when samples == 1).
ErrorMoment error_moment(const PlanePoint& z, const PlanePoint& w, double X, std::size_t samples);

/// Least-squares slope of log(mean_E2) against log X.
double fitted_exponent(const std::vector<ErrorMoment>& moments);

using Threshold = boost::rational<i64>;

/// Count for the Heegner points z = z_p0, w = z_p with 4u + 2 <= X, X rational:
/// gamma counted iff 4 m^2 <= X^2 |d d0| where m = codiscriminant(p o gamma^{-1}, p0).
CountReport count_heegner_exact(const QuadForm& p, const QuadForm& p0, const Threshold& X);
/// Same count with the threshold stated directly on the codiscriminant: m <= m_max.
CountReport count_heegner_codisc(const QuadForm& p, const QuadForm& p0, i64 m_max);

/// Largest m with 4 m^2 <= X^2 |d d0|.
i64 codisc_bound(const Threshold& X, i64 d, i64 d0);

/// Visits every form q = (a, b, c), a > 0, b^2 - 4ac = d with 0 < codiscriminant(q, p0) <= x.
void for_each_form_near(const QuadForm& p0, i64 d, i64 x, const std::function<void(const QuadForm&, i64 m)>& visit);

/// #{(a, b, c) : a > 0, b^2 - 4ac = d, 0 < 2(a c0 + c a0) - b b0 <= x}. Rejects d = -3.
i64 n_d(const QuadForm& p0, i64 d, i64 x);

struct PairClassInstance {
    i64 d, d0, delta;
    std::vector<std::pair<QuadForm, QuadForm>> representatives; // (p, p0), p0 reduced

    std::size_t count() const { return representatives.size(); }
};

/// SL2(Z)-orbits of pairs (p, p0) with discriminants d, d0 and codiscriminant
/// delta = b b0 - 2 a c0 - 2 c a0 < 0.
PairClassInstance pair_class_number(i64 d, i64 d0, i64 delta);

/// Sum over e | (delta^2 - d d0) / 4 of kronecker(d, e).
/// Throws gcd_condition_error when gcd(d d0, delta) != 1.
i64 hardy_williams(i64 d, i64 d0, i64 delta);

struct gcd_condition_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct PairClassSum {
    i64 lhs; // sum over 0 < -delta <= x of h(d, d0, delta)
    i64 rhs; // sum over Heegner pairs of N / 2
};
PairClassSum pair_class_sum(i64 d, i64 d0, i64 x);

} // namespace hypercount
