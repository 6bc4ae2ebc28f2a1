#pragma once

// Combinatorics of the fractional-moment argument: Hecke power expansions, the
// interval schedule, prime orthogonality sums and the exponent tables.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypercount/qforms.hpp"

namespace hypercount {

/// h_a(c) in lambda(p)^a = sum_c h_a(c) lambda(p^c), from the Chebyshev recurrence.
/// Throws std::invalid_argument unless 0 <= c <= a <= 60.
i64 h_coeff_exact(int a, int c);

/// (2/pi) int_0^pi (2 cos t)^a sin((c+1) t) sin t dt by the trapezoid rule over a full
/// period (exact for trigonometric polynomials of this degree up to rounding).
double h_coeff_quadrature(int a, int c);

struct HCoeff {
    i64 exact;
    double quadrature;
};
/// Both evaluations; throws std::logic_error if they differ by more than 1e-10.
HCoeff h_coeff(int a, int c);

/// lambda(p^c) for c = 0..a from lambda(p) via lambda(p^{c+1}) = lambda(p) lambda(p^c) - lambda(p^{c-1}).
std::vector<double> chebyshev_powers(double lambda_p, int a);

/// g(p^a) = sum_{c <= a} h_a(c) p^{-c/2} lambda_chi(p^c).
double g_xi(const ClassCharacter& chi, i64 p, int a);

/// Free eigenvalue symbols lambda(p), each in [-2, 2].
struct SymbolicEigenvalues {
    std::map<i64, double> lambda;
    double at(i64 p) const;
};

struct ExpandReport {
    double lhs = 0; // (sum_p b(p) lambda(p) / sqrt p)^k
    double rhs = 0; // k! sum_{Omega(n) = k} b(n) nu(n) l(n) / sqrt n
    i64 terms = 0;
    bool ok = false;
};

/// Checks the k-th power expansion over the primes of (lo, hi].
/// Throws std::length_error if more than max_terms n would be enumerated,
/// std::invalid_argument if some |b(p)| > 4 or |lambda(p)| > 2.
ExpandReport p_expand_identity(i64 lo, i64 hi, const std::map<i64, double>& b, const SymbolicEigenvalues& lambda, int k,
                               double tol = 1e-9, i64 max_terms = 1000000);

struct IntervalSchedule {
    double log_log_T;
    double C1;
    std::vector<i64> N;         // N_1 > ... > N_R
    std::vector<double> log_x;  // log x_r = log T / N_r^2
    double reciprocal_sum = 0;  // sum 1 / N_r
    std::size_t R() const { return N.size(); }
    /// I_r as (log lower, log upper]; I_1 starts at 2^14.
    std::pair<double, double> log_interval(std::size_t r) const;
};

/// N_1 = 2 ceil(C1 log log T), N_{r+1} = 2 ceil(C1 log N_r), up to max_terms terms, unvalidated.
std::vector<i64> schedule_recurrence(double log_log_T, double C1, std::size_t max_terms = 64);

/// The schedule cut at the largest R with N_R > C1^2. T enters through log log T.
/// Throws std::invalid_argument when R = 0 or C1 <= 1, std::logic_error if an invariant fails.
IntervalSchedule schedule(double log_log_T, double C1 = 10.0);

struct MertensRow {
    double lo, hi;    // prime interval (lo, hi]
    double sum;       // sum 1/p
    double predicted; // log(log hi / log lo)
    double drift;
};
/// Sum of 1/p over consecutive intervals (b_{i-1}, b_i], b ascending, b.back() <= 10^8.
std::vector<MertensRow> mertens_rows(const std::vector<double>& boundaries);

struct OrthogonalityRow {
    double x;
    double sum;       // sum_{p <= x} lambda_chi(p) lambda_chi'(p) / p
    int predicted_B;  // coefficient of log log x
    double drift;     // sum - B log log x (sum when x < 3)
};

/// Predicted coefficient: B_{chi,chi'} when both are genus characters (2 for chi = chi'
/// over the same d), 1 for a non-genus chi with chi' in {chi, conj chi}, 0 otherwise.
int orthogonality_coefficient(const ClassCharacter& chi, const ClassCharacter& chi2);

/// Prime sums at every x in the grid, in one pass. Requires max x <= 10^8.
std::vector<OrthogonalityRow> orthogonality_series(const ClassCharacter& chi, const ClassCharacter& chi2,
                                                   const std::vector<double>& grid);
double orthogonality_sum(const ClassCharacter& chi, const ClassCharacter& chi2, double x);

/// #{(i, j) : d_j = d'_i} over the genus factorizations of two real characters.
int genus_overlap(const ClassCharacter& chi, const ClassCharacter& chi2);

struct ExponentPair {
    Rational eta, theta;
};
/// Requires the characters to live on different discriminants.
ExponentPair exponent_tables(const ClassCharacter& chi, const ClassCharacter& chi2);

struct ThetaBoundReport {
    i64 pairs = 0;
    Rational min_theta;
    bool ok = false; // min_theta >= 1/4
};
/// exponent_tables over every character of d times every character of d'.
ThetaBoundReport theta_lower_bound(i64 d, i64 dprime);

struct InequalityReport {
    i64 samples = 0;
    i64 violations = 0;
    double min_slack_elementary = 0; // rhs - lhs, relative
    double min_slack_exptaylor = 0;
    std::string first_violation;
};
/// Random draws of 2 sqrt(L L') <= L M / M' + L' M' / M and of
/// e^t <= (1 + e^{-N} / 16) sum_{k <= N} t^k / k! for even N >= 2, t <= N / e^2.
InequalityReport elementary_inequalities(i64 samples, u64 seed);
/// Relative slack of the Taylor inequality at one point.
double exptaylor_slack(double t, int N);

} // namespace hypercount
