#pragma once

// Hecke coefficients of the weight-one theta series attached to class group characters.

#include <optional>
#include <string>
#include <vector>

#include "hypercount/qforms.hpp"

namespace hypercount {

/// Number of integral ideals of norm n in each class, read off from the pairs
/// (n / f^2, b) with f^2 | n, b mod 2n/f^2, b^2 = d mod 4n/f^2.
std::vector<i64> ideal_class_counts(const ClassGroup& G, i64 n);

/// lambda_chi(n) from ideal_class_counts. Throws std::invalid_argument for n < 1.
double lambda(const ClassCharacter& chi, i64 n);

/// lambda_chi(p) for a prime p from the splitting of p: 0 if inert, chi of the ramified
/// ideal if p | d, 2 Re chi(C) if p = P P' with P in C.
double lambda_prime(const ClassCharacter& chi, i64 p);

/// h(d) / |O_K^*| for the trivial character, 0 otherwise.
Rational lambda_zero(const ClassCharacter& chi);

/// counts[n][C] for 1 <= n <= N, built from representation numbers of the reduced forms
/// (r_C(n) / |O_K^*|). Row 0 is unused.
class IdealCountTable {
public:
    IdealCountTable(std::shared_ptr<const ClassGroup> group, i64 N);
    const ClassGroup& group() const { return *group_; }
    i64 N() const { return N_; }
    i64 count(i64 n, std::size_t cls) const { return counts_[static_cast<std::size_t>(n) * group_->order() + cls]; }

private:
    std::shared_ptr<const ClassGroup> group_;
    i64 N_;
    std::vector<i64> counts_;
};

struct ThetaCoefficients {
    i64 d;
    std::string character;
    i64 N;
    std::vector<double> coeffs; // lambda(0..N)
    double max_imag = 0;        // largest |Im| seen while summing character values
};

ThetaCoefficients theta_coefficients(const ClassCharacter& chi, i64 N);
ThetaCoefficients theta_coefficients(const ClassCharacter& chi, const IdealCountTable& table);

struct CheckReport {
    bool ok = true;
    i64 checked = 0;
    std::optional<i64> first_failure; // n (or m * n for Hecke relations)
    std::string detail;
};

/// lambda_{Genus(d1, d2)}(n) == sum_{m | n} kronecker(d1, m) kronecker(d2, n / m) for n <= N.
/// Throws std::invalid_argument unless d1 * d2 == d with both factors discriminants.
CheckReport check_kronecker_factorization(i64 d, i64 d1, i64 d2, i64 N);

/// lambda(m) lambda(n) == sum_{e | (m, n)} chi_d(e) lambda(m n / e^2) for m, n <= sqrt(N).
CheckReport check_hecke_relations(const ClassCharacter& chi, i64 N);
CheckReport check_hecke_relations(const ThetaCoefficients& theta);

/// Realness, |lambda(n)| <= d(n) and lambda(n) = +-1 for n | d, 1 <= n <= N.
/// tol applies to the non-genus comparisons.
CheckReport check_basics(const ThetaCoefficients& theta, double tol = 1e-9);

} // namespace hypercount
