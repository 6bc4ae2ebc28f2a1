#include "hypercount/momentkit.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hypercount/theta.hpp"

namespace hypercount {

namespace {

std::vector<i64> h_row(int a) {
    std::vector<i64> row{1};
    for (int s = 0; s < a; ++s) {
        std::vector<i64> next(row.size() + 1, 0);
        for (std::size_t c = 0; c < row.size(); ++c) {
            next[c + 1] += row[c];
            if (c > 0) next[c - 1] += row[c];
        }
        row = std::move(next);
    }
    return row;
}

} // namespace

i64 h_coeff_exact(int a, int c) {
    if (a < 0 || a > 60 || c < 0 || c > a) throw std::invalid_argument("h_coeff: need 0 <= c <= a <= 60");
    return h_row(a)[static_cast<std::size_t>(c)];
}

double h_coeff_quadrature(int a, int c) {
    if (a < 0 || c < 0 || c > a) throw std::invalid_argument("h_coeff: need 0 <= c <= a");
    // Even 2 pi-periodic integrand of degree a + c + 2: M equispaced nodes integrate it exactly.
    const int M = 2 * (a + c + 3);
    long double sum = 0;
    for (int j = 0; j < M; ++j) {
        const long double t = 2 * std::numbers::pi_v<long double> * j / M;
        sum += std::pow(2 * std::cos(t), a) * std::sin((c + 1) * t) * std::sin(t);
    }
    // (2/pi) * (1/2) * (2 pi / M) * sum
    return static_cast<double>(2 * sum / M);
}

HCoeff h_coeff(int a, int c) {
    HCoeff h{h_coeff_exact(a, c), h_coeff_quadrature(a, c)};
    if (std::abs(h.quadrature - static_cast<double>(h.exact)) > 1e-10 * std::max(1.0, std::abs(h.quadrature)))
        throw std::logic_error("h_coeff: quadrature and recurrence disagree");
    return h;
}

std::vector<double> chebyshev_powers(double lambda_p, int a) {
    std::vector<double> v(static_cast<std::size_t>(a) + 1);
    v[0] = 1;
    if (a >= 1) v[1] = lambda_p;
    for (int c = 1; c < a; ++c) v[c + 1] = lambda_p * v[c] - v[c - 1];
    return v;
}

double g_xi(const ClassCharacter& chi, i64 p, int a) {
    if (p < 2 || !is_prime(static_cast<u64>(p))) throw std::invalid_argument("g_xi: p must be prime");
    if (a < 0) throw std::invalid_argument("g_xi: a must be nonnegative");
    const int chi_d = kronecker(chi.group().disc(), p);
    // lambda(p^{c+1}) = lambda(p) lambda(p^c) - chi_d(p) lambda(p^{c-1})
    std::vector<double> lam(static_cast<std::size_t>(a) + 1);
    lam[0] = 1;
    if (a >= 1) lam[1] = lambda_prime(chi, p);
    for (int c = 1; c < a; ++c) lam[c + 1] = lam[1] * lam[c] - chi_d * lam[c - 1];
    const auto h = h_row(a);
    double sum = 0;
    for (int c = 0; c <= a; ++c) sum += static_cast<double>(h[c]) * std::pow(static_cast<double>(p), -c / 2.0) * lam[c];
    return sum;
}

double SymbolicEigenvalues::at(i64 p) const {
    const auto it = lambda.find(p);
    if (it == lambda.end()) throw std::invalid_argument("SymbolicEigenvalues: no value for p = " + std::to_string(p));
    return it->second;
}

ExpandReport p_expand_identity(i64 lo, i64 hi, const std::map<i64, double>& b, const SymbolicEigenvalues& lambda, int k,
                               double tol, i64 max_terms) {
    if (k < 1) throw std::invalid_argument("p_expand_identity: k must be positive");
    std::vector<i64> primes;
    for (u64 p : primes_up_to(static_cast<u64>(std::max<i64>(hi, 0))))
        if (static_cast<i64>(p) > lo) primes.push_back(static_cast<i64>(p));
    for (i64 p : primes) {
        const auto it = b.find(p);
        if (it == b.end() || std::abs(it->second) > 4) throw std::invalid_argument("p_expand_identity: need |b(p)| <= 4");
        if (std::abs(lambda.at(p)) > 2) throw std::invalid_argument("p_expand_identity: need |lambda(p)| <= 2");
    }
    // Multisets of size k from m primes: C(m + k - 1, k).
    long double terms = 1;
    for (int j = 1; j <= k; ++j) terms = terms * (static_cast<long double>(primes.size()) + j - 1) / j;
    if (terms > static_cast<long double>(max_terms)) throw std::length_error("p_expand_identity: too many terms");

    ExpandReport rep;
    long double P = 0;
    for (i64 p : primes) P += b.at(p) * lambda.at(p) / std::sqrt(static_cast<long double>(p));
    rep.lhs = static_cast<double>(std::pow(P, k));

    long double k_fact = 1;
    for (int j = 2; j <= k; ++j) k_fact *= j;
    long double rhs = 0;
    // term = prod over p^a || n of b(p)^a lambda-expansion(p^a) / (a! p^{a/2})
    std::function<void(std::size_t, int, long double)> walk = [&](std::size_t idx, int left, long double acc) {
        if (left == 0) {
            rhs += acc;
            ++rep.terms;
            return;
        }
        if (idx == primes.size()) return;
        const i64 p = primes[idx];
        const auto lam = chebyshev_powers(lambda.at(p), left);
        long double factor = 1;
        for (int a = 0; a <= left; ++a) {
            if (a > 0) factor *= b.at(p) / (a * std::sqrt(static_cast<long double>(p)));
            long double ell = 0;
            for (int c = 0; c <= a; ++c) ell += h_coeff_exact(a, c) * lam[c];
            walk(idx + 1, left - a, acc * factor * ell);
        }
    };
    walk(0, k, k_fact);
    rep.rhs = static_cast<double>(rhs);
    rep.ok = std::abs(rep.lhs - rep.rhs) <= tol * std::max(1.0, std::abs(rep.lhs));
    return rep;
}

std::pair<double, double> IntervalSchedule::log_interval(std::size_t r) const {
    if (r < 1 || r > R()) throw std::out_of_range("IntervalSchedule: r out of range");
    const double lo = r == 1 ? 14 * std::numbers::ln2 : log_x[r - 2];
    return {lo, log_x[r - 1]};
}

std::vector<i64> schedule_recurrence(double log_log_T, double C1, std::size_t max_terms) {
    if (!(C1 > 0) || !(log_log_T > 0)) throw std::invalid_argument("schedule: need C1 > 0 and log log T > 0");
    std::vector<i64> N{2 * static_cast<i64>(std::ceil(C1 * log_log_T))};
    while (N.size() < max_terms) {
        const i64 next = 2 * static_cast<i64>(std::ceil(C1 * std::log(static_cast<double>(N.back()))));
        if (next == N.back()) break;
        N.push_back(next);
    }
    return N;
}

IntervalSchedule schedule(double log_log_T, double C1) {
    if (!(C1 > 1)) throw std::invalid_argument("schedule: C1 must exceed 1");
    IntervalSchedule s{log_log_T, C1, {}, {}, 0};
    const double cut = C1 * C1;
    for (i64 n : schedule_recurrence(log_log_T, C1)) {
        if (static_cast<double>(n) <= cut) break;
        s.N.push_back(n);
    }
    if (s.N.empty()) throw std::invalid_argument("schedule: N_1 <= C1^2, so R = 0");
    const double log_T = std::exp(log_log_T);
    for (std::size_t r = 0; r < s.N.size(); ++r) {
        if (r > 0 && s.N[r] >= s.N[r - 1]) throw std::logic_error("schedule: N_r not decreasing");
        s.reciprocal_sum += 1.0 / static_cast<double>(s.N[r]);
        s.log_x.push_back(log_T / (static_cast<double>(s.N[r]) * static_cast<double>(s.N[r])));
    }
    if (static_cast<double>(s.N.back()) > std::exp(C1)) throw std::logic_error("schedule: N_R > e^C1");
    if (!(s.reciprocal_sum < 1 / C1)) throw std::logic_error("schedule: sum 1/N_r >= 1/C1");
    return s;
}

std::vector<MertensRow> mertens_rows(const std::vector<double>& boundaries) {
    if (boundaries.size() < 2) return {};
    if (!std::is_sorted(boundaries.begin(), boundaries.end()) || boundaries.front() < 2)
        throw std::invalid_argument("mertens_rows: boundaries must be ascending and >= 2");
    if (boundaries.back() > 1e8) throw std::invalid_argument("mertens_rows: boundaries must be <= 10^8");
    const auto primes = primes_up_to(static_cast<u64>(boundaries.back()));
    std::vector<MertensRow> rows;
    std::size_t idx = 0;
    while (idx < primes.size() && static_cast<double>(primes[idx]) <= boundaries.front()) ++idx;
    for (std::size_t i = 1; i < boundaries.size(); ++i) {
        MertensRow row{boundaries[i - 1], boundaries[i], 0, std::log(std::log(boundaries[i]) / std::log(boundaries[i - 1])), 0};
        while (idx < primes.size() && static_cast<double>(primes[idx]) <= row.hi) row.sum += 1.0 / static_cast<double>(primes[idx++]);
        row.drift = row.sum - row.predicted;
        rows.push_back(row);
    }
    return rows;
}

int genus_overlap(const ClassCharacter& chi, const ClassCharacter& chi2) {
    if (!chi.is_real() || !chi2.is_real()) throw std::invalid_argument("genus_overlap: both characters must be genus");
    const auto [a1, a2] = chi.genus_factorization();
    const auto [b1, b2] = chi2.genus_factorization();
    int B = 0;
    for (i64 x : {a1, a2})
        for (i64 y : {b1, b2}) B += x == y;
    return B;
}

int orthogonality_coefficient(const ClassCharacter& chi, const ClassCharacter& chi2) {
    if (chi.is_real() && chi2.is_real()) return genus_overlap(chi, chi2);
    if (chi.is_real() || chi2.is_real()) return 0;
    if (chi.group().disc() != chi2.group().disc()) return 0;
    bool same = true, conj = true;
    for (std::size_t i = 0; i < chi.group().order(); ++i) {
        same = same && std::abs(chi.value(i) - chi2.value(i)) < 1e-9;
        conj = conj && std::abs(chi.value(i) - std::conj(chi2.value(i))) < 1e-9;
    }
    return (same || conj) ? 1 : 0;
}

std::vector<OrthogonalityRow> orthogonality_series(const ClassCharacter& chi, const ClassCharacter& chi2,
                                                   const std::vector<double>& grid) {
    if (grid.empty()) return {};
    const double x_max = *std::max_element(grid.begin(), grid.end());
    if (x_max > 1e8) throw std::invalid_argument("orthogonality_sum: x must be <= 10^8");
    const int B = orthogonality_coefficient(chi, chi2);
    std::vector<std::size_t> order(grid.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return grid[i] < grid[j]; });
    const auto primes = x_max >= 2 ? primes_up_to(static_cast<u64>(x_max)) : std::vector<u64>{};
    std::vector<OrthogonalityRow> rows(grid.size());
    double sum = 0;
    std::size_t idx = 0;
    for (std::size_t o : order) {
        const double x = grid[o];
        for (; idx < primes.size() && static_cast<double>(primes[idx]) <= x; ++idx) {
            const i64 p = static_cast<i64>(primes[idx]);
            sum += lambda_prime(chi, p) * lambda_prime(chi2, p) / static_cast<double>(p);
        }
        const double ll = x > 1 ? std::log(std::log(x)) : 0;
        rows[o] = {x, sum, B, x < 2 ? sum : sum - B * ll};
    }
    return rows;
}

double orthogonality_sum(const ClassCharacter& chi, const ClassCharacter& chi2, double x) {
    return orthogonality_series(chi, chi2, {x}).front().sum;
}

ExponentPair exponent_tables(const ClassCharacter& chi, const ClassCharacter& chi2) {
    if (chi.group().disc() == chi2.group().disc()) throw std::invalid_argument("exponent_tables: need d != d'");
    const bool g1 = chi.is_real(), g2 = chi2.is_real();
    Rational eta;
    if (!g1 && !g2) eta = Rational(1, 4);
    else if (!g1 && g2) eta = Rational(1, 8);
    else if (g1 && !g2) eta = Rational(5, 8);
    else eta = Rational(1, 2) - Rational(genus_overlap(chi, chi2), 4);
    const Rational delta1 = g1 ? Rational(1, 2) : Rational(1, 4);
    const Rational delta2 = g2 ? Rational(1, 2) : Rational(1, 4);
    return {eta, eta + delta2 - delta1};
}

ThetaBoundReport theta_lower_bound(i64 d, i64 dprime) {
    if (d == dprime) throw std::invalid_argument("theta_lower_bound: need d != d'");
    auto G = std::make_shared<const ClassGroup>(d);
    auto H = std::make_shared<const ClassGroup>(dprime);
    ThetaBoundReport rep;
    rep.min_theta = 1;
    for (const auto& a : all_characters(G))
        for (const auto& b : all_characters(H)) {
            rep.min_theta = std::min(rep.min_theta, exponent_tables(a, b).theta);
            ++rep.pairs;
        }
    rep.ok = rep.min_theta >= Rational(1, 4);
    return rep;
}

double exptaylor_slack(double t, int N) {
    using Big = boost::multiprecision::cpp_bin_float_50;
    if (N < 2 || N % 2 != 0) throw std::invalid_argument("exptaylor: N must be even and >= 2");
    if (t > N / std::exp(2.0)) throw std::invalid_argument("exptaylor: need t <= N / e^2");
    const Big bt(t);
    Big term = 1, sum = 1;
    for (int k = 1; k <= N; ++k) {
        term = term * bt / k;
        sum += term;
    }
    const Big rhs = (1 + exp(Big(-N)) / 16) * sum;
    const Big lhs = exp(bt);
    return static_cast<double>((rhs - lhs) / lhs);
}

InequalityReport elementary_inequalities(i64 samples, u64 seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    InequalityReport rep;
    rep.min_slack_elementary = rep.min_slack_exptaylor = INFINITY;
    auto violate = [&](const std::string& what) {
        if (rep.violations++ == 0) rep.first_violation = what;
    };
    for (i64 i = 0; i < samples; ++i) {
        double L = 10 * unit(rng), Lp = 10 * unit(rng);
        double M = 0.01 + 10 * unit(rng), Mp = 0.01 + 10 * unit(rng);
        if (i % 10 == 0) {
            Lp = L;
            Mp = M;
        }
        const double lhs = 2 * std::sqrt(L * Lp);
        const double rhs = L * M / Mp + Lp * Mp / M;
        const double slack = (rhs - lhs) / std::max(1.0, rhs);
        rep.min_slack_elementary = std::min(rep.min_slack_elementary, slack);
        if (slack < -1e-12) {
            std::ostringstream os;
            os << "elementary L=" << L << " L'=" << Lp << " M=" << M << " M'=" << Mp;
            violate(os.str());
        }
        const int N = 2 * (1 + static_cast<int>(unit(rng) * 20));
        const double t = -N + unit(rng) * (N + N / std::exp(2.0));
        const double s = exptaylor_slack(std::min(t, N / std::exp(2.0)), N);
        rep.min_slack_exptaylor = std::min(rep.min_slack_exptaylor, s);
        if (s < -1e-12) {
            std::ostringstream os;
            os << "exptaylor t=" << t << " N=" << N;
            violate(os.str());
        }
        ++rep.samples;
    }
    return rep;
}

} // namespace hypercount
