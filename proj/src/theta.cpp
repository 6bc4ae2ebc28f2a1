#include "hypercount/theta.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hypercount {

namespace {

i64 unit_count(i64 d) { return d == -3 ? 6 : (d == -4 ? 4 : 2); }

std::vector<i64> divisor_counts(i64 N) {
    std::vector<i64> dn(static_cast<std::size_t>(N) + 1, 0);
    for (i64 k = 1; k <= N; ++k)
        for (i64 m = k; m <= N; m += k) ++dn[m];
    return dn;
}

} // namespace

std::vector<i64> ideal_class_counts(const ClassGroup& G, i64 n) {
    if (n < 1) throw std::invalid_argument("lambda: n must be >= 1");
    const i64 d = G.disc();
    std::vector<i64> counts(G.order(), 0);
    for (i64 f = 1; f * f <= n; ++f) {
        if (n % (f * f) != 0) continue;
        const i64 m = n / (f * f);
        for (i64 b = 0; b < 2 * m; ++b) {
            const i128 num = i128(b) * b - d;
            if (num % (4 * m) != 0) continue;
            ++counts[G.index_of({m, b, static_cast<i64>(num / (4 * m))})];
        }
    }
    return counts;
}

double lambda(const ClassCharacter& chi, i64 n) {
    const auto counts = ideal_class_counts(chi.group(), n);
    double s = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) s += static_cast<double>(counts[i]) * chi.value(i).real();
    return s;
}

double lambda_prime(const ClassCharacter& chi, i64 p) {
    if (p < 2 || !is_prime(static_cast<u64>(p))) throw std::invalid_argument("lambda_prime: p must be prime");
    const ClassGroup& G = chi.group();
    const i64 d = G.disc();
    const int k = kronecker(d, p);
    if (k == -1) return 0;
    i64 b;
    if (p == 2) {
        b = 1;
    } else {
        b = static_cast<i64>(sqrt_mod_prime(static_cast<u64>(mod_floor(d, p)), static_cast<u64>(p)));
        if ((b - d) % 2 != 0) b = p - b; // b = d mod 2 so that b^2 = d mod 4p
    }
    const i128 num = i128(b) * b - d;
    const auto cls = G.index_of({p, b, static_cast<i64>(num / (4 * p))});
    if (k == 0) return chi.value(cls).real();
    return 2 * chi.value(cls).real();
}

Rational lambda_zero(const ClassCharacter& chi) {
    if (!chi.is_trivial()) return 0;
    const ClassGroup& G = chi.group();
    return Rational(static_cast<i64>(G.order()), unit_count(G.disc()));
}

IdealCountTable::IdealCountTable(std::shared_ptr<const ClassGroup> group, i64 N) : group_(std::move(group)), N_(N) {
    if (N < 0) throw std::invalid_argument("IdealCountTable: N must be >= 0");
    const ClassGroup& G = *group_;
    const std::size_t h = G.order();
    counts_.assign((static_cast<std::size_t>(N) + 1) * h, 0);
    const i64 d = G.disc();
    const long double ad = static_cast<long double>(-d);
    for (std::size_t cls = 0; cls < h; ++cls) {
        const QuadForm& f = G.forms()[cls];
        // 4a f(x, y) = (2ax + by)^2 + |d| y^2
        const i64 y_max = static_cast<i64>(std::floor(std::sqrt(4.0L * f.a * N / ad))) + 1;
        for (i64 y = -y_max; y <= y_max; ++y) {
            const long double disc = 4.0L * f.a * N + static_cast<long double>(d) * y * y;
            if (disc < 0) continue;
            const long double s = std::sqrt(disc);
            const i64 x_lo = static_cast<i64>(std::floor((-f.b * y - s) / (2.0L * f.a))) - 1;
            const i64 x_hi = static_cast<i64>(std::ceil((-f.b * y + s) / (2.0L * f.a))) + 1;
            for (i64 x = x_lo; x <= x_hi; ++x) {
                const i128 v = f(x, y);
                if (v >= 1 && v <= N) ++counts_[static_cast<std::size_t>(v) * h + cls];
            }
        }
    }
    const i64 w = unit_count(d);
    for (auto& c : counts_) {
        if (c % w != 0) throw std::logic_error("IdealCountTable: representation count not divisible by units");
        c /= w;
    }
}

ThetaCoefficients theta_coefficients(const ClassCharacter& chi, const IdealCountTable& table) {
    if (table.group().disc() != chi.group().disc())
        throw std::invalid_argument("theta_coefficients: table and character disagree on d");
    ThetaCoefficients out{chi.group().disc(), chi.id(), table.N(), {}, 0};
    out.coeffs.resize(static_cast<std::size_t>(table.N()) + 1);
    out.coeffs[0] = lambda_zero(chi).convert_to<double>();
    const std::size_t h = chi.group().order();
    for (i64 n = 1; n <= table.N(); ++n) {
        std::complex<double> s = 0;
        for (std::size_t c = 0; c < h; ++c)
            if (const i64 k = table.count(n, c)) s += static_cast<double>(k) * chi.value(c);
        out.coeffs[n] = s.real();
        out.max_imag = std::max(out.max_imag, std::abs(s.imag()));
    }
    return out;
}

ThetaCoefficients theta_coefficients(const ClassCharacter& chi, i64 N) {
    return theta_coefficients(chi, IdealCountTable(chi.group_ptr(), N));
}

CheckReport check_kronecker_factorization(i64 d, i64 d1, i64 d2, i64 N) {
    if (i128(d1) * d2 != d || mod_floor(d1, 4) != 1 || mod_floor(d2, 4) != 1)
        throw std::invalid_argument("check_kronecker_factorization: need discriminants with d1 * d2 = d");
    if (d1 < 0) std::swap(d1, d2);
    auto G = std::make_shared<const ClassGroup>(d);
    const ClassCharacter chi(G, GenusCharacter{d1, d2});
    const auto theta = theta_coefficients(chi, N);
    std::vector<i64> k1(static_cast<std::size_t>(N) + 1), k2(k1.size()), conv(k1.size(), 0);
    for (i64 n = 1; n <= N; ++n) {
        k1[n] = kronecker(d1, n);
        k2[n] = kronecker(d2, n);
    }
    for (i64 m = 1; m <= N; ++m)
        if (k1[m] != 0)
            for (i64 q = 1; m * q <= N; ++q) conv[m * q] += k1[m] * k2[q];
    CheckReport rep;
    for (i64 n = 1; n <= N; ++n) {
        ++rep.checked;
        if (theta.coeffs[n] != static_cast<double>(conv[n])) {
            rep.ok = false;
            rep.first_failure = n;
            std::ostringstream os;
            os << "d=" << d << " (" << d1 << "," << d2 << ") n=" << n << ": lambda=" << theta.coeffs[n]
               << " convolution=" << conv[n];
            rep.detail = os.str();
            break;
        }
    }
    return rep;
}

CheckReport check_hecke_relations(const ThetaCoefficients& theta) {
    const auto& lam = theta.coeffs;
    const i64 r = static_cast<i64>(isqrt(static_cast<u64>(theta.N)));
    CheckReport rep;
    for (i64 m = 1; m <= r; ++m) {
        for (i64 n = 1; n <= r; ++n) {
            double rhs = 0;
            const i64 g = std::gcd(m, n);
            for (i64 e = 1; e <= g; ++e)
                if (g % e == 0) rhs += kronecker(theta.d, e) * lam[m * n / (e * e)];
            const double lhs = lam[m] * lam[n];
            ++rep.checked;
            if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(lhs))) {
                rep.ok = false;
                rep.first_failure = m * n;
                std::ostringstream os;
                os << "m=" << m << " n=" << n << ": " << lhs << " != " << rhs;
                rep.detail = os.str();
                return rep;
            }
        }
    }
    return rep;
}

CheckReport check_hecke_relations(const ClassCharacter& chi, i64 N) {
    if (N > 10000) throw std::invalid_argument("check_hecke_relations: N must be <= 10^4");
    return check_hecke_relations(theta_coefficients(chi, N));
}

CheckReport check_basics(const ThetaCoefficients& theta, double tol) {
    CheckReport rep;
    auto fail = [&](i64 n, const std::string& what) {
        rep.ok = false;
        rep.first_failure = n;
        std::ostringstream os;
        os << theta.character << " d=" << theta.d << " n=" << n << ": " << what << " (lambda=" << theta.coeffs[n] << ")";
        rep.detail = os.str();
    };
    if (theta.max_imag > tol) {
        rep.ok = false;
        rep.detail = "imaginary part " + std::to_string(theta.max_imag);
        return rep;
    }
    const auto dn = divisor_counts(theta.N);
    for (i64 n = 1; n <= theta.N; ++n) {
        ++rep.checked;
        const double v = theta.coeffs[n];
        if (std::abs(v) > static_cast<double>(dn[n]) + tol) {
            fail(n, "exceeds d(n)");
            return rep;
        }
        if ((-theta.d) % n == 0 && std::abs(std::abs(v) - 1) > tol) {
            fail(n, "n | d but lambda != +-1");
            return rep;
        }
    }
    return rep;
}

} // namespace hypercount
