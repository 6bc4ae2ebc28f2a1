#include "hypercount/count.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

namespace hypercount {

namespace {

using boost::multiprecision::cpp_int;

constexpr long double kBoundaryTol = 1e-9L;

Rational exact(double v) { return Rational(v); }

/// 4u(z, gamma w) + 2 <= X decided without rounding.
bool exact_inside(const PlanePoint& z, const PlanePoint& w, const Mat2& g, double X) {
    if (z.form() && w.form()) {
        const QuadForm q = act(*w.form(), g.inverse());
        const cpp_int m = codiscriminant(q, *z.form());
        if (m <= 0) return false;
        const cpp_int dd0 = cpp_int(q.disc()) * z.form()->disc();
        const Rational x = exact(X);
        return Rational(4 * m * m) <= x * x * Rational(dd0);
    }
    const Rational zx = exact(z.x()), zy = exact(z.y()), wx = exact(w.x()), wy = exact(w.y());
    const Rational a(g.a), b(g.b), c(g.c), d(g.d);
    const Rational cwd = c * wx + d;
    const Rational D = cwd * cwd + c * c * wy * wy;
    const Rational P = (a * wx + b) * cwd + a * c * wy * wy;
    const Rational re = zx * D - P;
    const Rational im = zy * D - wy;
    return re * re + im * im <= (exact(X) - 2) * zy * wy * D;
}

/// Lattice enumeration over bottom rows (c, d) with c in [c_begin, c_end).
template <class Emit>
void enumerate_rows(const PlanePoint& z, const PlanePoint& w, double X, i64 c_begin, i64 c_end, Emit&& emit) {
    const long double zx = z.x(), zy = z.y(), wx = w.x(), wy = w.y();
    const long double Xl = X;
    // Im(gamma w) >= Im(z) / X, padded so rounding cannot drop a row.
    const long double B = Xl * wy / zy * (1 + 1e-9L) + 1e-12L;
    for (i64 c = c_begin; c < c_end; ++c) {
        i64 d_lo, d_hi;
        if (c == 0) {
            d_lo = d_hi = 1;
        } else {
            const long double rem = B - static_cast<long double>(c) * c * wy * wy;
            if (rem < 0) continue;
            const long double r = std::sqrt(rem);
            d_lo = static_cast<i64>(std::floor(-c * wx - r)) - 1;
            d_hi = static_cast<i64>(std::ceil(-c * wx + r)) + 1;
        }
        for (i64 d = d_lo; d <= d_hi; ++d) {
            if (std::gcd(c, d) != 1) continue;
            const auto e = ext_gcd(d, c);
            const Mat2 g0{e.x, -e.y, c, d};
            const long double cwd = c * wx + d;
            const long double den = cwd * cwd + static_cast<long double>(c) * c * wy * wy;
            const long double yp = wy / den;
            const long double xp = ((g0.a * wx + g0.b) * cwd + static_cast<long double>(g0.a) * c * wy * wy) / den;
            const long double lhs = (Xl - 2) * zy * yp;
            const long double dy2 = (zy - yp) * (zy - yp);
            const long double Q = lhs - dy2;
            // Tolerances are relative to X on the 4u + 2 scale.
            const long double scale = Xl * zy * yp;
            if (Q < -kBoundaryTol * scale) continue;
            const long double half = std::sqrt(std::max(Q, 0.0L));
            const long double centre = zx - xp;
            const i64 n_lo = static_cast<i64>(std::ceil(centre - half)) - 1;
            const i64 n_hi = static_cast<i64>(std::floor(centre + half)) + 1;
            for (i64 n = n_lo; n <= n_hi; ++n) {
                const long double dx = centre - n;
                const long double margin = lhs - dx * dx - dy2;
                const Mat2 g{g0.a + n * c, g0.b + n * d, c, d};
                bool inside;
                if (margin > kBoundaryTol * scale) inside = true;
                else if (margin < -kBoundaryTol * scale) inside = false;
                else inside = exact_inside(z, w, g, X);
                if (inside) emit(g, (dx * dx + dy2) / (4 * zy * yp));
            }
        }
    }
}

i64 max_row(const PlanePoint& z, const PlanePoint& w, double X) {
    const long double B = static_cast<long double>(X) * w.y() / z.y() * (1 + 1e-9L) + 1e-12L;
    return static_cast<i64>(std::floor(std::sqrt(B) / w.y())) + 1;
}

void require_threshold(double X) {
    if (!(X >= 2) || !std::isfinite(X)) throw std::invalid_argument("count: X must be finite and >= 2");
}

std::vector<Shell> group_shells(std::vector<double> values, i64 weight) {
    std::sort(values.begin(), values.end());
    std::vector<Shell> shells;
    for (double v : values) {
        if (!shells.empty() && std::abs(shells.back().value - v) <= 1e-12 * std::max(1.0, std::abs(v)))
            shells.back().multiplicity += weight;
        else
            shells.push_back({v, weight});
    }
    return shells;
}

} // namespace

CountReport count_general(const PlanePoint& z, const PlanePoint& w, double X, const CountOptions& opts) {
    require_threshold(X);
    const i64 rows = max_row(z, w, X);
    const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(rows)));
    std::vector<i64> counts(threads, 0);
    std::vector<std::vector<double>> values(threads);
    auto work = [&](unsigned t) {
        // Interleaved row blocks balance the shrinking row lengths.
        for (i64 c0 = static_cast<i64>(t) * 64; c0 < rows; c0 += static_cast<i64>(threads) * 64)
            enumerate_rows(z, w, X, c0, std::min(rows, c0 + 64), [&](const Mat2&, long double uu) {
                ++counts[t];
                if (opts.collect_shells) values[t].push_back(static_cast<double>(4 * uu + 2));
            });
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    CountReport report;
    report.X = X;
    report.mode = CountMode::Float;
    report.count = 2 * std::accumulate(counts.begin(), counts.end(), i64{0});
    report.main_term = kMainTermConstant * X;
    report.error = static_cast<double>(report.count) - report.main_term;
    if (opts.collect_shells) {
        std::vector<double> all;
        for (auto& v : values) all.insert(all.end(), v.begin(), v.end());
        report.shells = group_shells(std::move(all), 2);
    }
    return report;
}

void for_each_lattice_point(const PlanePoint& z, const PlanePoint& w, double X_max, const LatticeVisitor& visit) {
    require_threshold(X_max);
    enumerate_rows(z, w, X_max, 0, max_row(z, w, X_max), [&](const Mat2& g, long double uu) { visit(g, uu); });
}

bool exact_within(const PlanePoint& z, const PlanePoint& w, const Mat2& gamma, double X) {
    return exact_inside(z, w, gamma, X);
}

std::vector<long double> distance_profile(const PlanePoint& z, const PlanePoint& w, double X_max) {
    std::vector<long double> out;
    for_each_lattice_point(z, w, X_max, [&](const Mat2&, long double uu) {
        out.push_back(4 * uu + 2);
        out.push_back(4 * uu + 2);
    });
    std::sort(out.begin(), out.end());
    return out;
}

ErrorMoment error_moment(const PlanePoint& z, const PlanePoint& w, double X, std::size_t samples) {
    require_threshold(X);
    if (samples == 0) throw std::invalid_argument("error_moment: need at least one sample");
    const auto profile = distance_profile(z, w, samples == 1 ? X : 2 * X);
    ErrorMoment out{X, {}, 0, 0};
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = samples == 1 ? X : X + X * static_cast<double>(i) / static_cast<double>(samples - 1);
        const auto n = std::upper_bound(profile.begin(), profile.end(), static_cast<long double>(x)) - profile.begin();
        out.samples.push_back({x, static_cast<double>(n) - kMainTermConstant * x});
    }
    if (samples == 1) {
        out.mean_E = out.samples[0].E;
        out.mean_E2 = out.samples[0].E * out.samples[0].E;
        return out;
    }
    double s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double wgt = (i == 0 || i + 1 == samples) ? 0.5 : 1.0;
        s1 += wgt * out.samples[i].E;
        s2 += wgt * out.samples[i].E * out.samples[i].E;
    }
    out.mean_E = s1 / static_cast<double>(samples - 1);
    out.mean_E2 = s2 / static_cast<double>(samples - 1);
    return out;
}

double fitted_exponent(const std::vector<ErrorMoment>& moments) {
    if (moments.size() < 2) throw std::invalid_argument("fitted_exponent: need at least two values of X");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& m : moments) {
        if (!(m.mean_E2 > 0)) throw std::invalid_argument("fitted_exponent: second moment must be positive");
        const double x = std::log(m.X), y = std::log(m.mean_E2);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(moments.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

i64 codisc_bound(const Threshold& X, i64 d, i64 d0) {
    if (X < 2) throw std::invalid_argument("count_heegner_exact: X must be >= 2");
    // Largest m with 4 m^2 den^2 <= num^2 |d d0|.
    const cpp_int rhs = cpp_int(X.numerator()) * X.numerator() * (cpp_int(d) * d0);
    const cpp_int den2 = cpp_int(X.denominator()) * X.denominator() * 4;
    cpp_int m = boost::multiprecision::sqrt(cpp_int(rhs / den2));
    while (4 * (m + 1) * (m + 1) * X.denominator() * X.denominator() <= rhs) ++m;
    while (m > 0 && m * m * den2 > rhs) --m;
    return m.convert_to<i64>();
}

void for_each_form_near(const QuadForm& p0, i64 d, i64 x, const std::function<void(const QuadForm&, i64)>& visit) {
    if (!p0.positive_definite()) throw std::invalid_argument("for_each_form_near: p0 must be positive definite");
    if (d >= 0 || mod_floor(d, 4) > 1) throw std::invalid_argument("for_each_form_near: d must be a negative discriminant");
    const i64 d0 = p0.disc();
    const i64 a0 = p0.a, b0 = p0.b, c0 = p0.c;
    if (x <= 0) return;
    // a^2 |d0| < 2 a a0 x, see the discriminant of the quadratic in b below.
    const i64 a_max = static_cast<i64>((i128(2) * a0 * x) / -d0);
    std::vector<i64> roots;
    for (i64 a = 1; a <= a_max; ++a) {
        const i128 disc = i128(a) * a * d0 + i128(a0) * a0 * d + i128(2) * a * a0 * x;
        if (disc < 0) continue;
        const i128 s = static_cast<i128>(isqrt(static_cast<u64>(disc))) + 1;
        const i64 lo = static_cast<i64>((i128(a) * b0 - s) / a0) - 1;
        const i64 hi = static_cast<i64>((i128(a) * b0 + s) / a0) + 1;
        roots.clear();
        const i64 mod = 2 * a;
        for (i64 r = 0; r < mod; ++r)
            if (mod_floor(r * r - d, 4 * a) == 0) roots.push_back(r);
        for (i64 r : roots) {
            for (i64 b = lo + mod_floor(r - lo, mod); b <= hi; b += mod) {
                // 2a m = a0 b^2 - 2 a b0 b + 4 a^2 c0 - a0 d
                const i128 twice_am = i128(a0) * b * b - i128(2) * a * b0 * b + i128(4) * a * a * c0 - i128(a0) * d;
                if (twice_am > i128(2) * a * x || twice_am <= 0) continue;
                const QuadForm q{a, b, static_cast<i64>((i128(b) * b - d) / (4 * a))};
                visit(q, static_cast<i64>(twice_am / (2 * a)));
            }
        }
    }
}

CountReport count_heegner_codisc(const QuadForm& p, const QuadForm& p0, i64 m_max) {
    if (!p.positive_definite() || !p0.positive_definite())
        throw std::invalid_argument("count_heegner_exact: forms must be positive definite");
    const Reduction red = reduce(p);
    const i64 stab = static_cast<i64>(automorphs(red.form).size());
    std::vector<i64> ms;
    for_each_form_near(p0, p.disc(), m_max, [&](const QuadForm& q, i64 m) {
        if (reduce(q).form == red.form) ms.push_back(m);
    });
    const double root = std::sqrt(static_cast<double>(p.disc()) * static_cast<double>(p0.disc()));
    CountReport report;
    report.mode = CountMode::ExactHeegner;
    report.X = 2.0 * static_cast<double>(m_max) / root;
    report.count = stab * static_cast<i64>(ms.size());
    report.main_term = kMainTermConstant * report.X;
    report.error = static_cast<double>(report.count) - report.main_term;
    std::vector<double> values(ms.begin(), ms.end());
    std::sort(values.begin(), values.end());
    for (double v : values) {
        if (!report.shells.empty() && report.shells.back().value == v) report.shells.back().multiplicity += stab;
        else report.shells.push_back({v, stab});
    }
    return report;
}

CountReport count_heegner_exact(const QuadForm& p, const QuadForm& p0, const Threshold& X) {
    if (!p.positive_definite() || !p0.positive_definite())
        throw std::invalid_argument("count_heegner_exact: forms must be positive definite");
    CountReport report = count_heegner_codisc(p, p0, codisc_bound(X, p.disc(), p0.disc()));
    report.X = boost::rational_cast<double>(X);
    report.main_term = kMainTermConstant * report.X;
    report.error = static_cast<double>(report.count) - report.main_term;
    return report;
}

i64 n_d(const QuadForm& p0, i64 d, i64 x) {
    if (d == -3) throw std::invalid_argument("n_d: d = -3 is excluded");
    if (!is_odd_squarefree_discriminant(d)) throw std::invalid_argument("n_d: d must be negative, squarefree, 1 mod 4");
    if (!p0.positive_definite()) throw std::invalid_argument("n_d: p0 must be positive definite");
    if (p0.disc() == d) throw std::invalid_argument("n_d: d must differ from disc(p0)");
    i64 total = 0;
    for_each_form_near(p0, d, x, [&](const QuadForm&, i64) { ++total; });
    return total;
}

PairClassInstance pair_class_number(i64 d, i64 d0, i64 delta) {
    if (d == d0) throw std::invalid_argument("pair_class_number: d and d0 must differ");
    if (!is_odd_squarefree_discriminant(d) || !is_odd_squarefree_discriminant(d0))
        throw std::invalid_argument("pair_class_number: discriminants must be negative, squarefree, 1 mod 4");
    if (delta >= 0) throw std::invalid_argument("pair_class_number: delta must be negative");
    if (i128(delta) * delta < i128(d) * d0)
        throw std::invalid_argument("pair_class_number: delta^2 < d d0 admits no positive definite pair");
    PairClassInstance out{d, d0, delta, {}};
    const i64 m = -delta;
    const ClassGroup G0(d0);
    for (const QuadForm& p0 : G0.forms()) {
        const auto aut = automorphs(p0);
        std::set<QuadForm> orbits;
        const i64 a0 = p0.a, b0 = p0.b;
        const i64 a_max = static_cast<i64>((i128(2) * a0 * m) / -d0);
        for (i64 a = 1; a <= a_max; ++a) {
            // a0 b^2 - 2 a b0 b + (4 a^2 c0 - a0 d - 2 a m) = 0
            const i128 disc = i128(a) * a * d0 + i128(a0) * a0 * d + i128(2) * a * a0 * m;
            if (disc < 0) continue;
            const i128 s = isqrt(static_cast<u64>(disc));
            if (s * s != disc) continue;
            for (const i128 num : {i128(a) * b0 + s, i128(a) * b0 - s}) {
                if (num % a0 != 0) continue;
                const i128 b = num / a0;
                if ((b * b - d) % (4 * a) != 0) continue;
                const QuadForm p{a, static_cast<i64>(b), static_cast<i64>((b * b - d) / (4 * a))};
                QuadForm canon = p;
                for (const Mat2& g : aut) canon = std::min(canon, act(p, g));
                orbits.insert(canon);
                if (s == 0) break;
            }
        }
        for (const QuadForm& p : orbits) out.representatives.emplace_back(p, p0);
    }
    return out;
}

i64 hardy_williams(i64 d, i64 d0, i64 delta) {
    if (std::gcd(d * d0, delta) != 1)
        throw gcd_condition_error("hardy_williams: gcd(d d0, delta) != 1, identity not asserted there");
    const i128 n4 = i128(delta) * delta - i128(d) * d0;
    if (n4 <= 0) throw std::invalid_argument("hardy_williams: need delta^2 > d d0");
    if (n4 % 4 != 0) throw std::invalid_argument("hardy_williams: need delta^2 = d d0 mod 4");
    i64 sum = 0;
    for (u64 e : divisors(static_cast<u64>(n4 / 4))) sum += kronecker(d, static_cast<i64>(e));
    return sum;
}

PairClassSum pair_class_sum(i64 d, i64 d0, i64 x) {
    if (d == d0) throw std::invalid_argument("pair_class_sum: d and d0 must differ");
    if (d >= -3 || d0 >= -3) throw std::invalid_argument("pair_class_sum: need d, d0 < -3");
    if (!is_odd_squarefree_discriminant(d) || !is_odd_squarefree_discriminant(d0))
        throw std::invalid_argument("pair_class_sum: discriminants must be squarefree and 1 mod 4");
    PairClassSum out{0, 0};
    for (i64 m = 1; m <= x; ++m) {
        if (i128(m) * m < i128(d) * d0) continue;
        out.lhs += static_cast<i64>(pair_class_number(d, d0, -m).count());
    }
    const ClassGroup G(d), G0(d0);
    i64 total = 0;
    for (const QuadForm& p : G.forms())
        for (const QuadForm& p0 : G0.forms()) total += count_heegner_codisc(p, p0, x).count;
    if (total % 2 != 0) throw std::logic_error("pair_class_sum: odd group-element count");
    out.rhs = total / 2;
    return out;
}

} // namespace hypercount
