#include "hypercount/heegner.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hypercount {

PlanePoint::PlanePoint(double x, double y) : x_(x), y_(y) {
    if (!std::isfinite(x) || !std::isfinite(y) || !(y > 0))
        throw std::invalid_argument("PlanePoint: need finite x and y > 0");
}

PlanePoint PlanePoint::from_form(const QuadForm& f) {
    if (!f.positive_definite()) throw std::invalid_argument("PlanePoint: form " + f.str() + " is not positive definite");
    const long double a = f.a;
    PlanePoint p(static_cast<double>(-f.b / (2 * a)), static_cast<double>(std::sqrt(static_cast<long double>(-f.disc())) / (2 * a)));
    p.form_ = f;
    return p;
}

long double u_ld(long double zx, long double zy, long double wx, long double wy) {
    const long double dx = zx - wx, dy = zy - wy;
    return (dx * dx + dy * dy) / (4 * zy * wy);
}

double u(const PlanePoint& z, const PlanePoint& w) {
    return static_cast<double>(u_ld(z.x(), z.y(), w.x(), w.y()));
}

i64 codiscriminant(const QuadForm& p, const QuadForm& p0) {
    const i128 m = 2 * (i128(p.a) * p0.c + i128(p0.a) * p.c) - i128(p.b) * p0.b;
    if (m > i128(INT64_MAX) || m < i128(INT64_MIN)) throw std::overflow_error("codiscriminant overflow");
    return static_cast<i64>(m);
}

std::vector<HeegnerPoint> heegner_points(i64 d) {
    const ClassGroup G(d);
    std::vector<HeegnerPoint> out;
    for (const auto& f : G.forms()) out.push_back({f, d});
    return out;
}

PlanePoint mobius(const Mat2& m, const PlanePoint& z) {
    const std::complex<long double> w(z.x(), z.y());
    const std::complex<long double> r = (static_cast<long double>(m.a) * w + static_cast<long double>(m.b)) /
                                        (static_cast<long double>(m.c) * w + static_cast<long double>(m.d));
    if (z.form() && m.det() == 1) return PlanePoint::from_form(act(*z.form(), m.inverse()));
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

} // namespace hypercount
