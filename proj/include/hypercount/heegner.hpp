#pragma once

#include <optional>
#include <vector>

#include "hypercount/qforms.hpp"

namespace hypercount {

/// A point of the upper half-plane. Points coming from a positive definite
/// form keep that form so that distance comparisons can be made exactly.
class PlanePoint {
public:
    /// Throws std::invalid_argument unless y > 0 and both coordinates are finite.
    PlanePoint(double x, double y);

    /// The root (-b + i sqrt|d|) / 2a of a x^2 + b x + c.
    static PlanePoint from_form(const QuadForm& f);
    static PlanePoint i() { return from_form({1, 0, 1}); }
    static PlanePoint rho() { return from_form({1, 1, 1}); }

    double x() const { return x_; }
    double y() const { return y_; }
    const std::optional<QuadForm>& form() const { return form_; }

private:
    double x_, y_;
    std::optional<QuadForm> form_;
};

struct HeegnerPoint {
    QuadForm form;
    i64 d;

    PlanePoint point() const { return PlanePoint::from_form(form); }
};

/// Point-pair invariant |z - w|^2 / (4 Im z Im w); cosh d(z, w) = 2u + 1.
double u(const PlanePoint& z, const PlanePoint& w);
long double u_ld(long double zx, long double zy, long double wx, long double wy);

/// 2(a c0 + a0 c) - b b0. For positive definite p, p0:
/// 4u(z_p, z_p0) + 2 = 2m / sqrt|d d0|.
i64 codiscriminant(const QuadForm& p, const QuadForm& p0);

/// One point per class of discriminant d, from the reduced forms.
std::vector<HeegnerPoint> heegner_points(i64 d);

/// Image of z under the Moebius action of m.
PlanePoint mobius(const Mat2& m, const PlanePoint& z);

} // namespace hypercount
