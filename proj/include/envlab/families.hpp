#pragma once

#include <string_view>
#include <utility>

#include "envlab/polynomial.hpp"
#include "envlab/roots.hpp"
#include "envlab/trig_poly.hpp"
#include "envlab/vec2.hpp"

namespace envlab {

enum class FamilyKind { OneCircle, TwoCircle, OffsetCircle, Caustic };

std::string_view to_string(FamilyKind kind);

// Second circle: radius r, centre (c, d).
struct CircleParams {
    double r = 1.0;
    double c = 0.0;
    double d = 0.0;
};

// One-parameter family of lines F(T, x, y) = A(T) x + B(T) y + C(T) = 0 with
// T in [0, 2pi). For chord families the line at T joins
// (cos bT, sin bT) to (c + r cos aT, d + r sin aT).
struct LineFamily {
    TrigPoly A;
    TrigPoly B;
    TrigPoly C;
    RationalSlope slope{2, 1};
    CircleParams params;
    FamilyKind kind = FamilyKind::OneCircle;
    // False for two-circle families with r <= 1, outside the regime r > 1
    // the counting results assume.
    bool in_regime = true;

    Domain domain() const { return Domain::period(); }

    double line(double T, Vec2 p) const { return A(T) * p.x + B(T) * p.y + C(T); }

    // The two points the chord at T joins. Caustic families report the
    // mirror point and the point on the circle of radius r hit by the ray.
    std::pair<Vec2, Vec2> endpoints(double T) const;
};

// Line through the two trigonometric curves P(T) = (px, py), Q(T) = (qx, qy):
// A = qy - py, B = -(qx - px), C = qx*py - px*qy.
LineFamily chord_family(const TrigPoly& px, const TrigPoly& py, const TrigPoly& qx, const TrigPoly& qy);

// Chords of the unit circle joining angle bT to angle aT. Rejects m in {-1, 0, 1}.
LineFamily one_circle(RationalSlope slope);

// Unit circle to the concentric circle of radius r. Rejects r <= 0.
LineFamily two_circle(RationalSlope slope, double r);

// Unit circle to the circle of radius r centred at (c, d). Rejects r <= 0.
LineFamily offset_circle(RationalSlope slope, double r, double c, double d);

// Rays from a point source at (r, 0) reflected in the unit circle, written as
// sin t (2r cos t - 1) x + (cos t - r cos 2t) y - r sin t = 0. Rejects r <= 0.
LineFamily caustic_ray_family(double r);

// The reflected ray at t against the chord of two_circle(2/1, r) at T = t.
struct CausticComparison {
    double t = 0.0;
    double r = 0.0;
    // |L1 x L2| / (|L1| |L2|) for the coefficient vectors (A, B, C).
    double proportionality = 0.0;
    // (r cos 2t, r sin 2t), and each line's scaled residual there.
    Vec2 point;
    double ray_residual = 0.0;
    double chord_residual = 0.0;
};

CausticComparison compare_caustic(double r, double t);

enum class StandardModel { Swallowtail, Butterfly };

std::string_view to_string(StandardModel model);

// The polynomial families G = t^4 + x + yt + zt^2 and
// H = t^5 + w + xt + yt^2 + zt^3.
struct PolyCatastrophe {
    StandardModel model = StandardModel::Swallowtail;
    int degree = 4;
    int unfolding_arity = 1;

    static PolyCatastrophe swallowtail() { return {StandardModel::Swallowtail, 4, 1}; }
    static PolyCatastrophe butterfly() { return {StandardModel::Butterfly, 5, 2}; }

    // Potential and its t-derivative at a plane point p with slice parameters
    // (y, z); for G only z is used and p = (x, y).
    double value(double t, Vec2 p, double y, double z) const;
    double dt(double t, Vec2 p, double y, double z) const;
};

// Closed-form discriminant slice t -> (x(t), y(t)).
struct SliceCurve {
    Polynomial x;
    Polynomial y;
    Domain domain;

    Vec2 operator()(double t) const { return {x(t), y(t)}; }
    Vec2 velocity(double t) const { return {x.derivative_at(1, t), y.derivative_at(1, t)}; }
};

// x = 3t^4 + zt^2, y = -4t^3 - 2zt.
SliceCurve swallowtail_slice(double z, Domain dom = Domain::interval(-2.0, 2.0));
// (w, x) = (4t^5 + 2zt^3 + yt^2, -5t^4 - 2yt - 3zt^2).
SliceCurve butterfly_slice(double y, double z, Domain dom = Domain::interval(-2.0, 2.0));

// A standard model viewed as a family of lines in the slice plane, so the
// generic envelope machinery applies: G is 1*x + t*y + (t^4 + zt^2).
struct PolyLineFamily {
    Polynomial A;
    Polynomial B;
    Polynomial C;
    PolyCatastrophe model;
    double y = 0.0;
    double z = 0.0;
    Domain dom;

    Domain domain() const { return dom; }
};

PolyLineFamily swallowtail_family(double z, Domain dom = Domain::interval(-2.0, 2.0));
PolyLineFamily butterfly_family(double y, double z, Domain dom = Domain::interval(-2.0, 2.0));

}  // namespace envlab
