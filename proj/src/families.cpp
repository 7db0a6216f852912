#include "envlab/families.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "envlab/error.hpp"

namespace envlab {

std::string_view to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::OneCircle: return "one_circle";
        case FamilyKind::TwoCircle: return "two_circle";
        case FamilyKind::OffsetCircle: return "offset_circle";
        case FamilyKind::Caustic: return "caustic";
    }
    return "unknown";
}

std::string_view to_string(StandardModel model) {
    return model == StandardModel::Swallowtail ? "swallowtail" : "butterfly";
}

std::pair<Vec2, Vec2> LineFamily::endpoints(double T) const {
    if (kind == FamilyKind::Caustic) {
        return {{std::cos(T), std::sin(T)}, {params.r * std::cos(2 * T), params.r * std::sin(2 * T)}};
    }
    const double bT = static_cast<double>(slope.b()) * T;
    const double aT = static_cast<double>(slope.a()) * T;
    return {{std::cos(bT), std::sin(bT)},
            {params.c + params.r * std::cos(aT), params.d + params.r * std::sin(aT)}};
}

LineFamily chord_family(const TrigPoly& px, const TrigPoly& py, const TrigPoly& qx, const TrigPoly& qy) {
    LineFamily fam;
    fam.A = qy - py;
    fam.B = px - qx;
    fam.C = qx * py - px * qy;
    return fam;
}

namespace {

void require_radius(double r) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw Error(ErrorCode::InvalidParameter, "radius r must be positive, got " + std::to_string(r));
}

void require_slope(const RationalSlope& slope) {
    if (slope.excluded())
        throw Error(ErrorCode::InvalidSlope, "slope " + slope.str() + " is excluded (m in {-1, 0, 1})");
}

LineFamily circle_chords(RationalSlope slope, double r, double c, double d) {
    const int a = static_cast<int>(slope.a());
    const int b = static_cast<int>(slope.b());
    const TrigPoly qx = TrigPoly::constant(c) + TrigPoly::cos(a, r);
    const TrigPoly qy = TrigPoly::constant(d) + TrigPoly::sin(a, r);
    LineFamily fam = chord_family(TrigPoly::cos(b), TrigPoly::sin(b), qx, qy);
    fam.slope = slope;
    fam.params = {r, c, d};
    return fam;
}

}  // namespace

LineFamily one_circle(RationalSlope slope) {
    require_slope(slope);
    LineFamily fam = circle_chords(slope, 1.0, 0.0, 0.0);
    fam.kind = FamilyKind::OneCircle;
    return fam;
}

LineFamily two_circle(RationalSlope slope, double r) {
    require_slope(slope);
    require_radius(r);
    LineFamily fam = circle_chords(slope, r, 0.0, 0.0);
    fam.kind = FamilyKind::TwoCircle;
    fam.in_regime = r > 1.0;
    return fam;
}

LineFamily offset_circle(RationalSlope slope, double r, double c, double d) {
    require_slope(slope);
    require_radius(r);
    if (!std::isfinite(c) || !std::isfinite(d))
        throw Error(ErrorCode::InvalidParameter, "centre offsets must be finite");
    LineFamily fam = circle_chords(slope, r, c, d);
    fam.kind = FamilyKind::OffsetCircle;
    return fam;
}

LineFamily caustic_ray_family(double r) {
    require_radius(r);
    LineFamily fam;
    fam.A = TrigPoly::sin(1) * (TrigPoly::cos(1, 2.0 * r) - TrigPoly::constant(1.0));
    fam.B = TrigPoly::cos(1) - TrigPoly::cos(2, r);
    fam.C = TrigPoly::sin(1, -r);
    fam.slope = RationalSlope(2, 1);
    fam.params = {r, 0.0, 0.0};
    fam.kind = FamilyKind::Caustic;
    return fam;
}

CausticComparison compare_caustic(double r, double t) {
    const LineFamily ray = caustic_ray_family(r);
    const LineFamily chord = two_circle(RationalSlope(2, 1), r);
    const double l1[3] = {ray.A(t), ray.B(t), ray.C(t)};
    const double l2[3] = {chord.A(t), chord.B(t), chord.C(t)};
    const double cx = l1[1] * l2[2] - l1[2] * l2[1];
    const double cy = l1[2] * l2[0] - l1[0] * l2[2];
    const double cz = l1[0] * l2[1] - l1[1] * l2[0];
    const double n1 = std::sqrt(l1[0] * l1[0] + l1[1] * l1[1] + l1[2] * l1[2]);
    const double n2 = std::sqrt(l2[0] * l2[0] + l2[1] * l2[1] + l2[2] * l2[2]);

    CausticComparison out;
    out.t = t;
    out.r = r;
    // A vanishing coefficient vector (source on the mirror, t = 0) is
    // proportional to anything.
    out.proportionality = n1 * n2 > 0.0 ? std::sqrt(cx * cx + cy * cy + cz * cz) / (n1 * n2) : 0.0;
    out.point = {r * std::cos(2.0 * t), r * std::sin(2.0 * t)};
    const auto scaled = [&](const double* l) {
        const double scale = (std::abs(l[0]) + std::abs(l[1])) * std::max(1.0, norm(out.point)) + std::abs(l[2]);
        return std::abs(l[0] * out.point.x + l[1] * out.point.y + l[2]) / scale;
    };
    out.ray_residual = scaled(l1);
    out.chord_residual = scaled(l2);
    return out;
}

double PolyCatastrophe::value(double t, Vec2 p, double y, double z) const {
    if (model == StandardModel::Swallowtail) return t * t * t * t + p.x + p.y * t + z * t * t;
    return std::pow(t, 5) + p.x + p.y * t + y * t * t + z * t * t * t;
}

double PolyCatastrophe::dt(double t, Vec2 p, double y, double z) const {
    if (model == StandardModel::Swallowtail) return 4 * t * t * t + p.y + 2 * z * t;
    return 5 * std::pow(t, 4) + p.y + 2 * y * t + 3 * z * t * t;
}

SliceCurve swallowtail_slice(double z, Domain dom) {
    return {Polynomial{0.0, 0.0, z, 0.0, 3.0}, Polynomial{0.0, -2.0 * z, 0.0, -4.0}, dom};
}

SliceCurve butterfly_slice(double y, double z, Domain dom) {
    return {Polynomial{0.0, 0.0, y, 2.0 * z, 0.0, 4.0}, Polynomial{0.0, -2.0 * y, -3.0 * z, 0.0, -5.0}, dom};
}

PolyLineFamily swallowtail_family(double z, Domain dom) {
    return {Polynomial{1.0}, Polynomial{0.0, 1.0}, Polynomial{0.0, 0.0, z, 0.0, 1.0},
            PolyCatastrophe::swallowtail(), 0.0, z, dom};
}

PolyLineFamily butterfly_family(double y, double z, Domain dom) {
    return {Polynomial{1.0}, Polynomial{0.0, 1.0}, Polynomial{0.0, 0.0, y, z, 0.0, 1.0},
            PolyCatastrophe::butterfly(), y, z, dom};
}

}  // namespace envlab
