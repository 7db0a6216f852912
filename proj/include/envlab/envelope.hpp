#pragma once

#include <array>
#include <optional>
#include <vector>

#include "envlab/families.hpp"
#include "envlab/roots.hpp"
#include "envlab/vec2.hpp"

namespace envlab {

// One point of the envelope X = (BC' - B'C) / D, Y = (A'C - AC') / D with
// D = AB' - A'B. An empty point means the envelope is at infinity.
struct EnvelopeSample {
    double T = 0.0;
    std::optional<Vec2> point;
    double denom = 0.0;
    // T sits on a common root of numerators and denominator; the point is the limit.
    bool removable = false;

    bool at_infinity() const noexcept { return !point.has_value(); }
};

// Non-removable root of the denominator.
struct InfinityCut {
    double T_star = 0.0;
    // Limit of the unit line direction (-B, A); empty when A = B = 0 there.
    std::optional<Vec2> direction;
    double denom = 0.0;
    int order = 1;
};

// Common root of numerators and denominator (chord endpoints coincide).
struct RemovablePoint {
    double T = 0.0;
    int order = 1;
    Vec2 point;
};

// Envelope of the line family A(T) x + B(T) y + C(T) = 0 over a domain.
//
// The coefficient ring P is TrigPoly (periodic families) or Polynomial
// (standard catastrophe models). Denominator roots are located once at
// construction and split into removable points and infinity cuts by comparing
// orders of vanishing computed from exact derivatives. Near a removable point
// the envelope is evaluated from the quotient of the Taylor series of the
// numerators and denominator about that point.
template <class P>
class BasicEnvelope {
public:
    static constexpr int kLineOrders = 7;

    BasicEnvelope(P A, P B, P C, Domain dom, int samples = 0);

    // Throws Error(Degenerate) when numerators and denominator vanish to an
    // order that cannot be resolved.
    EnvelopeSample sample(double T) const;

    // (X', Y') at T; empty at infinity.
    std::optional<Vec2> velocity(double T) const;

    // k-th T-derivative of the line function at p: A^(k) x + B^(k) y + C^(k).
    double line_derivative(int k, double T, Vec2 p) const;
    // (max|A^(k)| + max|B^(k)|) * max(1, |p|) + max|C^(k)|, maxima over the domain.
    double line_scale(int k, Vec2 p) const;

    double denominator(double T) const { return D_[0](T); }
    double denominator_scale() const noexcept { return d_scale_; }
    const P& denominator_poly() const noexcept { return D_[0]; }
    const P& numerator_x_poly() const noexcept { return NX_[0]; }
    const P& numerator_y_poly() const noexcept { return NY_[0]; }
    const P& coefficient(int which, int k) const;  // which: 0 = A, 1 = B, 2 = C

    // F_tt along the envelope times the denominator: A'' NX + B'' NY + C'' D.
    P singular_numerator() const;

    const std::vector<InfinityCut>& cuts() const noexcept { return cuts_; }
    const std::vector<RemovablePoint>& removable_points() const noexcept { return removable_; }
    const Domain& domain() const noexcept { return dom_; }
    bool degenerate() const noexcept { return d_scale_ == 0.0; }

    // Distance from T to the nearest cut; +inf if there are none.
    double distance_to_cut(double T) const;

private:
    static constexpr int kChain = 12;
    static constexpr double kSeriesWindow = 2e-3;

    struct Series {
        double T = 0.0;
        std::vector<double> x;
        std::vector<double> y;
    };

    int vanishing_order(const std::vector<P>& chain, const std::vector<double>& scales, double T) const;
    const Series* nearest_series(double T) const;
    Series build_series(double T, int order) const;

    std::array<P, kLineOrders> A_, B_, C_;
    std::array<double, kLineOrders> a_sup_{}, b_sup_{}, c_sup_{};
    std::vector<P> D_, NX_, NY_;
    std::vector<double> d_sup_, nx_sup_, ny_sup_;
    Domain dom_;
    double d_scale_ = 0.0;
    std::vector<InfinityCut> cuts_;
    std::vector<RemovablePoint> removable_;
    std::vector<Series> series_;
};

using Envelope = BasicEnvelope<TrigPoly>;
using PolyEnvelope = BasicEnvelope<Polynomial>;

Envelope make_envelope(const LineFamily& fam);
PolyEnvelope make_envelope(const PolyLineFamily& fam);

// Default grid size for sampling a family's coefficient polynomials.
int default_root_samples(const LineFamily& fam);

EnvelopeSample envelope_point(const LineFamily& fam, double T);

// Explicit formulas for one- and two-circle families; throws Error(InvalidKind)
// for the others.
Vec2 closed_form_envelope(const LineFamily& fam, double T);

struct CutReport {
    std::vector<InfinityCut> cuts;
    // Two-circle families only: 2|b-a| for 1 < r < 1/|m|, |b-a| at r = 1/|m|, else 0.
    std::optional<int> analytic_count;
};

CutReport infinity_cuts(const LineFamily& fam);

// Expected number of infinity cuts of a two-circle family in its regime r > 1.
int predicted_cut_count(RationalSlope slope, double r);

}  // namespace envlab
