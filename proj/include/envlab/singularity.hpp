#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "envlab/envelope.hpp"
#include "envlab/families.hpp"

namespace envlab {

enum class SingularClass { SimpleCusp, Swallowtail, Butterfly, HigherDegenerate };

std::string_view to_string(SingularClass cls);

struct SingularPoint {
    double T = 0.0;
    std::optional<Vec2> location;
    SingularClass cls = SingularClass::SimpleCusp;
    // F_tt, F_ttt, F_tttt, F_ttttt at (T, X(T), Y(T)).
    std::array<double, 4> derivatives{};
    // Per-derivative vanishing thresholds used by the chain.
    std::array<double, 4> thresholds{};
    // X''Y''' - X'''Y'' from finite differences of the envelope; NaN when
    // the stencil would cross an infinity cut.
    double curvature_check = 0.0;
    // Order of the root of F_tt along the envelope.
    int multiplicity = 1;
};

struct SingularityOptions {
    // Grid for the root search; 0 picks 4096 * max(|a|, b).
    int samples = 0;
};

// Roots of F_tt(T, X(T), Y(T)) over the domain, each classified by the
// derivative chain F_ttt, F_tttt, F_ttttt. Removable points and infinity
// cuts are excluded. Throws Error(UnresolvedRoot) when a candidate cannot be
// confirmed as a root.
std::vector<SingularPoint> find_singular_points(const LineFamily& fam, const SingularityOptions& opt = {});
std::vector<SingularPoint> find_singular_points(const PolyLineFamily& fam, const SingularityOptions& opt = {});

template <class P>
std::vector<SingularPoint> find_singular_points(const BasicEnvelope<P>& env, int samples);

// Root-search grid for a family: requested if positive, else 4096 * max(|a|, b).
int singular_search_samples(const LineFamily& fam, int requested = 0);

// Throws Error(PreconditionFailed) if F_tt is not small at T or the envelope
// is at infinity there.
SingularPoint classify(const LineFamily& fam, double T);

template <class P>
SingularPoint classify(const BasicEnvelope<P>& env, double T);

struct AnalyticPrediction {
    int general_cusp_count = 0;
    int extra_cusp_count = 0;
    int tangency_count = 0;
    // |m - 2| / |2m - 1|; +inf for m = 1/2.
    double extreme_r = 0.0;
    // (1, 1/|m|] when |m| < 1.
    std::optional<std::pair<double, double>> infinity_window;
    int infinity_cut_count = 0;
    // One-circle families only.
    std::optional<int> crossing_count;
    bool in_regime = true;

    int total_cusps() const noexcept { return general_cusp_count + extra_cusp_count; }
};

// Closed-form cusp, tangency, cut and crossing counts for chord families.
// Throws Error(InvalidKind) for offset and caustic families.
AnalyticPrediction predict(const LineFamily& fam);

// Crossing count of the one-circle envelope with slope a/b.
int predicted_one_circle_crossings(RationalSlope slope);

struct TaylorSeries {
    double T0 = 0.0;
    double t0 = 0.0;
    // Coefficients of (T - T0)^k.
    std::vector<double> x_T;
    std::vector<double> y_T;
    // Coefficients of (t - t0)^k with t = bT, i.e. x_T[k] / b^k.
    std::vector<double> x;
    std::vector<double> y;
};

// Truncated Taylor series of the envelope about T0 from Richardson-extrapolated
// central differences. order <= 6. Throws Error(NearInfinity) when an
// infinity cut lies within the difference stencil.
TaylorSeries taylor_at(const LineFamily& fam, double T0, int order);

// A swallowtail point located on an offset-circle family by solving
// F_tt = F_ttt = 0 along the envelope for (T, r) at fixed d.
struct SwallowtailWitness {
    double r = 0.0;
    double d = 0.0;
    SingularPoint point;
    // Singular-point counts just below and above r.
    int cusps_below = 0;
    int cusps_above = 0;
};

// Scans r over [r_lo, r_hi] at fixed (c = 0, d) for a change of the singular
// point count by two and refines the transition. Empty if none is found.
std::optional<SwallowtailWitness> locate_swallowtail(RationalSlope slope, double d, double r_lo, double r_hi,
                                                     int steps = 40);

}  // namespace envlab
