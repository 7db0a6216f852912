#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "envlab/families.hpp"
#include "envlab/roots.hpp"
#include "envlab/vec2.hpp"

namespace envlab {

struct CrossingPoint {
    // T1 < T2 inside the domain.
    double T1 = 0.0;
    double T2 = 0.0;
    Vec2 point;
    // |P(T1) - P(T2)| after refinement.
    double residual = 0.0;
};

// A candidate whose Newton refinement did not converge.
struct StalledCandidate {
    double T1 = 0.0;
    double T2 = 0.0;
    double residual = 0.0;
};

struct CrossingReport {
    std::vector<CrossingPoint> points;
    // Set when the curve has infinity cuts; the count then covers the finite
    // arcs only.
    bool partial = false;
    // Crossings touching each finite arc, arcs ordered from the first cut.
    // Empty when the curve has no cuts.
    std::vector<int> arc_counts;
    std::vector<StalledCandidate> stalled;
    int samples = 0;
    // Largest |P| over the samples, floored at 1.
    double scale = 1.0;

    int count() const noexcept { return static_cast<int>(points.size()); }
};

// A parametrised plane curve; point() and velocity() are empty at infinity.
struct ParametricCurve {
    Domain domain;
    std::function<std::optional<Vec2>(double)> point;
    std::function<std::optional<Vec2>(double)> velocity;
    std::vector<double> cuts;
};

struct CrossingOptions {
    // Polyline size; 0 picks 8192 * max(|a|, b) for line families, or
    // ENVLAB_SAMPLES when set.
    int samples = 0;
};

// Self-intersections of the envelope. Segment pairs of the sampled polyline
// are bucketed on a uniform grid, each intersecting pair is refined by Newton
// on P(T1) - P(T2), and pairs closer than 10 grid steps in T are dropped.
CrossingReport count_self_crossings(const LineFamily& fam, const CrossingOptions& opt = {});
CrossingReport count_self_crossings(const SliceCurve& curve, int samples = 8192);
CrossingReport count_self_crossings(const ParametricCurve& curve, int samples);

// 8192 * max(|a|, b), overridden by a positive ENVLAB_SAMPLES.
int default_crossing_samples(RationalSlope slope);

// Positive integer from ENVLAB_SAMPLES, if set.
std::optional<int> samples_from_env();

}  // namespace envlab
