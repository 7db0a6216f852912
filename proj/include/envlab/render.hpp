#pragma once

#include <optional>
#include <string>
#include <vector>

#include "envlab/crossings.hpp"
#include "envlab/envelope.hpp"
#include "envlab/families.hpp"
#include "envlab/singularity.hpp"
#include "envlab/vec2.hpp"
#include "json.hpp"

namespace envlab {

struct Viewport {
    double xmin = -1.0;
    double xmax = 1.0;
    double ymin = -1.0;
    double ymax = 1.0;

    double width() const noexcept { return xmax - xmin; }
    double height() const noexcept { return ymax - ymin; }
    double diagonal() const noexcept;
    bool contains(Vec2 p) const noexcept;
};

struct Arc {
    std::vector<Vec2> points;
    // The curve returns to its first point; the last point is not repeated.
    bool closed = false;
};

struct Segment2 {
    Vec2 p, q;
};

struct CircleShape {
    Vec2 center;
    double radius = 1.0;
};

struct Marker {
    Vec2 point;
    double T = 0.0;
    // A SingularClass name, or "Tangency" / "Crossing".
    std::string label;
};

struct Scene {
    std::vector<Arc> arcs;
    std::vector<Segment2> lines;
    std::vector<CircleShape> circles;
    std::vector<Marker> markers;
    Viewport viewport;

    // Carried into JSON as is.
    nlohmann::json family = nlohmann::json::object();
    nlohmann::json cuts = nlohmann::json::array();
    nlohmann::json predictions = nlohmann::json::object();
    // Singular points, including any that fall outside the viewport.
    std::vector<SingularPoint> singular;
};

// Envelope arcs from n uniform samples, bisected wherever consecutive points
// turn by more than 10 degrees or are further apart than jump. Arcs are split
// at the curve's cuts and at samples at infinity. Throws
// Error(InvalidParameter) for n < 64.
std::vector<Arc> sample_curve(const ParametricCurve& curve, int n, double jump);
std::vector<Arc> sample_envelope(const LineFamily& fam, int n, const Viewport& vp);
std::vector<Arc> sample_envelope(const LineFamily& fam, int n);

// Pieces of the arcs inside the viewport, cut at the boundary.
std::vector<Arc> clip_arcs(const std::vector<Arc>& arcs, const Viewport& vp);

// Bounding box of the family's circles and its finite envelope points,
// inflated by 20% and capped at five times the outer radius.
Viewport default_viewport(const LineFamily& fam, const Envelope& env);

struct SceneOptions {
    int samples = 2048;
    bool lines = false;
    int line_count = 72;
    std::optional<Viewport> viewport;
};

Scene envelope_scene(const LineFamily& fam, const SceneOptions& opt = {});
Scene standard_scene(StandardModel model, double y, double z, const SceneOptions& opt = {});

// Deterministic SVG 1.1 document.
std::string emit_svg(const Scene& scene, int width_px = 640);

// {family, arcs, cuts, singular, predictions}; "lines" is added on request.
nlohmann::json scene_json(const Scene& scene, bool include_lines = false);

struct ClockGrid {
    double r0 = 0.0;
    double d0 = 0.0;
    // (dr, dd) per cell, row-major with the +d row first.
    std::vector<std::pair<double, double>> offsets;
    std::vector<Scene> cells;
};

// 3x3 grid of offset-circle scenes at (r0 + i delta, d0 + j delta).
// Throws Error(InvalidParameter) for delta < 0.
ClockGrid clock_grid(RationalSlope slope, double r0, double d0, double delta, int samples = 1024);

std::string emit_clock_svg(const ClockGrid& grid, int cell_px = 320);

}  // namespace envlab
