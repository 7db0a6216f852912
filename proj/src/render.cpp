#include "envlab/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "envlab/error.hpp"

namespace envlab {

namespace {

constexpr double kTurnLimit = 10.0 * std::numbers::pi / 180.0;
constexpr int kMaxDepth = 10;

template <class P>
ParametricCurve envelope_curve(const BasicEnvelope<P>& env) {
    ParametricCurve c;
    c.domain = env.domain();
    c.point = [&env](double T) { return env.sample(T).point; };
    c.velocity = [&env](double T) { return env.velocity(T); };
    for (const auto& cut : env.cuts()) c.cuts.push_back(cut.T_star);
    return c;
}

bool finite(Vec2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

double turn(Vec2 a, Vec2 m, Vec2 b) {
    const Vec2 u = m - a, v = b - m;
    const double nu = norm(u), nv = norm(v);
    if (nu == 0.0 || nv == 0.0) return 0.0;
    return std::acos(std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0));
}

class Sampler {
public:
    Sampler(const ParametricCurve& c, double jump, const Viewport* focus) : c_(c), jump_(jump), focus_(focus) {}

    std::optional<Vec2> at(double T) const {
        const auto p = c_.point(T);
        if (!p || !finite(*p)) return std::nullopt;
        return p;
    }

    // Appends the refined polyline between (Ta, pa) and (Tb, pb), excluding
    // pa and including pb; starts a new arc when a midpoint is at infinity.
    void refine(double Ta, Vec2 pa, double Tb, Vec2 pb, int depth, std::vector<Arc>& out) const {
        if (depth < kMaxDepth && !both_far(pa, pb) && norm(pb - pa) > 1e-6 * jump_) {
            const double Tm = 0.5 * (Ta + Tb);
            const auto pm = at(Tm);
            if (!pm) {
                out.emplace_back();
                out.back().points.push_back(pb);
                return;
            }
            if (norm(pb - pa) > jump_ || turn(pa, *pm, pb) > kTurnLimit) {
                refine(Ta, pa, Tm, *pm, depth + 1, out);
                refine(Tm, *pm, Tb, pb, depth + 1, out);
                return;
            }
        }
        out.back().points.push_back(pb);
    }

private:
    // Both ends beyond the same side of a doubled focus box.
    bool both_far(Vec2 a, Vec2 b) const {
        if (!focus_) return false;
        const double mx = focus_->width(), my = focus_->height();
        const double x0 = focus_->xmin - mx, x1 = focus_->xmax + mx;
        const double y0 = focus_->ymin - my, y1 = focus_->ymax + my;
        return (a.x < x0 && b.x < x0) || (a.x > x1 && b.x > x1) || (a.y < y0 && b.y < y0) ||
               (a.y > y1 && b.y > y1);
    }

    const ParametricCurve& c_;
    double jump_;
    const Viewport* focus_;
};

std::vector<Arc> sample_impl(const ParametricCurve& curve, int n, double jump, const Viewport* focus) {
    if (n < 64) throw Error(ErrorCode::InvalidParameter, "at least 64 samples are required");
    const Domain& dom = curve.domain;
    const double len = dom.length();
    std::vector<double> cuts;
    for (double c : curve.cuts) cuts.push_back(dom.wrap(c));
    std::sort(cuts.begin(), cuts.end());

    // Parameter intervals between cuts, with flags for ends lying on a cut.
    struct Span {
        double s, e;
        bool open_s, open_e;
    };
    std::vector<Span> spans;
    if (cuts.empty()) {
        spans.push_back({dom.lo, dom.hi, false, false});
    } else if (dom.periodic) {
        for (std::size_t k = 0; k < cuts.size(); ++k) {
            const double e = k + 1 < cuts.size() ? cuts[k + 1] : cuts.front() + len;
            spans.push_back({cuts[k], e, true, true});
        }
    } else {
        double s = dom.lo;
        bool open = false;
        for (double c : cuts) {
            spans.push_back({s, c, open, true});
            s = c;
            open = true;
        }
        spans.push_back({s, dom.hi, true, false});
    }

    const Sampler sampler(curve, jump, focus);
    const bool whole_period = dom.periodic && cuts.empty();
    std::vector<Arc> arcs;
    for (const Span& sp : spans) {
        const double L = sp.e - sp.s;
        if (L <= 0.0) continue;
        const int m = std::max(2, static_cast<int>(std::ceil(n * L / len)));
        std::vector<double> Ts;
        if (whole_period) {
            for (int j = 0; j < m; ++j) Ts.push_back(sp.s + L * j / m);
        } else if (sp.open_s || sp.open_e) {
            const double h = L / m;
            const double first = sp.open_s ? sp.s + 0.5 * h : sp.s;
            const double last = sp.open_e ? sp.e - 0.5 * h : sp.e;
            const int count = static_cast<int>(std::lround((last - first) / h)) + 1;
            for (int j = 0; j < count; ++j) Ts.push_back(first + (last - first) * j / std::max(1, count - 1));
        } else {
            for (int j = 0; j <= m; ++j) Ts.push_back(sp.s + L * j / m);
        }

        std::vector<Arc> local;
        bool have_prev = false;
        Vec2 prev{};
        double prev_T = 0.0;
        for (double T : Ts) {
            const auto p = sampler.at(T);
            if (!p) {
                have_prev = false;
                continue;
            }
            if (!have_prev) {
                local.emplace_back();
                local.back().points.push_back(*p);
            } else {
                sampler.refine(prev_T, prev, T, *p, 0, local);
            }
            have_prev = true;
            prev = *p;
            prev_T = T;
        }
        const auto p0 = sampler.at(Ts.front());
        if (whole_period && local.size() == 1 && have_prev && p0) {
            sampler.refine(prev_T, prev, dom.lo + len, *p0, 0, local);
            if (local.size() == 1) {
                local.back().points.pop_back();
                local.back().closed = true;
            }
        }
        for (auto& a : local)
            if (a.points.size() >= 2) arcs.push_back(std::move(a));
    }
    return arcs;
}

// Liang-Barsky: the part of p + s (q - p), s in [0, 1], inside the box.
std::optional<std::pair<double, double>> clip_segment(Vec2 p, Vec2 q, const Viewport& vp) {
    double t0 = 0.0, t1 = 1.0;
    const double dx = q.x - p.x, dy = q.y - p.y;
    const double P[4] = {-dx, dx, -dy, dy};
    const double Q[4] = {p.x - vp.xmin, vp.xmax - p.x, p.y - vp.ymin, vp.ymax - p.y};
    for (int i = 0; i < 4; ++i) {
        if (P[i] == 0.0) {
            if (Q[i] < 0.0) return std::nullopt;
            continue;
        }
        const double r = Q[i] / P[i];
        if (P[i] < 0.0) t0 = std::max(t0, r);
        else t1 = std::min(t1, r);
    }
    if (t0 > t1) return std::nullopt;
    return std::make_pair(t0, t1);
}

Vec2 lerp(Vec2 p, Vec2 q, double s) { return p + (q - p) * s; }

Vec2 clamp_to(Vec2 p, const Viewport& vp) {
    return {std::clamp(p.x, vp.xmin, vp.xmax), std::clamp(p.y, vp.ymin, vp.ymax)};
}

}  // namespace

double Viewport::diagonal() const noexcept { return std::hypot(width(), height()); }

bool Viewport::contains(Vec2 p) const noexcept {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
}

std::vector<Arc> sample_curve(const ParametricCurve& curve, int n, double jump) {
    return sample_impl(curve, n, jump, nullptr);
}

std::vector<Arc> sample_envelope(const LineFamily& fam, int n, const Viewport& vp) {
    const Envelope env = make_envelope(fam);
    return sample_impl(envelope_curve(env), n, vp.diagonal() / 50.0, &vp);
}

std::vector<Arc> sample_envelope(const LineFamily& fam, int n) {
    const Envelope env = make_envelope(fam);
    const Viewport vp = default_viewport(fam, env);
    return sample_impl(envelope_curve(env), n, vp.diagonal() / 50.0, &vp);
}

std::vector<Arc> clip_arcs(const std::vector<Arc>& arcs, const Viewport& vp) {
    std::vector<Arc> out;
    for (const Arc& arc : arcs) {
        const auto& pts = arc.points;
        if (pts.empty()) continue;
        const std::size_t nseg = arc.closed ? pts.size() : pts.size() - 1;
        const bool all_inside = std::all_of(pts.begin(), pts.end(), [&](Vec2 p) { return vp.contains(p); });
        if (all_inside) {
            out.push_back(arc);
            continue;
        }
        std::vector<Arc> pieces;
        bool open_piece = false;
        for (std::size_t i = 0; i < nseg; ++i) {
            const Vec2 p = pts[i], q = pts[(i + 1) % pts.size()];
            const auto c = clip_segment(p, q, vp);
            if (!c) {
                open_piece = false;
                continue;
            }
            if (!open_piece || c->first > 0.0) {
                pieces.emplace_back();
                pieces.back().points.push_back(clamp_to(lerp(p, q, c->first), vp));
                open_piece = true;
            }
            pieces.back().points.push_back(clamp_to(lerp(p, q, c->second), vp));
            if (c->second < 1.0) open_piece = false;
        }
        // A closed curve whose first point is inside: join the wrap-around piece.
        if (arc.closed && pieces.size() > 1 && vp.contains(pts.front()) && open_piece) {
            auto& last = pieces.back().points;
            auto& first = pieces.front().points;
            last.insert(last.end(), first.begin() + 1, first.end());
            pieces.front() = std::move(pieces.back());
            pieces.pop_back();
        }
        for (auto& a : pieces)
            if (a.points.size() >= 2) out.push_back(std::move(a));
    }
    return out;
}

Viewport default_viewport(const LineFamily& fam, const Envelope& env) {
    std::vector<CircleShape> circles{{{0.0, 0.0}, 1.0}};
    std::vector<Vec2> extra;
    if (fam.kind == FamilyKind::TwoCircle || fam.kind == FamilyKind::OffsetCircle)
        circles.push_back({{fam.params.c, fam.params.d}, fam.params.r});
    if (fam.kind == FamilyKind::Caustic) extra.push_back({fam.params.r, 0.0});

    double outer = 0.0;
    for (const auto& c : circles) outer = std::max(outer, norm(c.center) + c.radius);
    for (const auto& p : extra) outer = std::max(outer, norm(p));
    const double cap = 5.0 * outer;

    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    auto take = [&](Vec2 p) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    };
    for (const auto& c : circles) {
        take(c.center - Vec2{c.radius, c.radius});
        take(c.center + Vec2{c.radius, c.radius});
    }
    for (const auto& p : extra) take(p);
    if (!env.degenerate()) {
        const Domain dom = env.domain();
        constexpr int probes = 1024;
        for (int i = 0; i < probes; ++i) {
            const auto s = env.sample(dom.lo + dom.length() * i / probes);
            if (s.point && finite(*s.point) && norm(*s.point) <= cap) take(*s.point);
        }
    }
    const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
    const double hx = 0.6 * (x1 - x0), hy = 0.6 * (y1 - y0);
    Viewport vp{cx - hx, cx + hx, cy - hy, cy + hy};
    vp.xmin = std::max(vp.xmin, -cap);
    vp.xmax = std::min(vp.xmax, cap);
    vp.ymin = std::max(vp.ymin, -cap);
    vp.ymax = std::min(vp.ymax, cap);
    return vp;
}

namespace {

nlohmann::json family_json(const LineFamily& fam) {
    return {{"kind", std::string(to_string(fam.kind))},
            {"a", fam.slope.a()},
            {"b", fam.slope.b()},
            {"r", fam.params.r},
            {"c", fam.params.c},
            {"d", fam.params.d}};
}

nlohmann::json predictions_json(const LineFamily& fam) {
    if (fam.kind != FamilyKind::OneCircle && fam.kind != FamilyKind::TwoCircle) return nlohmann::json::object();
    const AnalyticPrediction p = predict(fam);
    nlohmann::json j{{"general_cusps", p.general_cusp_count},
                     {"extra_cusps", p.extra_cusp_count},
                     {"total_cusps", p.total_cusps()},
                     {"tangencies", p.tangency_count},
                     {"infinity_cuts", p.infinity_cut_count},
                     {"in_regime", p.in_regime}};
    j["extreme_r"] = std::isfinite(p.extreme_r) ? nlohmann::json(p.extreme_r) : nlohmann::json(nullptr);
    j["infinity_window"] = p.infinity_window
                               ? nlohmann::json::array({p.infinity_window->first, p.infinity_window->second})
                               : nlohmann::json(nullptr);
    if (p.crossing_count) j["crossings"] = *p.crossing_count;
    return j;
}

template <class P>
nlohmann::json cuts_json(const BasicEnvelope<P>& env) {
    auto out = nlohmann::json::array();
    for (const auto& c : env.cuts()) {
        nlohmann::json j{{"T", c.T_star}, {"order", c.order}};
        j["direction"] = c.direction ? nlohmann::json::array({c.direction->x, c.direction->y}) : nlohmann::json(nullptr);
        out.push_back(j);
    }
    return out;
}

void add_singular_markers(Scene& scene) {
    for (const auto& sp : scene.singular)
        if (sp.location && scene.viewport.contains(*sp.location))
            scene.markers.push_back({*sp.location, sp.T, std::string(to_string(sp.cls))});
}

// Real roots of t^3 + p t + q, counted without multiplicity.
int cubic_distinct_roots(double p, double q) {
    if (p == 0.0 && q == 0.0) return 1;
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    const double scale = 4.0 * std::abs(p * p * p) + 27.0 * q * q;
    if (std::abs(disc) <= 1e-12 * scale) return 2;
    return disc > 0.0 ? 3 : 1;
}

}  // namespace

Scene envelope_scene(const LineFamily& fam, const SceneOptions& opt) {
    const Envelope env = make_envelope(fam);
    Scene scene;
    scene.viewport = opt.viewport ? *opt.viewport : default_viewport(fam, env);
    const ParametricCurve curve = envelope_curve(env);
    scene.arcs = clip_arcs(sample_impl(curve, opt.samples, scene.viewport.diagonal() / 50.0, &scene.viewport),
                           scene.viewport);

    scene.circles.push_back({{0.0, 0.0}, 1.0});
    if (fam.kind == FamilyKind::TwoCircle || fam.kind == FamilyKind::OffsetCircle)
        scene.circles.push_back({{fam.params.c, fam.params.d}, fam.params.r});

    if (opt.lines) {
        const int count = std::max(1, opt.line_count);
        for (int k = 0; k < count; ++k) {
            const auto [p, q] = fam.endpoints(2.0 * std::numbers::pi * k / count);
            scene.lines.push_back({p, q});
        }
    }

    scene.singular = find_singular_points(env, singular_search_samples(fam));
    add_singular_markers(scene);
    for (const auto& rp : env.removable_points())
        if (scene.viewport.contains(rp.point)) scene.markers.push_back({rp.point, rp.T, "Tangency"});

    scene.family = family_json(fam);
    scene.cuts = cuts_json(env);
    scene.predictions = predictions_json(fam);
    return scene;
}

Scene standard_scene(StandardModel model, double y, double z, const SceneOptions& opt) {
    const bool swallow = model == StandardModel::Swallowtail;
    const SliceCurve slice = swallow ? swallowtail_slice(z) : butterfly_slice(y, z);
    const PolyLineFamily fam = swallow ? swallowtail_family(z) : butterfly_family(y, z);

    Scene scene;
    scene.singular = find_singular_points(fam);
    const CrossingReport cr = count_self_crossings(slice, std::max(opt.samples, 8192));
    if (opt.viewport) {
        scene.viewport = *opt.viewport;
    } else {
        // Frame the singular points and crossings; a featureless slice gets
        // the image of |t| <= 0.9.
        std::vector<Vec2> focus;
        for (const auto& sp : scene.singular)
            if (sp.location) focus.push_back(*sp.location);
        for (const auto& c : cr.points) focus.push_back(c.point);
        double min_half = 0.15;
        if (focus.empty()) {
            for (int i = 0; i <= 400; ++i) focus.push_back(slice(-0.9 + 1.8 * i / 400));
            min_half = 0.5;
        }
        double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
        for (const Vec2 p : focus) {
            x0 = std::min(x0, p.x);
            x1 = std::max(x1, p.x);
            y0 = std::min(y0, p.y);
            y1 = std::max(y1, p.y);
        }
        const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
        const double half = std::max({0.8 * (x1 - x0), 0.8 * (y1 - y0), min_half});
        scene.viewport = {cx - half, cx + half, cy - half, cy + half};
    }

    ParametricCurve curve;
    curve.domain = slice.domain;
    curve.point = [&slice](double t) -> std::optional<Vec2> { return slice(t); };
    curve.velocity = [&slice](double t) -> std::optional<Vec2> { return slice.velocity(t); };
    scene.arcs =
        clip_arcs(sample_impl(curve, opt.samples, scene.viewport.diagonal() / 50.0, &scene.viewport), scene.viewport);

    add_singular_markers(scene);
    for (const auto& c : cr.points)
        if (scene.viewport.contains(c.point)) scene.markers.push_back({c.point, c.T1, "Crossing"});

    scene.family = {{"kind", std::string(to_string(model))}, {"y", y}, {"z", z}};
    if (swallow) {
        scene.predictions = {{"singular_points", z < 0.0 ? 2 : (z == 0.0 ? 1 : 0)}, {"crossings", z < 0.0 ? 1 : 0}};
    } else {
        // Singular points of the slice are the roots of 20t^3 + 6zt + 2y.
        scene.predictions = {{"singular_points", cubic_distinct_roots(0.3 * z, 0.1 * y)}};
    }
    return scene;
}

namespace {

struct Frame {
    Viewport vp;
    double w, h;

    double X(double x) const { return (x - vp.xmin) / vp.width() * w; }
    double Y(double y) const { return (vp.ymax - y) / vp.height() * h; }
};

void put(std::string& out, const char* fmt, auto... args) {
    char buf[512];
    const int n = std::snprintf(buf, sizeof buf, fmt, args...);
    out.append(buf, static_cast<std::size_t>(std::max(0, std::min(n, static_cast<int>(sizeof buf) - 1))));
}

const char* marker_color(const std::string& label) {
    if (label == "SimpleCusp") return "#1f5fbf";
    if (label == "Swallowtail") return "#d08000";
    if (label == "Butterfly") return "#b01fb0";
    if (label == "HigherDegenerate") return "#000000";
    if (label == "Tangency") return "#2a9d2a";
    return "#606060";
}

void svg_body(std::string& out, const Scene& scene, const Frame& f) {
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!scene.circles.empty()) {
        out += "<g class=\"circles\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\" stroke-dasharray=\"5 4\">\n";
        for (const auto& c : scene.circles)
            put(out, "<ellipse cx=\"%.3f\" cy=\"%.3f\" rx=\"%.3f\" ry=\"%.3f\"/>\n", f.X(c.center.x), f.Y(c.center.y),
                c.radius / f.vp.width() * f.w, c.radius / f.vp.height() * f.h);
        out += "</g>\n";
    }
    if (!scene.lines.empty()) {
        out += "<g class=\"lines\" stroke=\"#5aa06a\" stroke-width=\"0.4\">\n";
        for (const auto& l : scene.lines)
            put(out, "<line x1=\"%.3f\" y1=\"%.3f\" x2=\"%.3f\" y2=\"%.3f\"/>\n", f.X(l.p.x), f.Y(l.p.y), f.X(l.q.x),
                f.Y(l.q.y));
        out += "</g>\n";
    }
    out += "<g class=\"arcs\" fill=\"none\" stroke=\"#c62828\" stroke-width=\"1.5\" stroke-linejoin=\"round\">\n";
    for (const auto& a : scene.arcs) {
        out += "<path d=\"";
        for (std::size_t i = 0; i < a.points.size(); ++i)
            put(out, "%s%.3f %.3f", i == 0 ? "M" : " L", f.X(a.points[i].x), f.Y(a.points[i].y));
        if (a.closed) out += " Z";
        out += "\"/>\n";
    }
    out += "</g>\n";
    if (!scene.markers.empty()) {
        out += "<g class=\"markers\" font-family=\"sans-serif\" font-size=\"10\">\n";
        for (const auto& m : scene.markers) {
            const double x = f.X(m.point.x), y = f.Y(m.point.y);
            if (m.label == "Crossing") {
                put(out, "<path d=\"M%.3f %.3f L%.3f %.3f M%.3f %.3f L%.3f %.3f\" stroke=\"%s\" stroke-width=\"1.5\"/>\n",
                    x - 3.5, y - 3.5, x + 3.5, y + 3.5, x - 3.5, y + 3.5, x + 3.5, y - 3.5, marker_color(m.label));
            } else {
                put(out, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"3.5\" fill=\"%s\"/>\n", x, y, marker_color(m.label));
            }
            put(out, "<text x=\"%.3f\" y=\"%.3f\" fill=\"%s\">%s</text>\n", x + 5.0, y - 5.0, marker_color(m.label),
                m.label.c_str());
        }
        out += "</g>\n";
    }
}

std::pair<double, double> frame_size(const Viewport& vp, int width_px) {
    const double w = width_px;
    const double h = vp.width() > 0.0 ? std::round(w * vp.height() / vp.width()) : w;
    return {w, std::max(1.0, h)};
}

}  // namespace

std::string emit_svg(const Scene& scene, int width_px) {
    const auto [w, h] = frame_size(scene.viewport, width_px);
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    put(out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%.0f\" height=\"%.0f\" "
        "viewBox=\"0 0 %.0f %.0f\">\n",
        w, h, w, h);
    svg_body(out, scene, Frame{scene.viewport, w, h});
    out += "</svg>\n";
    return out;
}

nlohmann::json scene_json(const Scene& scene, bool include_lines) {
    nlohmann::json j;
    j["family"] = scene.family;
    auto arcs = nlohmann::json::array();
    for (const auto& a : scene.arcs) {
        auto pts = nlohmann::json::array();
        for (const auto& p : a.points) pts.push_back({p.x, p.y});
        if (a.closed && !a.points.empty()) pts.push_back({a.points.front().x, a.points.front().y});
        arcs.push_back(std::move(pts));
    }
    j["arcs"] = std::move(arcs);
    j["cuts"] = scene.cuts;
    auto singular = nlohmann::json::array();
    for (const auto& sp : scene.singular) {
        if (!sp.location) continue;
        singular.push_back({{"T", sp.T},
                            {"x", sp.location->x},
                            {"y", sp.location->y},
                            {"class", std::string(to_string(sp.cls))},
                            {"multiplicity", sp.multiplicity},
                            {"derivatives", sp.derivatives}});
    }
    j["singular"] = std::move(singular);
    j["predictions"] = scene.predictions;
    if (include_lines) {
        auto lines = nlohmann::json::array();
        for (const auto& l : scene.lines) lines.push_back({{l.p.x, l.p.y}, {l.q.x, l.q.y}});
        j["lines"] = std::move(lines);
    }
    return j;
}

ClockGrid clock_grid(RationalSlope slope, double r0, double d0, double delta, int samples) {
    if (!(delta >= 0.0)) throw Error(ErrorCode::InvalidParameter, "grid spacing must be non-negative");
    ClockGrid grid;
    grid.r0 = r0;
    grid.d0 = d0;
    SceneOptions opt;
    opt.samples = samples;
    for (int j = 1; j >= -1; --j)
        for (int i = -1; i <= 1; ++i) {
            grid.offsets.emplace_back(i * delta, j * delta);
            grid.cells.push_back(envelope_scene(offset_circle(slope, r0 + i * delta, 0.0, d0 + j * delta), opt));
        }
    return grid;
}

std::string emit_clock_svg(const ClockGrid& grid, int cell_px) {
    const double cell = cell_px;
    const double label = 16.0;
    const double W = 3.0 * cell, H = 3.0 * (cell + label);
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    put(out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"%.0f\" height=\"%.0f\" "
        "viewBox=\"0 0 %.0f %.0f\">\n",
        W, H, W, H);
    for (std::size_t k = 0; k < grid.cells.size(); ++k) {
        const auto& scene = grid.cells[k];
        const double ox = static_cast<double>(k % 3) * cell;
        const double oy = static_cast<double>(k / 3) * (cell + label);
        // Square cell around the viewport centre.
        Viewport vp = scene.viewport;
        const double half = 0.5 * std::max(vp.width(), vp.height());
        const double cx = 0.5 * (vp.xmin + vp.xmax), cy = 0.5 * (vp.ymin + vp.ymax);
        vp = {cx - half, cx + half, cy - half, cy + half};
        put(out, "<g transform=\"translate(%.0f %.0f)\">\n", ox, oy);
        put(out, "<text x=\"4\" y=\"12\" font-family=\"sans-serif\" font-size=\"11\">r=%.3f d=%.3f</text>\n",
            grid.r0 + grid.offsets[k].first, grid.d0 + grid.offsets[k].second);
        put(out, "<g transform=\"translate(0 %.0f)\">\n", label);
        svg_body(out, scene, Frame{vp, cell, cell});
        out += "</g>\n</g>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace envlab
