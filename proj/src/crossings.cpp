#include "envlab/crossings.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <unordered_map>

#include "envlab/envelope.hpp"

namespace envlab {

namespace {

constexpr int kSepSteps = 10;
constexpr double kDedupe = 1e-8;
constexpr double kAcceptResidual = 1e-10;
constexpr double kTargetResidual = 1e-13;
constexpr int kNewtonIters = 50;
constexpr int kMaxCellsPerSegment = 64;

struct Segment {
    int i = 0;
    Vec2 p, q;
};

std::uint64_t cell_key(long ix, long iy) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ix)) << 32) |
           static_cast<std::uint32_t>(iy);
}

// Intersection parameters of segments p0p1 and q0q1, endpoints included.
std::optional<std::pair<double, double>> intersect(Vec2 p0, Vec2 p1, Vec2 q0, Vec2 q1) {
    const Vec2 r = p1 - p0, s = q1 - q0;
    const double den = cross(r, s);
    const double len = norm(r) * norm(s);
    if (len == 0.0 || std::abs(den) <= 1e-14 * len) return std::nullopt;
    const Vec2 w = q0 - p0;
    const double u = cross(w, s) / den;
    const double v = cross(w, r) / den;
    constexpr double slack = 1e-9;
    if (u < -slack || u > 1.0 + slack || v < -slack || v > 1.0 + slack) return std::nullopt;
    return std::make_pair(u, v);
}

class Refiner {
public:
    Refiner(const ParametricCurve& c, double scale) : c_(c), scale_(scale) {}

    // Newton on P(T1) - P(T2) = 0. Returns the residual reached and whether
    // it meets the acceptance threshold.
    bool refine(double& T1, double& T2, double& residual, double max_step) const {
        residual = std::numeric_limits<double>::infinity();
        for (int it = 0; it < kNewtonIters; ++it) {
            const auto p1 = c_.point(T1), p2 = c_.point(T2);
            if (!p1 || !p2) return false;
            const Vec2 f = *p1 - *p2;
            residual = norm(f);
            if (residual <= kTargetResidual * scale_) return true;
            const auto v1 = c_.velocity(T1), v2 = c_.velocity(T2);
            if (!v1 || !v2) break;
            // [v1, -v2] (dT1, dT2) = -f
            const double det = -cross(*v1, *v2);
            if (det == 0.0) break;
            double d1 = (-f.x * -v2->y - -v2->x * -f.y) / det;
            double d2 = (v1->x * -f.y - -f.x * v1->y) / det;
            const double big = std::max(std::abs(d1), std::abs(d2));
            if (big > max_step) {
                d1 *= max_step / big;
                d2 *= max_step / big;
            }
            T1 += d1;
            T2 += d2;
            if (!c_.domain.periodic) {
                T1 = std::clamp(T1, c_.domain.lo, c_.domain.hi);
                T2 = std::clamp(T2, c_.domain.lo, c_.domain.hi);
            }
        }
        return residual <= kAcceptResidual * scale_;
    }

private:
    const ParametricCurve& c_;
    double scale_;
};

// Index of the finite arc containing T, arcs starting at each sorted cut.
int arc_index(const std::vector<double>& cuts, const Domain& dom, double T) {
    const double w = dom.wrap(T);
    const auto it = std::upper_bound(cuts.begin(), cuts.end(), w);
    const int k = static_cast<int>(it - cuts.begin()) - 1;
    if (k < 0) return dom.periodic ? static_cast<int>(cuts.size()) - 1 : 0;
    return dom.periodic ? k : k + 1;
}

}  // namespace

std::optional<int> samples_from_env() {
    const char* env = std::getenv("ENVLAB_SAMPLES");
    if (!env || !*env) return std::nullopt;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v <= 0 || v > 1L << 24) return std::nullopt;
    return static_cast<int>(v);
}

int default_crossing_samples(RationalSlope slope) {
    if (auto env = samples_from_env()) return *env;
    const long big = std::max(std::labs(slope.a()), std::labs(slope.b()));
    return static_cast<int>(8192 * big);
}

CrossingReport count_self_crossings(const ParametricCurve& curve, int samples) {
    const Domain& dom = curve.domain;
    const int n = std::max(samples, 64);
    const double h = dom.length() / n;
    const int npts = dom.periodic ? n : n + 1;

    std::vector<double> cuts;
    for (double c : curve.cuts) cuts.push_back(dom.wrap(c));
    std::sort(cuts.begin(), cuts.end());

    CrossingReport report;
    report.samples = n;
    report.partial = !cuts.empty();

    std::vector<std::optional<Vec2>> pts(static_cast<std::size_t>(npts));
    std::vector<double> norms;
    for (int i = 0; i < npts; ++i) {
        pts[i] = curve.point(dom.lo + i * h);
        if (pts[i]) norms.push_back(norm(*pts[i]));
    }
    if (norms.empty()) return report;
    std::vector<double> sorted = norms;
    std::nth_element(sorted.begin(), sorted.begin() + sorted.size() / 2, sorted.end());
    const double median = sorted[sorted.size() / 2];
    // Samples this far out belong to arcs running off to infinity.
    const double clip = 1e3 * (median + 1.0);

    auto near_cut = [&](double T0, double T1) {
        for (double c : cuts) {
            double lo = T0 - h, hi = T1 + h;
            if (dom.periodic) {
                const double mid = 0.5 * (T0 + T1);
                if (dom.distance(c, mid) <= 0.5 * (hi - lo)) return true;
            } else if (c >= lo && c <= hi) {
                return true;
            }
        }
        return false;
    };

    std::vector<Segment> segs;
    double total = 0.0, scale = 1.0;
    for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % npts;
        const auto& p = pts[i];
        const auto& q = pts[j];
        if (!p || !q) continue;
        if (norm(*p) > clip || norm(*q) > clip) continue;
        const double T0 = dom.lo + i * h;
        if (near_cut(T0, T0 + h)) continue;
        segs.push_back({i, *p, *q});
        total += norm(*q - *p);
        scale = std::max({scale, norm(*p), norm(*q)});
    }
    report.scale = scale;
    if (segs.size() < 2) return report;

    const double cell = std::max(2.0 * total / static_cast<double>(segs.size()), 1e-12 * scale);
    std::unordered_map<std::uint64_t, std::vector<int>> grid;
    std::vector<int> long_segments;
    for (int s = 0; s < static_cast<int>(segs.size()); ++s) {
        const auto& g = segs[s];
        const long x0 = static_cast<long>(std::floor(std::min(g.p.x, g.q.x) / cell));
        const long x1 = static_cast<long>(std::floor(std::max(g.p.x, g.q.x) / cell));
        const long y0 = static_cast<long>(std::floor(std::min(g.p.y, g.q.y) / cell));
        const long y1 = static_cast<long>(std::floor(std::max(g.p.y, g.q.y) / cell));
        if ((x1 - x0 + 1) * (y1 - y0 + 1) > kMaxCellsPerSegment) {
            long_segments.push_back(s);
            continue;
        }
        for (long ix = x0; ix <= x1; ++ix)
            for (long iy = y0; iy <= y1; ++iy) grid[cell_key(ix, iy)].push_back(s);
    }

    auto index_gap = [&](int a, int b) {
        int d = std::abs(segs[a].i - segs[b].i);
        if (dom.periodic) d = std::min(d, n - d);
        return d;
    };

    std::vector<std::pair<int, int>> pairs;
    for (const auto& [key, members] : grid) {
        for (std::size_t u = 0; u < members.size(); ++u)
            for (std::size_t v = u + 1; v < members.size(); ++v) {
                const int a = std::min(members[u], members[v]);
                const int b = std::max(members[u], members[v]);
                if (index_gap(a, b) > 1) pairs.emplace_back(a, b);
            }
    }
    for (int s : long_segments)
        for (int t = 0; t < static_cast<int>(segs.size()); ++t)
            if (t != s && index_gap(s, t) > 1) pairs.emplace_back(std::min(s, t), std::max(s, t));
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

    const Refiner refiner(curve, scale);
    const double sep = kSepSteps * h;
    std::vector<CrossingPoint> found;
    for (const auto& [a, b] : pairs) {
        const auto& sa = segs[a];
        const auto& sb = segs[b];
        const auto hit = intersect(sa.p, sa.q, sb.p, sb.q);
        if (!hit) continue;
        double T1 = dom.lo + (sa.i + hit->first) * h;
        double T2 = dom.lo + (sb.i + hit->second) * h;
        double residual = 0.0;
        if (!refiner.refine(T1, T2, residual, 4.0 * h)) {
            report.stalled.push_back({T1, T2, residual});
            continue;
        }
        T1 = dom.wrap(T1);
        T2 = dom.wrap(T2);
        if (T1 > T2) std::swap(T1, T2);
        const double gap = T2 - T1;
        if (gap < sep || (dom.periodic && dom.length() - gap < sep)) continue;
        const auto p = curve.point(T1);
        if (!p) continue;
        found.push_back({T1, T2, *p, residual});
    }

    std::sort(found.begin(), found.end(), [](const CrossingPoint& x, const CrossingPoint& y) {
        return x.T1 != y.T1 ? x.T1 < y.T1 : x.T2 < y.T2;
    });
    for (const auto& c : found) {
        const bool dup = std::any_of(report.points.begin(), report.points.end(), [&](const CrossingPoint& o) {
            return dom.distance(o.T1, c.T1) < kDedupe && dom.distance(o.T2, c.T2) < kDedupe;
        });
        if (!dup) report.points.push_back(c);
    }

    if (!cuts.empty()) {
        const int arcs = dom.periodic ? static_cast<int>(cuts.size()) : static_cast<int>(cuts.size()) + 1;
        report.arc_counts.assign(static_cast<std::size_t>(arcs), 0);
        for (const auto& c : report.points) {
            const int k1 = arc_index(cuts, dom, c.T1);
            const int k2 = arc_index(cuts, dom, c.T2);
            ++report.arc_counts[k1];
            if (k2 != k1) ++report.arc_counts[k2];
        }
    }
    return report;
}

CrossingReport count_self_crossings(const LineFamily& fam, const CrossingOptions& opt) {
    const Envelope env = make_envelope(fam);
    ParametricCurve curve;
    curve.domain = env.domain();
    curve.point = [&env](double T) { return env.sample(T).point; };
    curve.velocity = [&env](double T) { return env.velocity(T); };
    for (const auto& c : env.cuts()) curve.cuts.push_back(c.T_star);
    const int n = opt.samples > 0 ? opt.samples : default_crossing_samples(fam.slope);
    return count_self_crossings(curve, n);
}

CrossingReport count_self_crossings(const SliceCurve& slice, int samples) {
    ParametricCurve curve;
    curve.domain = slice.domain;
    curve.point = [&slice](double t) -> std::optional<Vec2> { return slice(t); };
    curve.velocity = [&slice](double t) -> std::optional<Vec2> { return slice.velocity(t); };
    return count_self_crossings(curve, samples);
}

}  // namespace envlab
