#include "envlab/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "envlab/error.hpp"
#include "envlab/numdiff.hpp"

namespace envlab {

std::string_view to_string(SingularClass cls) {
    switch (cls) {
        case SingularClass::SimpleCusp: return "SimpleCusp";
        case SingularClass::Swallowtail: return "Swallowtail";
        case SingularClass::Butterfly: return "Butterfly";
        case SingularClass::HigherDegenerate: return "HigherDegenerate";
    }
    return "Unknown";
}

namespace {

constexpr double kClassTol = 1e-7;
constexpr double kRootTol = 1e-6;
constexpr double kExcludeRadius = 1e-6;
constexpr double kCurvatureStep = 0.02;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

template <class P>
double curvature_check(const BasicEnvelope<P>& env, double T) {
    const double reach = 2.0 * kCurvatureStep;
    if (env.distance_to_cut(T) < 4.0 * reach) return std::numeric_limits<double>::quiet_NaN();
    if (!env.domain().periodic && (T - reach < env.domain().lo || T + reach > env.domain().hi))
        return std::numeric_limits<double>::quiet_NaN();
    auto X = [&](double s) { return env.sample(s).point.value_or(Vec2{}).x; };
    auto Y = [&](double s) { return env.sample(s).point.value_or(Vec2{}).y; };
    const double x2 = richardson_derivative(X, T, 2, kCurvatureStep, 4);
    const double x3 = richardson_derivative(X, T, 3, kCurvatureStep, 4);
    const double y2 = richardson_derivative(Y, T, 2, kCurvatureStep, 4);
    const double y3 = richardson_derivative(Y, T, 3, kCurvatureStep, 4);
    return x2 * y3 - x3 * y2;
}

}  // namespace

int singular_search_samples(const LineFamily& fam, int requested) {
    if (requested > 0) return requested;
    const auto a = std::abs(fam.slope.a());
    return static_cast<int>(4096 * std::max<std::int64_t>(a, fam.slope.b()));
}

template <class P>
SingularPoint classify(const BasicEnvelope<P>& env, double T) {
    const EnvelopeSample s = env.sample(T);
    if (s.at_infinity()) throw Error(ErrorCode::PreconditionFailed, "envelope is at infinity at this parameter");
    const Vec2 p = *s.point;

    SingularPoint sp;
    sp.T = T;
    sp.location = p;
    for (int k = 2; k <= 5; ++k) {
        sp.derivatives[k - 2] = env.line_derivative(k, T, p);
        sp.thresholds[k - 2] = kClassTol * env.line_scale(k, p);
    }
    if (std::abs(sp.derivatives[0]) > kRootTol * env.line_scale(2, p)) {
        std::ostringstream os;
        os << "F_tt = " << sp.derivatives[0] << " is not small at T = " << T;
        throw Error(ErrorCode::PreconditionFailed, os.str());
    }
    const auto vanishes = [&](int k) { return std::abs(sp.derivatives[k - 2]) <= sp.thresholds[k - 2]; };
    if (!vanishes(3)) sp.cls = SingularClass::SimpleCusp;
    else if (!vanishes(4)) sp.cls = SingularClass::Swallowtail;
    else if (!vanishes(5)) sp.cls = SingularClass::Butterfly;
    else sp.cls = SingularClass::HigherDegenerate;
    sp.curvature_check = curvature_check(env, T);
    return sp;
}

template <class P>
std::vector<SingularPoint> find_singular_points(const BasicEnvelope<P>& env, int samples) {
    std::vector<SingularPoint> out;
    if (env.degenerate()) return out;
    const P numerator = env.singular_numerator();
    RootOptions opt;
    opt.samples = samples > 0 ? samples : 4096;
    for (const Root& root : find_roots(numerator, env.domain(), opt)) {
        bool excluded = env.distance_to_cut(root.x) < kExcludeRadius;
        for (const auto& rp : env.removable_points())
            excluded = excluded || env.domain().distance(rp.T, root.x) < kExcludeRadius;
        if (excluded) continue;
        try {
            SingularPoint sp = classify(env, root.x);
            sp.multiplicity = root.multiplicity;
            out.push_back(sp);
        } catch (const Error& e) {
            std::ostringstream os;
            os << "candidate root near T = " << root.x << " (+/- " << opt.x_tol << ") could not be resolved: "
               << e.what();
            throw Error(ErrorCode::UnresolvedRoot, os.str());
        }
    }
    return out;
}

template SingularPoint classify<TrigPoly>(const BasicEnvelope<TrigPoly>&, double);
template SingularPoint classify<Polynomial>(const BasicEnvelope<Polynomial>&, double);
template std::vector<SingularPoint> find_singular_points<TrigPoly>(const BasicEnvelope<TrigPoly>&, int);
template std::vector<SingularPoint> find_singular_points<Polynomial>(const BasicEnvelope<Polynomial>&, int);

std::vector<SingularPoint> find_singular_points(const LineFamily& fam, const SingularityOptions& opt) {
    return find_singular_points(make_envelope(fam), singular_search_samples(fam, opt.samples));
}

std::vector<SingularPoint> find_singular_points(const PolyLineFamily& fam, const SingularityOptions& opt) {
    return find_singular_points(make_envelope(fam), opt.samples > 0 ? opt.samples : 8192);
}

SingularPoint classify(const LineFamily& fam, double T) { return classify(make_envelope(fam), T); }

int predicted_one_circle_crossings(RationalSlope slope) {
    const auto a = std::abs(slope.a());
    const auto b = slope.b();
    const auto diff = std::abs(slope.a() - b);
    return static_cast<int>(a < b ? (a - 1) * diff : (b - 1) * diff);
}

AnalyticPrediction predict(const LineFamily& fam) {
    if (fam.kind != FamilyKind::OneCircle && fam.kind != FamilyKind::TwoCircle)
        throw Error(ErrorCode::InvalidKind,
                    std::string("no counting results for ") + std::string(to_string(fam.kind)) + " families");
    const auto a = fam.slope.a();
    const auto b = fam.slope.b();
    const int diff = static_cast<int>(std::abs(a - b));
    const double m = fam.slope.value();
    const bool small_m = std::abs(a) < b;

    AnalyticPrediction pred;
    const double den = std::abs(2.0 * m - 1.0);
    pred.extreme_r = (a == 1 && b == 2) ? std::numeric_limits<double>::infinity() : std::abs(m - 2.0) / den;

    if (fam.kind == FamilyKind::OneCircle) {
        pred.general_cusp_count = diff;
        pred.tangency_count = diff;
        pred.crossing_count = predicted_one_circle_crossings(fam.slope);
        return pred;
    }

    const double r = fam.params.r;
    pred.in_regime = r > 1.0;
    pred.general_cusp_count = 2 * diff;
    pred.tangency_count = r == 1.0 ? diff : 0;
    if (small_m) pred.infinity_window = std::make_pair(1.0, static_cast<double>(b) / std::abs(static_cast<double>(a)));
    pred.infinity_cut_count = predicted_cut_count(fam.slope, r);
    if (a == 1 && b == 2) {
        pred.extra_cusp_count = r > 1.0 ? 2 : 0;
    } else if (small_m && r > 1.0) {
        const bool at_extreme = std::abs(r - pred.extreme_r) <= 1e-12 * pred.extreme_r;
        if (!at_extreme && r < pred.extreme_r) pred.extra_cusp_count = 2 * diff;
    }
    return pred;
}

TaylorSeries taylor_at(const LineFamily& fam, double T0, int order) {
    if (order < 0 || order > 6) throw Error(ErrorCode::InvalidParameter, "Taylor order must lie in [0, 6]");
    const Envelope env = make_envelope(fam);
    const auto step = [](int k) { return 0.1 * (1.0 + 0.5 * k); };
    const double reach = 0.5 * order * step(order);
    if (env.distance_to_cut(T0) <= reach || env.sample(T0).at_infinity())
        throw Error(ErrorCode::NearInfinity, "an infinity cut lies within the difference stencil");

    auto X = [&](double s) { return env.sample(s).point.value_or(Vec2{}).x; };
    auto Y = [&](double s) { return env.sample(s).point.value_or(Vec2{}).y; };
    const double b = static_cast<double>(fam.slope.b());

    TaylorSeries ts;
    ts.T0 = T0;
    ts.t0 = b * T0;
    for (int k = 0; k <= order; ++k) {
        const double f = factorial(k);
        const double cx = richardson_derivative(X, T0, k, step(k), 6) / f;
        const double cy = richardson_derivative(Y, T0, k, step(k), 6) / f;
        ts.x_T.push_back(cx);
        ts.y_T.push_back(cy);
        ts.x.push_back(cx / std::pow(b, k));
        ts.y.push_back(cy / std::pow(b, k));
    }
    return ts;
}

namespace {

std::size_t singular_count(RationalSlope slope, double r, double d) {
    return find_singular_points(offset_circle(slope, r, 0.0, d)).size();
}

// N_g and its first two T-derivatives for the offset family at (r, d).
std::array<double, 3> numerator_jet(RationalSlope slope, double r, double d, double T) {
    const Envelope env = make_envelope(offset_circle(slope, r, 0.0, d));
    const TrigPoly n = env.singular_numerator();
    const double scale = magnitude_bound(n);
    return {n(T) / scale, n.derivative_at(1, T) / scale, n.derivative_at(2, T) / scale};
}

}  // namespace

std::optional<SwallowtailWitness> locate_swallowtail(RationalSlope slope, double d, double r_lo, double r_hi,
                                                     int steps) {
    std::size_t prev = singular_count(slope, r_lo, d);
    double lo = r_lo;
    double hi = r_lo;
    bool found = false;
    for (int i = 1; i <= steps; ++i) {
        const double r = r_lo + (r_hi - r_lo) * i / steps;
        const std::size_t cur = singular_count(slope, r, d);
        if (cur + 2 == prev || prev + 2 == cur) {
            lo = r - (r_hi - r_lo) / steps;
            hi = r;
            found = true;
            break;
        }
        prev = cur;
    }
    if (!found) return std::nullopt;

    const std::size_t bracket_lo = singular_count(slope, lo, d);
    const std::size_t bracket_hi = singular_count(slope, hi, d);
    const std::size_t count_lo = bracket_lo;
    for (int it = 0; it < 40 && hi - lo > 1e-9; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (singular_count(slope, mid, d) == count_lo) lo = mid;
        else hi = mid;
    }
    const std::size_t count_hi = bracket_hi;

    // Start from the closest pair of singular points on the side that has them.
    const double r_more = count_lo > count_hi ? lo : hi;
    const auto pts = find_singular_points(offset_circle(slope, r_more, 0.0, d));
    if (pts.size() < 2) return std::nullopt;
    const Domain dom = Domain::period();
    double best = std::numeric_limits<double>::infinity();
    double T = pts.front().T;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        const auto& q = pts[(i + 1) % pts.size()];
        const double gap = dom.wrap(q.T - p.T);
        if (gap < best) {
            best = gap;
            T = dom.wrap(p.T + 0.5 * gap);
        }
    }

    // Newton on (N_g, N_g') = 0 in (T, r); T-derivatives exact, r-derivatives central.
    double r = 0.5 * (lo + hi);
    for (int it = 0; it < 50; ++it) {
        const auto j = numerator_jet(slope, r, d, T);
        const double hr = 1e-6;
        const auto jp = numerator_jet(slope, r + hr, d, T);
        const auto jm = numerator_jet(slope, r - hr, d, T);
        const double g_r = (jp[0] - jm[0]) / (2 * hr);
        const double gp_r = (jp[1] - jm[1]) / (2 * hr);
        const double det = j[1] * gp_r - g_r * j[2];
        if (det == 0.0) break;
        const double dT = (j[0] * gp_r - g_r * j[1]) / det;
        const double dr = (j[1] * j[1] - j[0] * j[2]) / det;
        T -= dT;
        r -= dr;
        if (std::abs(dT) < 1e-15 && std::abs(dr) < 1e-15) break;
    }
    T = dom.wrap(T);

    SwallowtailWitness w;
    w.r = r;
    w.d = d;
    w.point = classify(make_envelope(offset_circle(slope, r, 0.0, d)), T);
    w.cusps_below = static_cast<int>(bracket_lo);
    w.cusps_above = static_cast<int>(bracket_hi);
    return w;
}

}  // namespace envlab
