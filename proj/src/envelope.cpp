#include "envlab/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "envlab/error.hpp"

namespace envlab {

namespace {

constexpr double kOrderTol = 1e-7;
constexpr double kDenTol = 1e-9;
constexpr int kMaxOrder = 6;

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Signed offset from R to T, taken the short way round on periodic domains.
double offset(const Domain& dom, double R, double T) {
    double h = T - R;
    if (dom.periodic) {
        const double len = dom.length();
        h = std::remainder(h, len);
    }
    return h;
}

template <class P>
std::vector<P> derivative_chain(const P& p, int n) {
    std::vector<P> chain{p};
    for (int i = 1; i <= n; ++i) chain.push_back(derive(chain.back()));
    return chain;
}

}  // namespace

template <class P>
BasicEnvelope<P>::BasicEnvelope(P A, P B, P C, Domain dom, int samples) : dom_(dom) {
    const int grid = samples > 0 ? samples : 4096;
    A_[0] = std::move(A);
    B_[0] = std::move(B);
    C_[0] = std::move(C);
    for (int k = 1; k < kLineOrders; ++k) {
        A_[k] = derive(A_[k - 1]);
        B_[k] = derive(B_[k - 1]);
        C_[k] = derive(C_[k - 1]);
    }
    for (int k = 0; k < kLineOrders; ++k) {
        a_sup_[k] = sampled_max(A_[k], dom_, grid);
        b_sup_[k] = sampled_max(B_[k], dom_, grid);
        c_sup_[k] = sampled_max(C_[k], dom_, grid);
    }

    D_ = derivative_chain(A_[0] * B_[1] - A_[1] * B_[0], kChain);
    NX_ = derivative_chain(B_[0] * C_[1] - B_[1] * C_[0], kChain);
    NY_ = derivative_chain(A_[1] * C_[0] - A_[0] * C_[1], kChain);
    for (int j = 0; j <= kMaxOrder; ++j) {
        d_sup_.push_back(sampled_max(D_[j], dom_, grid));
        nx_sup_.push_back(sampled_max(NX_[j], dom_, grid));
        ny_sup_.push_back(sampled_max(NY_[j], dom_, grid));
    }
    d_scale_ = d_sup_[0];
    if (degenerate()) return;

    RootOptions opt;
    opt.samples = grid;
    for (const Root& root : find_roots(D_[0], dom_, opt)) {
        const double T = root.x;
        const int q = std::max(1, vanishing_order(D_, d_sup_, T));
        const int ox = vanishing_order(NX_, nx_sup_, T);
        const int oy = vanishing_order(NY_, ny_sup_, T);
        if (q <= kMaxOrder && ox >= q && oy >= q) {
            Series s = build_series(T, q);
            removable_.push_back({T, q, {s.x[0], s.y[0]}});
            series_.push_back(std::move(s));
            continue;
        }
        InfinityCut cut;
        cut.T_star = T;
        cut.denom = D_[0](T);
        cut.order = q;
        const Vec2 dir{-B_[0](T), A_[0](T)};
        const double len = norm(dir);
        if (len > kOrderTol * std::max(a_sup_[0], b_sup_[0])) cut.direction = dir * (1.0 / len);
        cuts_.push_back(cut);
    }
}

template <class P>
int BasicEnvelope<P>::vanishing_order(const std::vector<P>& chain, const std::vector<double>& scales,
                                      double T) const {
    for (int j = 0; j <= kMaxOrder; ++j) {
        if (std::abs(chain[j](T)) > kOrderTol * scales[j]) return j;
    }
    return kMaxOrder + 1;
}

template <class P>
typename BasicEnvelope<P>::Series BasicEnvelope<P>::build_series(double T, int q) const {
    std::vector<double> d(kChain + 1), nx(kChain + 1), ny(kChain + 1);
    for (int j = 0; j <= kChain; ++j) {
        const double f = factorial(j);
        d[j] = D_[j](T) / f;
        nx[j] = NX_[j](T) / f;
        ny[j] = NY_[j](T) / f;
    }
    const int terms = kChain - q + 1;
    Series s;
    s.T = T;
    s.x.assign(terms, 0.0);
    s.y.assign(terms, 0.0);
    for (int i = 0; i < terms; ++i) {
        double ax = nx[q + i], ay = ny[q + i];
        for (int l = 1; l <= i; ++l) {
            ax -= d[q + l] * s.x[i - l];
            ay -= d[q + l] * s.y[i - l];
        }
        s.x[i] = ax / d[q];
        s.y[i] = ay / d[q];
    }
    return s;
}

template <class P>
const typename BasicEnvelope<P>::Series* BasicEnvelope<P>::nearest_series(double T) const {
    const Series* best = nullptr;
    double best_d = kSeriesWindow;
    for (const auto& s : series_) {
        const double d = std::abs(offset(dom_, s.T, T));
        if (d < best_d) {
            best_d = d;
            best = &s;
        }
    }
    return best;
}

template <class P>
EnvelopeSample BasicEnvelope<P>::sample(double T) const {
    if (degenerate()) throw Error(ErrorCode::Degenerate, "line family has identically vanishing denominator");
    EnvelopeSample out;
    out.T = T;
    out.denom = D_[0](T);
    if (const Series* s = nearest_series(T)) {
        const double h = offset(dom_, s->T, T);
        Vec2 p{};
        for (std::size_t i = s->x.size(); i-- > 0;) {
            p.x = p.x * h + s->x[i];
            p.y = p.y * h + s->y[i];
        }
        out.point = p;
        out.removable = std::abs(h) < 1e-9;
        return out;
    }
    if (std::abs(out.denom) >= kDenTol * d_scale_) {
        out.point = Vec2{NX_[0](T) / out.denom, NY_[0](T) / out.denom};
        return out;
    }
    const int q = vanishing_order(D_, d_sup_, T);
    if (q > kMaxOrder) throw Error(ErrorCode::Degenerate, "denominator vanishes to unresolved order");
    const int ox = vanishing_order(NX_, nx_sup_, T);
    const int oy = vanishing_order(NY_, ny_sup_, T);
    if (ox >= q && oy >= q) {
        if (q == 0) {
            out.point = Vec2{NX_[0](T) / out.denom, NY_[0](T) / out.denom};
            return out;
        }
        const double dq = D_[q](T);
        out.point = Vec2{NX_[q](T) / dq, NY_[q](T) / dq};
        out.removable = true;
    }
    return out;
}

template <class P>
std::optional<Vec2> BasicEnvelope<P>::velocity(double T) const {
    if (const Series* s = nearest_series(T)) {
        const double h = offset(dom_, s->T, T);
        Vec2 v{};
        for (std::size_t i = s->x.size(); i-- > 1;) {
            v.x = v.x * h + static_cast<double>(i) * s->x[i];
            v.y = v.y * h + static_cast<double>(i) * s->y[i];
        }
        return v;
    }
    const double d = D_[0](T);
    if (std::abs(d) < kDenTol * d_scale_) return std::nullopt;
    const double dd = D_[1](T);
    return Vec2{(NX_[1](T) * d - NX_[0](T) * dd) / (d * d), (NY_[1](T) * d - NY_[0](T) * dd) / (d * d)};
}

template <class P>
double BasicEnvelope<P>::line_derivative(int k, double T, Vec2 p) const {
    if (k < kLineOrders) return A_[k](T) * p.x + B_[k](T) * p.y + C_[k](T);
    return A_[0].derivative_at(k, T) * p.x + B_[0].derivative_at(k, T) * p.y + C_[0].derivative_at(k, T);
}

template <class P>
double BasicEnvelope<P>::line_scale(int k, Vec2 p) const {
    const int j = std::min(k, kLineOrders - 1);
    return (a_sup_[j] + b_sup_[j]) * std::max(1.0, norm(p)) + c_sup_[j];
}

template <class P>
const P& BasicEnvelope<P>::coefficient(int which, int k) const {
    const auto& arr = which == 0 ? A_ : (which == 1 ? B_ : C_);
    return arr[static_cast<std::size_t>(k)];
}

template <class P>
P BasicEnvelope<P>::singular_numerator() const {
    return A_[2] * NX_[0] + B_[2] * NY_[0] + C_[2] * D_[0];
}

template <class P>
double BasicEnvelope<P>::distance_to_cut(double T) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& c : cuts_) best = std::min(best, dom_.distance(c.T_star, T));
    return best;
}

template class BasicEnvelope<TrigPoly>;
template class BasicEnvelope<Polynomial>;

int default_root_samples(const LineFamily& fam) {
    const int freq = std::max({fam.A.max_frequency(), fam.B.max_frequency(), fam.C.max_frequency(), 1});
    return std::max(4096, 512 * freq);
}

Envelope make_envelope(const LineFamily& fam) {
    return Envelope(fam.A, fam.B, fam.C, fam.domain(), default_root_samples(fam));
}

PolyEnvelope make_envelope(const PolyLineFamily& fam) {
    return PolyEnvelope(fam.A, fam.B, fam.C, fam.domain());
}

EnvelopeSample envelope_point(const LineFamily& fam, double T) { return make_envelope(fam).sample(T); }

Vec2 closed_form_envelope(const LineFamily& fam, double T) {
    const double a = static_cast<double>(fam.slope.a());
    const double b = static_cast<double>(fam.slope.b());
    const double m = a / b;
    switch (fam.kind) {
        case FamilyKind::OneCircle:
            return {(m * std::cos(b * T) + std::cos(a * T)) / (m + 1.0),
                    (m * std::sin(b * T) + std::sin(a * T)) / (m + 1.0)};
        case FamilyKind::TwoCircle: {
            const double r = fam.params.r;
            const double cu = std::cos((a - b) * T);
            const double den = r * (m + 1.0) * cu - (m * r * r + 1.0);
            return {r * (std::cos(a * T) * (r * cu - 1.0) + m * std::cos(b * T) * (cu - r)) / den,
                    r * (std::sin(a * T) * (r * cu - 1.0) + m * std::sin(b * T) * (cu - r)) / den};
        }
        default:
            throw Error(ErrorCode::InvalidKind,
                        std::string("no closed form for ") + std::string(to_string(fam.kind)) + " families");
    }
}

int predicted_cut_count(RationalSlope slope, double r) {
    const double abs_a = std::abs(static_cast<double>(slope.a()));
    const double b = static_cast<double>(slope.b());
    if (!(r > 1.0) || abs_a >= b) return 0;
    const int base = static_cast<int>(std::abs(slope.b() - slope.a()));
    const double boundary = b / abs_a;
    if (std::abs(r - boundary) <= 1e-12 * boundary) return base;
    return r < boundary ? 2 * base : 0;
}

CutReport infinity_cuts(const LineFamily& fam) {
    CutReport report;
    report.cuts = make_envelope(fam).cuts();
    if (fam.kind == FamilyKind::TwoCircle) report.analytic_count = predicted_cut_count(fam.slope, fam.params.r);
    return report;
}

}  // namespace envlab
