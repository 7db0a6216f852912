#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "envlab/census.hpp"
#include "envlab/crossings.hpp"
#include "envlab/envelope.hpp"
#include "envlab/error.hpp"
#include "envlab/singularity.hpp"
#include "oracles.hpp"

using namespace envlab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::function<bool(std::ostringstream&)> run;
};

int class_count(const std::vector<SingularPoint>& pts, SingularClass cls) {
    int n = 0;
    for (const auto& p : pts) n += p.cls == cls;
    return n;
}

bool one_circle_census(std::ostringstream& note) {
    int checked = 0;
    for (int b = 1; b <= 6; ++b)
        for (int a = -6; a <= 6; ++a) {
            if (std::gcd(a, b) != 1 || a == 0 || a == b || a == -b) continue;
            const RationalSlope s(a, b);
            const auto rep = census(one_circle(s));
            const int gap = std::abs(a - b);
            const int want = std::abs(a) < b ? (std::abs(a) - 1) * gap : (b - 1) * gap;
            ++checked;
            if (rep.cusps.numeric != gap || rep.tangencies.numeric != gap || rep.crossings.numeric != want ||
                !rep.consistent()) {
                note << "slope " << s.str() << ": cusps " << rep.cusps.numeric << " tangencies "
                     << rep.tangencies.numeric << " crossings " << rep.crossings.numeric << " want " << want;
                return false;
            }
        }
    const auto three = census(one_circle({3, 1}));
    const auto five4 = census(one_circle({5, 4}));
    if (three.cusps.numeric != 2 || three.crossings.numeric != 0 || five4.cusps.numeric != 1 ||
        five4.crossings.numeric != 3) {
        note << "anchor mismatch";
        return false;
    }
    note << checked << " slopes";
    return true;
}

bool two_circle_counts(std::ostringstream& note) {
    const auto p1 = find_singular_points(two_circle({-4, 3}, 3.5));
    const auto p2 = find_singular_points(two_circle({3, 4}, 2.0));
    const auto p3 = find_singular_points(two_circle({3, 4}, 2.5));
    note << p1.size() << " (" << class_count(p1, SingularClass::SimpleCusp) << " simple), " << p2.size() << ", "
         << p3.size();
    return p1.size() == 14 && class_count(p1, SingularClass::SimpleCusp) == 14 && p2.size() == 4 && p3.size() == 2;
}

bool infinity_census(std::ostringstream& note) {
    bool ok = true;
    for (auto [r, want] : {std::pair{1.2, 10}, std::pair{1.5, 5}, std::pair{1.7, 0}}) {
        const auto rep = infinity_cuts(two_circle({-2, 3}, r));
        double worst = 0.0;
        for (const auto& c : rep.cuts) worst = std::max(worst, std::abs(c.denom));
        note << "r=" << r << ": " << rep.cuts.size() << " cuts (max |D| " << worst << ")  ";
        ok = ok && static_cast<int>(rep.cuts.size()) == want && rep.analytic_count == want && worst < 1e-10;
    }
    return ok;
}

bool taylor_data(std::ostringstream& note) {
    auto rel = [](double got, double want) { return std::abs(got - want) / std::abs(want); };
    const auto fam = two_circle({3, 4}, 2.5);
    const auto left = taylor_at(fam, 0.0, 5);
    const auto right = taylor_at(fam, kPi, 3);
    const double e1 = std::max({rel(left.x[0], -5.0 / 7.0), rel(left.x[4], -25.0 / 1792.0),
                                rel(left.y[5], -5.0 / 768.0)});
    const double e2 = std::max({rel(right.x[0], -5.0 / 23.0), rel(right.x[2], -75.0 / 1058.0),
                                rel(right.y[3], -25.0 / 644.0)});
    const double s1 = std::max(1.0, std::abs(left.x[0])), s2 = std::max(1.0, std::abs(right.x[0]));
    double low1 = std::abs(left.y[4]), low2 = std::max({std::abs(right.x[1]), std::abs(right.y[1]),
                                                        std::abs(right.y[2])});
    for (int k = 1; k <= 3; ++k) low1 = std::max({low1, std::abs(left.x[k]), std::abs(left.y[k])});
    note << "rel err " << e1 << " / " << e2 << ", low-order " << low1 << " / " << low2;
    return e1 < 1e-6 && e2 < 1e-6 && low1 < 1e-8 * s1 && low2 < 1e-8 * s2;
}

bool classification_chain(std::ostringstream& note) {
    const auto fam = two_circle({3, 4}, 2.5);
    const Envelope env = make_envelope(fam);
    const SingularPoint left = classify(fam, 0.0);
    const SingularPoint right = classify(fam, kPi);
    auto scale = [&](const SingularPoint& p, int k) { return env.line_scale(k, *p.location); };
    bool ok = left.cls == SingularClass::Butterfly && right.cls == SingularClass::SimpleCusp;
    for (int k = 0; k < 3; ++k) ok = ok && std::abs(left.derivatives[k]) < 1e-8 * scale(left, k + 2);
    ok = ok && std::abs(left.derivatives[3]) > 1e-3 * scale(left, 5);
    ok = ok && std::abs(right.derivatives[1]) > 1e-3 * scale(right, 3);
    note << "T=0 " << to_string(left.cls) << " |F_ttttt|=" << std::abs(left.derivatives[3]) << ", T=pi "
         << to_string(right.cls) << " |F_ttt|=" << std::abs(right.derivatives[1]);
    return ok;
}

bool no_swallowtail(std::ostringstream& note) {
    int scanned = 0;
    for (auto s : {RationalSlope(3, 4), RationalSlope(-2, 3), RationalSlope(2, 5)})
        for (int i = 0; i < 500; ++i) {
            const double r = 1.05 + (4.0 - 1.05) * i / 499.0;
            ++scanned;
            if (class_count(find_singular_points(two_circle(s, r)), SingularClass::Swallowtail) > 0) {
                note << "swallowtail at " << s.str() << " r=" << r;
                return false;
            }
        }
    // Across d at fixed r the offset family gains or loses a pair of cusps.
    bool transition = false;
    for (double r : {2.6, 2.8, 2.9}) {
        const auto n0 = find_singular_points(offset_circle({3, 4}, r, 0.0, 0.0)).size();
        for (double d : {0.5, -0.5}) {
            const auto n1 = find_singular_points(offset_circle({3, 4}, r, 0.0, d)).size();
            if (n0 != n1 && (n0 > n1 ? n0 - n1 : n1 - n0) == 2) {
                if (!transition) note << "r=" << r << ": " << n0 << " cusps at d=0, " << n1 << " at d=" << d << "; ";
                transition = true;
            }
        }
    }
    const auto w = locate_swallowtail({3, 4}, 0.5, 2.0, 3.0);
    const bool witnessed = w && w->point.cls == SingularClass::Swallowtail &&
                           std::abs(w->cusps_below - w->cusps_above) == 2;
    if (w) note << "swallowtail at r=" << w->r << " d=0.5; ";
    note << scanned << " two-circle radii scanned";
    return transition && witnessed;
}

bool caustic_equivalence(std::ostringstream& note) {
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> ut(0.0, 2 * kPi), ur(0.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double t = ut(rng);
        double r = ur(rng);
        if (r == 0.0) r = 3.0;
        const auto cmp = compare_caustic(r, t);
        // Independent check from the law of reflection.
        const oracle::Line ray = oracle::reflected_ray(r, t);
        const oracle::Line chord = oracle::Chord{2, 1, r, 0, 0}.line(t);
        const double px = r * std::cos(2 * t), py = r * std::sin(2 * t);
        const double ray_res = std::abs(ray.A * px + ray.B * py + ray.C) / oracle::line_scale(ray, px, py);
        const double chord_res = std::abs(chord.A * px + chord.B * py + chord.C) / oracle::line_scale(chord, px, py);
        const double cx = ray.B * chord.C - ray.C * chord.B, cy = ray.C * chord.A - ray.A * chord.C,
                     cz = ray.A * chord.B - ray.B * chord.A;
        const double n1 = std::sqrt(ray.A * ray.A + ray.B * ray.B + ray.C * ray.C);
        const double n2 = std::sqrt(chord.A * chord.A + chord.B * chord.B + chord.C * chord.C);
        const double prop = (n1 == 0.0 || n2 == 0.0) ? 0.0 : std::sqrt(cx * cx + cy * cy + cz * cz) / (n1 * n2);
        worst = std::max({worst, cmp.proportionality, cmp.ray_residual, cmp.chord_residual, ray_res, chord_res,
                          prop});
    }
    note << "largest residual " << worst;
    return worst < 1e-12;
}

int cubic_real_roots(double p, double q) { return (-4 * p * p * p - 27 * q * q) > 0 ? 3 : 1; }

bool standard_models(std::ostringstream& note) {
    const auto below = find_singular_points(swallowtail_family(-1.0));
    const auto above = find_singular_points(swallowtail_family(1.0));
    const int xb = count_self_crossings(swallowtail_slice(-1.0)).count();
    const int xa = count_self_crossings(swallowtail_slice(1.0)).count();
    const auto origin = find_singular_points(butterfly_family(0.0, 0.0));
    bool ok = below.size() == 2 && class_count(below, SingularClass::SimpleCusp) == 2 && xb == 1 &&
              above.empty() && xa == 0 && origin.size() == 1 && origin[0].cls == SingularClass::Butterfly;
    note << "swallowtail z=-1: " << below.size() << "+" << xb << ", z=1: " << above.size() << "+" << xa
         << "; butterfly origin: " << origin.size() << "; tour";
    auto tour = [](double a) {
        const double y = 0.5 * std::cos(a), z = 0.5 * std::sin(a);
        return std::pair{static_cast<int>(find_singular_points(butterfly_family(y, z)).size()),
                         cubic_real_roots(0.3 * z, 0.1 * y)};
    };
    for (auto [lo, hi] : {std::pair{4.3, 4.6}, std::pair{5.1, 5.2}}) {
        const auto [n_lo, o_lo] = tour(lo);
        const auto [n_hi, o_hi] = tour(hi);
        note << " a=" << lo << ":" << n_lo << " a=" << hi << ":" << n_hi;
        ok = ok && n_lo == o_lo && n_hi == o_hi && std::abs(n_lo - n_hi) == 2;
    }
    ok = ok && tour(4.3).first == 1 && tour(5.1).first == 3;
    return ok;
}

bool residual_suite(std::ostringstream& note) {
    std::mt19937_64 rng(7);
    const std::vector<RationalSlope> slopes{{3, 4}, {-2, 3}, {2, 5}, {5, 4}, {-4, 3}, {3, 1}, {1, 2}, {-5, 6}};
    std::uniform_int_distribution<std::size_t> us(0, slopes.size() - 1);
    std::uniform_real_distribution<double> ur(1.05, 4.0), uc(-0.6, 0.6), ut(0.0, 2 * kPi);
    double worst_f = 0.0, worst_ft = 0.0, worst_numerator = 0.0;
    int samples = 0, roots = 0;
    for (int f = 0; f < 20; ++f) {
        const RationalSlope s = slopes[us(rng)];
        const LineFamily fam = f % 4 == 3 ? offset_circle(s, ur(rng), uc(rng), uc(rng))
                               : f % 4 == 2 ? one_circle(s)
                                            : two_circle(s, ur(rng));
        const Envelope env = make_envelope(fam);
        for (int i = 0; i < 500; ++i) {
            const double T = ut(rng);
            if (env.distance_to_cut(T) < 1e-6) continue;
            const auto e = env.sample(T);
            if (!e.point) continue;
            ++samples;
            worst_f = std::max(worst_f, std::abs(env.line_derivative(0, T, *e.point)) / env.line_scale(0, *e.point));
            worst_ft =
                std::max(worst_ft, std::abs(env.line_derivative(1, T, *e.point)) / env.line_scale(1, *e.point));
        }
        const TrigPoly ng = env.singular_numerator();
        const double ng_scale = std::max(1.0, sampled_max(ng, fam.domain(), 8192));
        for (const auto& p : find_singular_points(fam)) {
            ++roots;
            worst_numerator = std::max(worst_numerator, std::abs(ng(p.T)) / ng_scale);
        }
    }
    note << samples << " samples, F " << worst_f << ", F_T " << worst_ft << "; " << roots << " roots, |N|/sup "
         << worst_numerator;
    return samples >= 9000 && worst_f < 1e-9 && worst_ft < 1e-9 && worst_numerator < 1e-8;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "one-circle census", 10, one_circle_census},
        {2, "two-circle cusp counts", 10, two_circle_counts},
        {3, "infinity census", 10, infinity_census},
        {4, "butterfly Taylor data", 10, taylor_data},
        {5, "classification chain", 10, classification_chain},
        {6, "no swallowtail on concentric circles", 60, no_swallowtail},
        {7, "caustic equivalence", 10, caustic_equivalence},
        {8, "standard models", 10, standard_models},
        {9, "residual suite", 10, residual_suite},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        std::ostringstream note;
        const auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        try {
            ok = c.run(note);
        } catch (const std::exception& e) {
            note << "threw: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) {
            note << " (over " << c.budget_s << " s budget)";
            ok = false;
        }
        failed += !ok;
        std::printf("%s  %d  %-38s %6.2fs  %s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), secs,
                    note.str().c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
