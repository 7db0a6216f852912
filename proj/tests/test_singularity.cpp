#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "envlab/envelope.hpp"
#include "envlab/error.hpp"
#include "envlab/singularity.hpp"
#include "oracles.hpp"

using namespace envlab;

namespace {

constexpr double kPi = std::numbers::pi;

std::array<int, 4> classes(const std::vector<SingularPoint>& pts) {
    std::array<int, 4> n{};
    for (const auto& p : pts) ++n[static_cast<std::size_t>(p.cls)];
    return n;
}

}  // namespace

TEST(Singular, OneCircleThreeHasTwoCuspsAtHalfTurns) {
    const auto pts = find_singular_points(one_circle({3, 1}));
    ASSERT_EQ(pts.size(), 2u);
    // 2t in {pi, 3pi} with t = T.
    EXPECT_NEAR(pts[0].T, kPi / 2, 1e-9);
    EXPECT_NEAR(pts[1].T, 3 * kPi / 2, 1e-9);
    for (const auto& p : pts) {
        EXPECT_EQ(p.cls, SingularClass::SimpleCusp);
        EXPECT_GT(std::abs(p.curvature_check), 1e-6);
    }
}

TEST(Singular, OneCircleCuspCountIsSlopeGap) {
    for (auto s : {RationalSlope(5, 4), RationalSlope(2, 5), RationalSlope(-3, 2), RationalSlope(6, 1)}) {
        const auto pts = find_singular_points(one_circle(s));
        EXPECT_EQ(static_cast<long>(pts.size()), std::abs(s.a() - s.b())) << s.str();
        EXPECT_EQ(classes(pts)[0], static_cast<int>(pts.size()));
    }
}

TEST(Singular, TwoCircleCounts) {
    EXPECT_EQ(classes(find_singular_points(two_circle({-4, 3}, 3.5)))[0], 14);
    EXPECT_EQ(find_singular_points(two_circle({3, 4}, 2.0)).size(), 4u);
    EXPECT_EQ(find_singular_points(two_circle({-2, 3}, 1.1)).size(), 20u);
}

TEST(Singular, ButterflyAndCuspAtFiveHalves) {
    const auto pts = find_singular_points(two_circle({3, 4}, 2.5));
    ASSERT_EQ(pts.size(), 2u);
    EXPECT_EQ(pts[0].cls, SingularClass::Butterfly);
    EXPECT_NEAR(pts[0].T, 0.0, 1e-9);
    EXPECT_EQ(pts[0].multiplicity, 3);
    EXPECT_EQ(pts[1].cls, SingularClass::SimpleCusp);
    EXPECT_NEAR(pts[1].T, kPi, 1e-9);
    EXPECT_NEAR(4 * pts[1].T, 4 * kPi, 1e-8);
}

TEST(Singular, DerivativeChainAtButterfly) {
    const SingularPoint p = classify(two_circle({3, 4}, 2.5), 0.0);
    EXPECT_EQ(p.cls, SingularClass::Butterfly);
    for (int k = 0; k < 3; ++k) EXPECT_LE(std::abs(p.derivatives[k]), p.thresholds[k]);
    EXPECT_GT(std::abs(p.derivatives[3]), p.thresholds[3]);
    ASSERT_TRUE(p.location);
    EXPECT_NEAR(p.location->x, -5.0 / 7.0, 1e-14);
}

TEST(Singular, DerivativeChainAtRightCusp) {
    const SingularPoint p = classify(two_circle({3, 4}, 2.5), kPi);
    EXPECT_EQ(p.cls, SingularClass::SimpleCusp);
    EXPECT_GT(std::abs(p.derivatives[1]), p.thresholds[1]);
}

TEST(Singular, ClassifyRequiresVanishingFtt) {
    try {
        classify(two_circle({3, 4}, 2.5), 1.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::PreconditionFailed);
    }
}

// The singular numerator equals D times F_tt along the envelope.
TEST(Singular, NumeratorIsDenominatorTimesFtt) {
    for (auto fam : {two_circle({3, 4}, 2.2), two_circle({-2, 3}, 1.3), offset_circle({5, 3}, 1.7, 0.2, -0.4)}) {
        const Envelope env = make_envelope(fam);
        const TrigPoly Ng = env.singular_numerator();
        for (int i = 0; i < 40; ++i) {
            const double T = 2 * kPi * (i + 0.3) / 40;
            const auto s = env.sample(T);
            if (!s.point || env.distance_to_cut(T) < 1e-3) continue;
            const double ftt = env.line_derivative(2, T, *s.point);
            EXPECT_NEAR(Ng(T), env.denominator(T) * ftt, 1e-9 * (1 + std::abs(Ng(T))) * (1 + norm(*s.point)));
        }
    }
}

// At every detected root F_tt vanishes and the envelope velocity stalls.
TEST(Singular, RootsAreStationaryPoints) {
    for (auto fam : {two_circle({3, 4}, 2.0), one_circle({5, 4}), two_circle({-4, 3}, 3.5)}) {
        const Envelope env = make_envelope(fam);
        for (const auto& p : find_singular_points(fam)) {
            const auto v = env.velocity(p.T);
            ASSERT_TRUE(v);
            EXPECT_LT(norm(*v), 1e-6 * (1 + norm(*p.location)));
            EXPECT_LE(std::abs(p.derivatives[0]), 1e-6 * env.line_scale(2, *p.location));
        }
    }
}

// Property: the two-circle family has no swallowtails.
TEST(Singular, NoSwallowtailOnTwoCircle) {
    for (auto s : {RationalSlope(3, 4), RationalSlope(-2, 3), RationalSlope(2, 5)})
        for (int i = 0; i <= 40; ++i) {
            const double r = 1.05 + (4.0 - 1.05) * i / 40;
            for (const auto& p : find_singular_points(two_circle(s, r)))
                EXPECT_NE(p.cls, SingularClass::Swallowtail) << s.str() << " r=" << r;
        }
}

// At the extreme radius every general cusp with cos((m-1)t) = +-1 on the
// relevant side becomes a butterfly: |a-b| butterflies next to |a-b| cusps.
TEST(Singular, ButterflyLocus) {
    for (auto s : {RationalSlope(3, 4), RationalSlope(2, 3), RationalSlope(3, 5), RationalSlope(1, 3),
                   RationalSlope(-2, 3), RationalSlope(-1, 2)}) {
        const double m = s.value();
        const double r = std::abs((2 - m) / (2 * m - 1));
        const auto n = classes(find_singular_points(two_circle(s, r)));
        const int gap = static_cast<int>(std::abs(s.a() - s.b()));
        EXPECT_EQ(n[2], gap) << s.str();
        EXPECT_EQ(n[0], gap) << s.str();
        EXPECT_EQ(n[1], 0) << s.str();
    }
}

TEST(Predict, OneCircle) {
    const auto p = predict(one_circle({5, 4}));
    EXPECT_EQ(p.general_cusp_count, 1);
    EXPECT_EQ(p.tangency_count, 1);
    ASSERT_TRUE(p.crossing_count);
    EXPECT_EQ(*p.crossing_count, 3);
    EXPECT_EQ(predicted_one_circle_crossings({2, 5}), 3);
    EXPECT_EQ(predicted_one_circle_crossings({3, 1}), 0);
}

TEST(Predict, TwoCircle) {
    const auto p = predict(two_circle({3, 4}, 2.0));
    EXPECT_EQ(p.general_cusp_count, 2);
    EXPECT_EQ(p.extra_cusp_count, 2);
    EXPECT_EQ(p.total_cusps(), 4);
    EXPECT_DOUBLE_EQ(p.extreme_r, 2.5);
    EXPECT_EQ(predict(two_circle({3, 4}, 2.5)).extra_cusp_count, 0);

    const auto q = predict(two_circle({-2, 3}, 1.1));
    EXPECT_NEAR(q.extreme_r, 8.0 / 7.0, 1e-15);
    EXPECT_EQ(q.extra_cusp_count, 10);
    ASSERT_TRUE(q.infinity_window);
    EXPECT_DOUBLE_EQ(q.infinity_window->second, 1.5);
    EXPECT_EQ(predict(two_circle({-2, 3}, 1.2)).extra_cusp_count, 0);
}

TEST(Predict, HalfSlopeHasExtraCuspsForAllRadii) {
    for (double r : {1.5, 3.0, 10.0}) {
        const auto fam = two_circle({1, 2}, r);
        const auto p = predict(fam);
        EXPECT_TRUE(std::isinf(p.extreme_r));
        EXPECT_EQ(p.extra_cusp_count, 2);
        EXPECT_EQ(static_cast<int>(find_singular_points(fam).size()), p.total_cusps()) << r;
    }
}

TEST(Predict, RejectsOffsetAndCaustic) {
    EXPECT_THROW(predict(offset_circle({3, 4}, 2.5, 0.0, 0.5)), Error);
    EXPECT_THROW(predict(caustic_ray_family(2.0)), Error);
}

// Two-circle counts agree with the predictions across radii.
TEST(Predict, CountsMatchAcrossRadii) {
    for (auto s : {RationalSlope(3, 4), RationalSlope(-4, 3), RationalSlope(2, 5), RationalSlope(5, 2)})
        for (double r : {1.3, 1.9, 2.6, 3.7}) {
            const auto fam = two_circle(s, r);
            const auto p = predict(fam);
            const double boundary = double(s.b()) / std::abs(double(s.a()));
            if (std::abs(r - boundary) < 1e-9 || (std::abs(s.a()) < s.b() && r < boundary)) continue;
            EXPECT_EQ(static_cast<int>(find_singular_points(fam).size()), p.total_cusps()) << s.str() << " r=" << r;
        }
}

TEST(Taylor, LeftCuspMatchesReferenceCoefficients) {
    const auto ts = taylor_at(two_circle({3, 4}, 2.5), 0.0, 5);
    auto rel = [](double got, double want) { return std::abs(got - want) / std::abs(want); };
    EXPECT_LT(rel(ts.x[0], -5.0 / 7.0), 1e-6);
    EXPECT_LT(rel(ts.x[4], -25.0 / 1792.0), 1e-6);
    EXPECT_LT(rel(ts.y[5], -5.0 / 768.0), 1e-6);
    for (int k = 1; k <= 3; ++k) {
        EXPECT_LT(std::abs(ts.x[k]), 1e-8) << k;
        EXPECT_LT(std::abs(ts.y[k]), 1e-8) << k;
    }
    EXPECT_LT(std::abs(ts.y[4]), 1e-8);
}

TEST(Taylor, RightCuspMatchesReferenceCoefficients) {
    const auto ts = taylor_at(two_circle({3, 4}, 2.5), kPi, 3);
    auto rel = [](double got, double want) { return std::abs(got - want) / std::abs(want); };
    EXPECT_NEAR(ts.t0, 4 * kPi, 1e-12);
    EXPECT_LT(rel(ts.x[0], -5.0 / 23.0), 1e-6);
    EXPECT_LT(rel(ts.x[2], -75.0 / 1058.0), 1e-6);
    EXPECT_LT(rel(ts.y[3], -25.0 / 644.0), 1e-6);
    EXPECT_LT(std::abs(ts.x[1]), 1e-8);
    EXPECT_LT(std::abs(ts.y[1]), 1e-8);
    EXPECT_LT(std::abs(ts.y[2]), 1e-8);
}

// The truncated series tracks the hand-derived envelope with an O(t^6)
// remainder.
TEST(Taylor, RemainderShrinksWithOrder) {
    const oracle::Chord ch{3, 4, 2.5, 0, 0};
    const auto ts = taylor_at(two_circle({3, 4}, 2.5), 0.0, 5);
    auto remainder = [&](double t) {
        double x, y;
        ch.envelope(t / 4.0, x, y);
        double sx = 0, sy = 0;
        for (int k = 5; k >= 0; --k) {
            sx = sx * t + ts.x[k];
            sy = sy * t + ts.y[k];
        }
        return std::hypot(x - sx, y - sy);
    };
    const double r1 = remainder(0.4), r2 = remainder(0.2);
    EXPECT_GT(r1 / r2, 40.0);
    EXPECT_LT(r1, 1e-3);
}

TEST(Taylor, RefusesStencilAcrossCut) {
    const Envelope env = make_envelope(two_circle({-2, 3}, 1.2));
    const double T = env.cuts().front().T_star + 0.05;
    try {
        taylor_at(two_circle({-2, 3}, 1.2), T, 3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::NearInfinity);
    }
}

TEST(Swallowtail, OffsetFamilyWitness) {
    const auto w = locate_swallowtail({3, 4}, 0.5, 2.0, 4.0);
    ASSERT_TRUE(w);
    EXPECT_GT(w->r, 2.5);
    EXPECT_LT(w->r, 3.5);
    EXPECT_EQ(w->point.cls, SingularClass::Swallowtail);
    EXPECT_EQ(std::abs(w->cusps_below - w->cusps_above), 2);
    // Lies on F_tt = F_ttt = 0.
    EXPECT_LE(std::abs(w->point.derivatives[1]), w->point.thresholds[1]);
    EXPECT_GT(std::abs(w->point.derivatives[2]), w->point.thresholds[2]);
}

TEST(Singular, StandardModels) {
    auto count = [](const PolyLineFamily& f) { return find_singular_points(f); };
    EXPECT_EQ(count(swallowtail_family(-1.0)).size(), 2u);
    EXPECT_EQ(count(swallowtail_family(1.0)).size(), 0u);
    const auto st = count(swallowtail_family(0.0));
    ASSERT_EQ(st.size(), 1u);
    EXPECT_EQ(st[0].cls, SingularClass::Swallowtail);
    const auto fly = count(butterfly_family(0.0, 0.0));
    ASSERT_EQ(fly.size(), 1u);
    EXPECT_EQ(fly[0].cls, SingularClass::Butterfly);
    EXPECT_NEAR(norm(*fly[0].location), 0.0, 1e-12);
    // Cusps of z = -1 at t = +-sqrt(1/6).
    const auto c = count(swallowtail_family(-1.0));
    EXPECT_NEAR(c[0].T, -std::sqrt(1.0 / 6.0), 1e-10);
    EXPECT_NEAR(c[1].T, std::sqrt(1.0 / 6.0), 1e-10);
}

TEST(Singular, ButterflyTourAgreesWithCubicDiscriminant) {
    for (double a = 4.0; a <= 5.5; a += 0.05) {
        const double y = 0.5 * std::cos(a), z = 0.5 * std::sin(a);
        // Singular points are the real roots of 20t^3 + 6zt + 2y.
        const double p = 0.3 * z, q = 0.1 * y;
        const int want = (-4 * p * p * p - 27 * q * q) > 0 ? 3 : 1;
        EXPECT_EQ(static_cast<int>(find_singular_points(butterfly_family(y, z)).size()), want) << a;
    }
}
