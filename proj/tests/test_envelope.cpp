#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "envlab/envelope.hpp"
#include "envlab/error.hpp"
#include "envlab/numdiff.hpp"
#include "oracles.hpp"

using namespace envlab;

namespace {

constexpr double kPi = std::numbers::pi;

struct RandomFamily {
    LineFamily fam;
    oracle::Chord chord;
};

// Random two-circle / offset families with |a|, b <= 6 and r in [1.1, 4].
std::vector<RandomFamily> random_families(int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> ua(-6, 6), ub(1, 6);
    std::uniform_real_distribution<double> ur(1.1, 4.0), uc(-0.5, 0.5);
    std::vector<RandomFamily> out;
    while (static_cast<int>(out.size()) < count) {
        const RationalSlope s(ua(rng), ub(rng));
        if (s.excluded()) continue;
        const double r = ur(rng);
        const bool offset = out.size() % 3 == 2;
        const double c = offset ? uc(rng) : 0.0, d = offset ? uc(rng) : 0.0;
        const LineFamily fam = offset ? offset_circle(s, r, c, d) : two_circle(s, r);
        out.push_back({fam, {double(s.a()), double(s.b()), r, c, d}});
    }
    return out;
}

}  // namespace

TEST(Envelope, OneCircleTangentPointIsRemovable) {
    const auto s = envelope_point(one_circle({3, 1}), 0.0);
    ASSERT_TRUE(s.point);
    EXPECT_NEAR(s.point->x, 1.0, 1e-13);
    EXPECT_NEAR(s.point->y, 0.0, 1e-13);
    EXPECT_TRUE(s.removable);
}

TEST(Envelope, TwoCircleLeftCuspValue) {
    const auto s = envelope_point(two_circle({3, 4}, 2.5), 0.0);
    ASSERT_TRUE(s.point);
    EXPECT_NEAR(s.point->x, -5.0 / 7.0, 1e-14);
    EXPECT_NEAR(s.point->y, 0.0, 1e-14);
    EXPECT_FALSE(s.removable);
    const Vec2 cf = closed_form_envelope(two_circle({3, 4}, 2.5), 0.0);
    EXPECT_NEAR(cf.x, -5.0 / 7.0, 1e-14);
}

// One-circle families have |a - b| removable points, one per tangency with
// the circle, and no infinity cuts.
TEST(Envelope, OneCircleRemovablePoints) {
    for (auto s : {RationalSlope(3, 1), RationalSlope(5, 4), RationalSlope(2, 5), RationalSlope(-5, 4),
                   RationalSlope(-5, 6)}) {
        const Envelope env = make_envelope(one_circle(s));
        EXPECT_EQ(static_cast<long>(env.removable_points().size()), std::abs(s.a() - s.b())) << s.str();
        EXPECT_TRUE(env.cuts().empty());
        for (const auto& rp : env.removable_points()) EXPECT_NEAR(norm(rp.point), 1.0, 1e-9);
    }
}

// Near a removable point the series branch and the direct quotient agree. The
// quotient loses about eps / h^2 to cancellation just outside the window.
TEST(Envelope, ContinuousThroughRemovablePoint) {
    const LineFamily fam = one_circle({3, 1});
    const Envelope env = make_envelope(fam);
    for (double h : {1e-2, 3e-3, 1.5e-3, 1e-4, 1e-7, 0.0}) {
        const auto s = env.sample(h);
        ASSERT_TRUE(s.point);
        const Vec2 cf = closed_form_envelope(fam, h);
        EXPECT_NEAR(s.point->x, cf.x, 1e-10) << h;
        EXPECT_NEAR(s.point->y, cf.y, 1e-10) << h;
    }
}

TEST(Envelope, ClosedFormAgreesWithGeneralFormula) {
    for (const auto& rf : random_families(20, 42)) {
        if (rf.fam.kind != FamilyKind::TwoCircle) continue;
        const Envelope env = make_envelope(rf.fam);
        for (int i = 0; i < 25; ++i) {
            const double T = 2 * kPi * (i + 0.37) / 25;
            if (env.distance_to_cut(T) < 1e-3) continue;
            const auto s = env.sample(T);
            ASSERT_TRUE(s.point);
            const Vec2 cf = closed_form_envelope(rf.fam, T);
            const double scale = std::max(1.0, norm(cf));
            EXPECT_NEAR(s.point->x, cf.x, 1e-9 * scale);
            EXPECT_NEAR(s.point->y, cf.y, 1e-9 * scale);
        }
    }
}

TEST(Envelope, AgreesWithHandDerivedSolve) {
    for (const auto& rf : random_families(20, 99)) {
        const Envelope env = make_envelope(rf.fam);
        for (int i = 0; i < 25; ++i) {
            const double T = 2 * kPi * (i + 0.21) / 25;
            double x, y;
            if (env.distance_to_cut(T) < 1e-3 || !rf.chord.envelope(T, x, y)) continue;
            const auto s = env.sample(T);
            ASSERT_TRUE(s.point);
            const double scale = std::max(1.0, std::hypot(x, y));
            EXPECT_NEAR(s.point->x, x, 1e-9 * scale);
            EXPECT_NEAR(s.point->y, y, 1e-9 * scale);
        }
    }
}

// Property: F and F_T vanish on the envelope.
TEST(Envelope, LineResiduals) {
    for (const auto& rf : random_families(20, 7)) {
        const Envelope env = make_envelope(rf.fam);
        for (int i = 0; i < 50; ++i) {
            const double T = 2 * kPi * (i + 0.5) / 50;
            const auto s = env.sample(T);
            if (!s.point) continue;
            EXPECT_LT(std::abs(env.line_derivative(0, T, *s.point)), 1e-9 * env.line_scale(0, *s.point));
            EXPECT_LT(std::abs(env.line_derivative(1, T, *s.point)), 1e-9 * env.line_scale(1, *s.point));
        }
    }
}

TEST(Envelope, VelocityMatchesFiniteDifference) {
    const Envelope env = make_envelope(two_circle({3, 4}, 2.0));
    for (double T : {0.4, 1.9, 3.7}) {
        const auto v = env.velocity(T);
        ASSERT_TRUE(v);
        const double fx = richardson_derivative([&](double s) { return env.sample(s).point->x; }, T, 1, 1e-2, 5);
        const double fy = richardson_derivative([&](double s) { return env.sample(s).point->y; }, T, 1, 1e-2, 5);
        EXPECT_NEAR(v->x, fx, 1e-8);
        EXPECT_NEAR(v->y, fy, 1e-8);
    }
}

TEST(Envelope, InfinityCutCensus) {
    const struct {
        double r;
        int cuts;
    } cases[] = {{1.2, 10}, {1.5, 5}, {1.7, 0}};
    for (const auto& c : cases) {
        const LineFamily fam = two_circle({-2, 3}, c.r);
        const CutReport rep = infinity_cuts(fam);
        EXPECT_EQ(static_cast<int>(rep.cuts.size()), c.cuts) << c.r;
        ASSERT_TRUE(rep.analytic_count);
        EXPECT_EQ(*rep.analytic_count, c.cuts);
        for (const auto& cut : rep.cuts) EXPECT_LT(std::abs(cut.denom), 1e-10);
    }
}

TEST(Envelope, CutsAreAtInfinityWithLineDirection) {
    const LineFamily fam = two_circle({-2, 3}, 1.2);
    const Envelope env = make_envelope(fam);
    ASSERT_EQ(env.cuts().size(), 10u);
    for (const auto& cut : env.cuts()) {
        EXPECT_TRUE(env.sample(cut.T_star).at_infinity());
        ASSERT_TRUE(cut.direction);
        EXPECT_NEAR(norm(*cut.direction), 1.0, 1e-12);
        // The direction is along the line: A dx + B dy = 0.
        EXPECT_NEAR(fam.A(cut.T_star) * cut.direction->x + fam.B(cut.T_star) * cut.direction->y, 0.0, 1e-12);
        // Approaching the cut the envelope runs off along that direction.
        const auto near = env.sample(cut.T_star + 1e-6);
        ASSERT_TRUE(near.point);
        EXPECT_GT(norm(*near.point), 1e3);
        EXPECT_NEAR(std::abs(cross(*near.point, *cut.direction)) / norm(*near.point), 0.0, 1e-2);
    }
}

TEST(Envelope, BoundaryCutsAreDoubleRoots) {
    const Envelope env = make_envelope(two_circle({-2, 3}, 1.5));
    for (const auto& cut : env.cuts()) EXPECT_EQ(cut.order, 2);
}

TEST(Envelope, PredictedCutCount) {
    EXPECT_EQ(predicted_cut_count({-2, 3}, 1.2), 10);
    EXPECT_EQ(predicted_cut_count({-2, 3}, 1.5), 5);
    EXPECT_EQ(predicted_cut_count({-2, 3}, 1.7), 0);
    EXPECT_EQ(predicted_cut_count({3, 2}, 1.2), 0);
    EXPECT_EQ(predicted_cut_count({-2, 3}, 0.9), 0);
}

TEST(Envelope, ClosedFormOnlyForConcentricFamilies) {
    try {
        closed_form_envelope(offset_circle({3, 4}, 2.5, 0.0, 0.5), 0.0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidKind);
    }
}

TEST(Envelope, DegenerateFamilyThrows) {
    // A parallel pencil: D = AB' - A'B vanishes identically.
    const Envelope env(TrigPoly::constant(1.0), TrigPoly::constant(0.0), TrigPoly::cos(1), Domain::period());
    EXPECT_TRUE(env.degenerate());
    try {
        env.sample(0.3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::Degenerate);
    }
}

TEST(Envelope, PolynomialFamily) {
    // Swallowtail family seen as lines x + t y + t^4 + z t^2 = 0.
    const PolyEnvelope env = make_envelope(swallowtail_family(-1.0));
    EXPECT_TRUE(env.cuts().empty());
    for (double t : {-1.0, 0.3, 0.9}) {
        const Vec2 want = swallowtail_slice(-1.0)(t);
        const auto s = env.sample(t);
        ASSERT_TRUE(s.point);
        EXPECT_NEAR(s.point->x, want.x, 1e-13);
        EXPECT_NEAR(s.point->y, want.y, 1e-13);
    }
}
