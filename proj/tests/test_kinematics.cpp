#include <gtest/gtest.h>

#include <gci/random.hpp>

using namespace gci;

namespace {

Vec4 e(int k)
{
    Vec4 v{Rat(0), Rat(0), Rat(0), Rat(0)};
    v[static_cast<std::size_t>(k)] = 1;
    return v;
}
const Vec4 origin{Rat(0), Rat(0), Rat(0), Rat(0)};

} // namespace

TEST(Kinematics, SquaredIntervals)
{
    PointConfig c{{origin, e(0), e(1)}};
    EXPECT_EQ(squared_interval(c, 0, 1), Rat(1));
    EXPECT_EQ(squared_interval(c, 1, 1), Rat(0));
    EXPECT_EQ(squared_interval(c, 1, 2), Rat(2));
    EXPECT_THROW(squared_interval(c, 0, 3), usage_error);
}

TEST(Kinematics, CrossRatioExamples)
{
    PointConfig c{{origin, e(0), e(1), e(2)}};
    auto cr = cross_ratios(c);
    EXPECT_EQ(cr.s, Rat(1));
    EXPECT_EQ(cr.t, Rat(1));
    PointConfig coincident{{origin, origin, e(1), e(2)}};
    auto cz = cross_ratios(coincident);
    EXPECT_EQ(cz.s, Rat(0));
    EXPECT_EQ(cz.t, Rat(1));
    PointConfig bad{{origin, e(0), origin, e(0)}};
    EXPECT_THROW(cross_ratios(bad), degenerate_error);
}

TEST(Kinematics, SwappingFirstTwoPointsMapsCrossRatios)
{
    RationalSampler rs(21);
    for (int k = 0; k < 50; ++k) {
        PointConfig c = rs.config(4);
        auto a = cross_ratios(c), b = cross_ratios(c.reordered({1, 0, 2, 3}));
        EXPECT_EQ(b.s, a.s / a.t);
        EXPECT_EQ(b.t, 1 / a.t);
    }
}

TEST(Kinematics, CrossRatiosInvariantUnderTranslationAndRotation)
{
    RationalSampler rs(22);
    // A rational rotation in the (x1, x2) plane (3-4-5 triangle) and a
    // signed permutation of the remaining axes.
    auto rotate = [](const Vec4 &v) {
        return Vec4{rat(3, 5) * v[0] - rat(4, 5) * v[1], rat(4, 5) * v[0] + rat(3, 5) * v[1], -v[3], v[2]};
    };
    for (int k = 0; k < 50; ++k) {
        PointConfig c = rs.config(4);
        Vec4 shift = rs.vec4();
        PointConfig moved;
        for (auto &p : c.points) {
            Vec4 q = rotate(p);
            for (int i = 0; i < 4; ++i) q[i] += shift[i];
            moved.points.push_back(q);
        }
        auto a = cross_ratios(c), b = cross_ratios(moved);
        EXPECT_EQ(a.s, b.s);
        EXPECT_EQ(a.t, b.t);
    }
}

TEST(Kinematics, ChiralVariables)
{
    auto z = chiral_from_st(Rat(0), Rat(1));
    ASSERT_TRUE(z.roots);
    EXPECT_EQ(z.roots->first, Rat(0));
    EXPECT_EQ(z.roots->second, Rat(0));
    auto h = chiral_from_st(rat(1, 4), rat(1, 4));
    ASSERT_TRUE(h.roots);
    EXPECT_EQ(h.roots->first, rat(1, 2));
    EXPECT_EQ(h.roots->second, rat(1, 2));
    auto c = chiral_from_st(Rat(1), Rat(1));
    EXPECT_FALSE(c.roots);
    EXPECT_EQ(c.discriminant, Rat(-3));
    RationalSampler rs(23);
    for (int k = 0; k < 100; ++k) {
        Rat s = rs.next(), t = rs.next();
        auto p = chiral_from_st(s, t);
        EXPECT_EQ(p.e2, s);
        EXPECT_EQ(1 - p.e1 + p.e2, t);
    }
}

TEST(Kinematics, CrossingAction)
{
    RatFn s = st_s(), t = st_t(), one = RatFn::constant(2, 1);
    RatFn f = one + s + t;
    EXPECT_EQ(s3_action(S3Gen::s12, f, 2), f);
    EXPECT_EQ(s3_action(S3Gen::s23, f, 2), f);
    // s23 s^2 with weight 1: s (1/s)^2 = 1/s.
    EXPECT_EQ(s3_action(S3Gen::s23, s * s, 2), s.pow(-1));
    RationalSampler rs(24);
    for (int k = 0; k < 10; ++k) {
        RatFn g = (RatFn::constant(2, rs.next()) + s * rs.next() + t * t * rs.next()) / (one + s * s);
        for (auto gen : {S3Gen::s12, S3Gen::s23, S3Gen::s13})
            for (int d : {2, 3, 4}) EXPECT_EQ(s3_action(gen, s3_action(gen, g, d), d), g);
    }
    EXPECT_THROW(s3_action(S3Gen::s12, f, 1), usage_error);
}

TEST(Kinematics, ThreePointAdmissibility)
{
    SpinLabel scalar2{Rat(2), Rat(0), Rat(0)};
    EXPECT_TRUE(gci_3pt_admissible({scalar2, scalar2, scalar2}).admissible);
    SpinLabel psi{rat(3, 2), rat(1, 2), Rat(0)}, psibar{rat(3, 2), Rat(0), rat(1, 2)}, phi{Rat(1), Rat(0), Rat(0)};
    EXPECT_FALSE(gci_3pt_admissible({psi, psibar, phi}).admissible);
    EXPECT_FALSE(gci_3pt_admissible({phi, phi, phi}).admissible);
    SpinLabel zero{Rat(0), Rat(0), Rat(0)};
    auto z = gci_3pt_admissible({zero, scalar2, scalar2});
    EXPECT_TRUE(z.admissible);
    EXPECT_TRUE(z.zero_boundary);
    EXPECT_THROW(gci_3pt_admissible({SpinLabel{rat(1, 3), Rat(0), Rat(0)}, phi, phi}), usage_error);
}

TEST(Kinematics, LocalityExponent)
{
    auto a = locality_exponent({Rat(4), Rat(0), Rat(0)});
    EXPECT_EQ(a.N, 4);
    EXPECT_EQ(a.epsilon, 1);
    auto b = locality_exponent({rat(3, 2), rat(1, 2), Rat(0)});
    EXPECT_EQ(b.N, 2);
    EXPECT_EQ(b.epsilon, -1);
    auto c = locality_exponent({Rat(1), Rat(0), Rat(0)});
    EXPECT_EQ(c.N, 1);
    EXPECT_EQ(c.epsilon, 1);
    EXPECT_THROW(locality_exponent({rat(1, 2), Rat(0), Rat(0)}), inadmissible_error);
}

TEST(Kinematics, HarmonicDimension)
{
    EXPECT_EQ(harmonic_dimension(0, 4), 1);
    EXPECT_EQ(harmonic_dimension(2, 4), 9);
    EXPECT_EQ(harmonic_dimension(1, 6), 6);
    for (long n = 1; n <= 20; ++n) EXPECT_EQ(harmonic_dimension(n - 1, 4), n * n);
    // Product form for D = 6: 2/(2 d0)! n^2 (n^2 - 1), d0 = 2, at n = m + 2.
    for (long m = 0; m <= 15; ++m) {
        long n = m + 2;
        EXPECT_EQ(harmonic_dimension(m, 6), n * n * (n * n - 1) / 12);
    }
}
