#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include <gci/freefield.hpp>
#include <gci/random.hpp>

using namespace gci;

namespace {

Vec4 e(int k)
{
    Vec4 v{Rat(0), Rat(0), Rat(0), Rat(0)};
    v[static_cast<std::size_t>(k)] = 1;
    return v;
}

Rat j_small_at(int nu, const PointConfig &c)
{
    auto cr = cross_ratios(c);
    return basis_j_small(nu).eval({cr.s, cr.t});
}

// Hand-expanded 6-point trace numerator over (rho16 rho23 rho45)^2.
Rat six_point_by_hand(const PointConfig &c)
{
    auto r = [&](int i, int j) { return c.rho(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)); };
    Rat b = r(1, 2) * (r(3, 4) * r(5, 6) - r(3, 5) * r(4, 6) + r(3, 6) * r(4, 5)) -
            r(1, 3) * (r(2, 4) * r(5, 6) - r(2, 5) * r(4, 6) + r(2, 6) * r(4, 5)) +
            r(1, 4) * (r(2, 3) * r(5, 6) - r(2, 5) * r(3, 6) + r(2, 6) * r(3, 5)) -
            r(1, 5) * (r(2, 3) * r(4, 6) - r(2, 4) * r(3, 6) + r(2, 6) * r(3, 4)) +
            r(1, 6) * (r(2, 3) * r(4, 5) - r(2, 4) * r(3, 5) + r(2, 5) * r(3, 4));
    Rat d = r(1, 6) * r(2, 3) * r(4, 5);
    return b / (d * d);
}

Rat w_of(const MPoly &P, const PointConfig &c) { return truncated_4pt_value(P, c, 4); }

} // namespace

TEST(FreeField, SlashMatrices)
{
    EXPECT_EQ(slash(e(3), false), quat_identity());
    Quat<Rat> s3 = slash(e(2), false);
    EXPECT_EQ(s3.m[0][0], GaussRat(Rat(0), Rat(-1)));
    EXPECT_EQ(s3.m[1][1], GaussRat(Rat(0), Rat(1)));
    EXPECT_EQ(s3.m[0][1], GaussRat(Rat(0)));
    EXPECT_EQ(s3.m[1][0], GaussRat(Rat(0)));
}

TEST(FreeField, AnticommutatorSymbolic)
{
    auto z = symbolic_points(2);
    auto lhs = slash_t(z[0], false) * slash_t(z[1], true) + slash_t(z[1], false) * slash_t(z[0], true);
    MPoly two_dot = dot_t(z[0], z[1]) * Rat(2);
    EXPECT_TRUE(lhs.m[0][0].re == two_dot && lhs.m[0][0].im.is_zero());
    EXPECT_TRUE(lhs.m[1][1].re == two_dot && lhs.m[1][1].im.is_zero());
    EXPECT_TRUE(lhs.m[0][1].re.is_zero() && lhs.m[0][1].im.is_zero());
    EXPECT_TRUE(lhs.m[1][0].re.is_zero() && lhs.m[1][0].im.is_zero());
}

TEST(FreeField, Determinant)
{
    EXPECT_EQ(det4(e(0), e(1), e(2), e(3)), Rat(1));
    EXPECT_EQ(det4(e(0), e(0), e(2), e(3)), Rat(0));
    EXPECT_EQ(det4(e(1), e(0), e(2), e(3)), Rat(-1));
}

TEST(FreeField, TraceIdentity)
{
    EXPECT_TRUE(trace4_identity_check(e(3), e(3), e(3), e(3)));
    EXPECT_TRUE(trace4_identity_check(e(0), e(1), e(2), e(3)));
    RationalSampler rs(51);
    for (int k = 0; k < 50; ++k) EXPECT_TRUE(trace4_identity_check(rs.vec4(), rs.vec4(), rs.vec4(), rs.vec4()));
    auto z = symbolic_points(4);
    EXPECT_TRUE(trace4_identity_holds<MPoly>(z[0], z[1], z[2], z[3]));
}

TEST(FreeField, FourPointTraceOracle)
{
    RationalSampler rs(52);
    for (int k = 0; k < 100; ++k) {
        PointConfig c = rs.config(4);
        EXPECT_EQ(v1_weyl_4pt(c) * c.rho(0, 2) * c.rho(1, 3), j_small_at(1, c));
        EXPECT_EQ(v1_weyl_4pt(c.reordered({1, 0, 2, 3})), v1_weyl_4pt(c));
    }
    PointConfig bad = rs.config(4);
    bad.points[3] = bad.points[0];
    EXPECT_THROW(v1_weyl_4pt(bad), degenerate_error);
}

TEST(FreeField, FourPointTraceCombination)
{
    RationalSampler rs(53);
    for (int k = 0; k < 20; ++k) {
        PointConfig c = rs.config(4);
        auto z = [&](int i, int j) { return c[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(j)]; };
        Rat expect = 4 * (dot(z(0, 1), z(1, 2)) * dot(z(2, 3), z(0, 3)) - dot(z(0, 1), z(2, 3)) * dot(z(0, 3), z(1, 2)) +
                          dot(z(0, 1), z(0, 3)) * dot(z(1, 2), z(2, 3)));
        EXPECT_EQ(cycle_trace_2n(c, {0, 1, 2, 3}), expect);
    }
}

TEST(FreeField, CycleTraces)
{
    RationalSampler rs(54);
    for (int k = 0; k < 25; ++k) {
        PointConfig c = rs.config(6);
        EXPECT_EQ(elementary_value(c, identity_cycle(3)), six_point_by_hand(c));
        std::vector<int> cyc{0, 1, 3, 2, 4, 5}, rev{0, 5, 4, 2, 3, 1};
        EXPECT_EQ(cycle_trace_2n(c, cyc), cycle_trace_2n(c, rev));
    }
    PointConfig c4 = rs.config(4);
    EXPECT_THROW(cycle_trace_2n(c4, {0, 1, 2, 2}), usage_error);
}

TEST(FreeField, WickStructure)
{
    RationalSampler rs(55);
    EXPECT_EQ(perfect_matchings(4).size(), 3u);
    RhoVars rv{4};
    auto r = [&](int i, int j) { return rv.var(i, j); };
    std::vector<PointConfig> c4{rs.config(4), rs.config(4)};
    Rat c2 = fit_wick_normalization(2, c4);
    EXPECT_EQ(wick_numerator(2, identity_cycle(2), c2), (r(0, 2) * r(1, 3) - r(0, 1) * r(2, 3) - r(0, 3) * r(1, 2)) * Rat(2));
    // n = 2, 3: polynomial identities in the point coordinates.
    for (auto &t : orbit_enumerate(2))
        EXPECT_EQ(rho_in_coordinates(wick_numerator(2, t.cycle, c2), 4), cycle_trace_symbolic(t.cycle));
    Rat c3 = fit_wick_normalization(3, {rs.config(6), rs.config(6)});
    EXPECT_EQ(rho_in_coordinates(wick_numerator(3, identity_cycle(3), c3), 6), cycle_trace_symbolic(identity_cycle(3)));
    // n = 3 leading term of the braces: rho12 (rho34 rho56 - rho35 rho46 + rho36 rho45).
    RhoVars r6{6};
    MPoly sps = signed_pairing_sum(3, identity_cycle(3));
    Exps mono(static_cast<std::size_t>(r6.count()), 0);
    mono[static_cast<std::size_t>(r6.index(0, 1))] = 1;
    mono[static_cast<std::size_t>(r6.index(2, 3))] = 1;
    mono[static_cast<std::size_t>(r6.index(4, 5))] = 1;
    EXPECT_EQ(abs(sps.coeff(mono)), Rat(1));
}

TEST(FreeField, WickStructureEightPoints)
{
    RationalSampler rs(56);
    std::vector<PointConfig> cs;
    for (int k = 0; k < 10; ++k) cs.push_back(rs.config(8));
    Rat c4 = fit_wick_normalization(4, {cs.front()});
    RhoVars rv{8};
    auto orbit = orbit_enumerate(4, false);
    for (auto &c : cs)
        for (std::size_t i = 0; i < orbit.size(); i += 7)
            EXPECT_EQ(cycle_trace_2n(c, orbit[i].cycle), wick_numerator(4, orbit[i].cycle, c4).eval(rv.values(c)));
}

TEST(FreeField, OrbitSizes)
{
    EXPECT_EQ(orbit_enumerate(2, false).size(), 2u);
    EXPECT_EQ(orbit_enumerate(3, false).size(), 8u);
    EXPECT_EQ(orbit_enumerate(4, false).size(), 48u);
    // Distinct as unoriented cyclic orders.
    auto canon = [](std::vector<int> c) {
        std::vector<int> best;
        for (int rev = 0; rev < 2; ++rev) {
            for (std::size_t r = 0; r < c.size(); ++r) {
                std::rotate(c.begin(), c.begin() + 1, c.end());
                if (best.empty() || c < best) best = c;
            }
            std::reverse(c.begin(), c.end());
        }
        return best;
    };
    std::set<std::vector<int>> seen;
    for (auto &t : orbit_enumerate(4, false)) seen.insert(canon(t.cycle));
    EXPECT_EQ(seen.size(), 48u);
    EXPECT_THROW(orbit_enumerate(1), usage_error);
}

TEST(FreeField, ScalarBilocal)
{
    RationalSampler rs(57);
    for (int k = 0; k < 20; ++k) {
        PointConfig c = rs.config(4);
        Rat hand = 1 / (c.rho(0, 2) * c.rho(1, 3)) + 1 / (c.rho(0, 3) * c.rho(1, 2));
        EXPECT_EQ(v1_scalar_npoint(c), hand);
        EXPECT_EQ(hand * c.rho(0, 2) * c.rho(1, 3), j_small_at(0, c));
        EXPECT_EQ(v1_scalar_npoint(c.reordered({1, 0, 2, 3})), v1_scalar_npoint(c));
    }
    PointConfig bad = rs.config(4);
    bad.points[2] = bad.points[0];
    EXPECT_THROW(v1_scalar_npoint(bad), degenerate_error);
}

TEST(FreeField, LoopReferences)
{
    RationalSampler rs(58);
    for (int k = 0; k < 10; ++k) {
        PointConfig c = rs.config(4);
        EXPECT_EQ(lagrangian_scalar_npoint(c), w_of(basis_J(0), c));
        EXPECT_EQ(lagrangian_weyl_npoint(c), 2 * w_of(basis_J(1), c));
    }
}

TEST(FreeField, SetPartitions)
{
    const std::size_t bell[] = {1, 1, 2, 5, 15, 52};
    for (int n = 1; n <= 5; ++n) EXPECT_EQ(set_partitions(n).size(), bell[n]);
}

TEST(FreeField, IntervalIdentities)
{
    RationalSampler rs(59);
    for (int k = 0; k < 100; ++k) EXPECT_TRUE(interval_identities(rs.config(4)));
    Vec4 a = rs.vec4(), d = rs.vec4();
    PointConfig line;
    for (int k = 0; k < 4; ++k) {
        Vec4 p = a;
        for (int i = 0; i < 4; ++i) p[i] += Rat(k * k) * d[i];
        line.points.push_back(p);
    }
    EXPECT_TRUE(interval_identities(line));
    EXPECT_TRUE(interval_identities_hold<MPoly>(symbolic_points(4)));
}
