#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include <gci/random.hpp>
#include <gci/symmetrize.hpp>

using namespace gci;

namespace {

const Evaluator scalar_full = [](const PointConfig &x) { return bilocal_full(x, v1_scalar_npoint); };
const Evaluator weyl_full = [](const PointConfig &x) { return bilocal_full(x, v1_weyl_npoint); };
const Evaluator maxwell_ref = [](const PointConfig &x) { return truncated_4pt_value(basis_J(2), x, 4); };

std::vector<PointConfig> sample(RationalSampler &rs, std::size_t n, int count)
{
    std::vector<PointConfig> v;
    for (int i = 0; i < count; ++i) v.push_back(rs.config(n));
    return v;
}

} // namespace

TEST(Symmetrize, PatternEnumeration)
{
    auto p2 = enumerate_patterns(2);
    ASSERT_EQ(p2.size(), 3u);
    EXPECT_EQ(p2[0].str(), "(12)(34)");
    EXPECT_EQ(p2[1].str(), "(13)(24)");
    EXPECT_EQ(p2[2].str(), "(14)(23)");
    EXPECT_EQ(enumerate_patterns(1).size(), 1u);
    EXPECT_EQ(enumerate_patterns(3).size(), 15u);
    for (int n = 1; n <= 6; ++n) {
        auto ps = enumerate_patterns(n);
        EXPECT_EQ(Rat(static_cast<long>(ps.size())), double_factorial_odd(n));
        for (auto &p : ps) {
            auto f = p.flat();
            std::sort(f.begin(), f.end());
            std::vector<int> all(static_cast<std::size_t>(2 * n));
            std::iota(all.begin(), all.end(), 0);
            EXPECT_EQ(f, all);
            EXPECT_EQ(p.pairs.front().first, 0);
            for (std::size_t i = 0; i < p.pairs.size(); ++i) {
                EXPECT_LT(p.pairs[i].first, p.pairs[i].second);
                if (i) {
                    EXPECT_LT(p.pairs[i - 1].first, p.pairs[i].first);
                }
            }
        }
    }
    EXPECT_THROW(enumerate_patterns(0), usage_error);
}

TEST(Symmetrize, TruncatedBilocalFunctions)
{
    RationalSampler rs(61);
    PointConfig c4 = rs.config(4);
    Rat pre = pow(c4.rho(0, 1) * c4.rho(2, 3), 3);
    EXPECT_EQ(w1_truncated(2, weyl_full, c4), v1_weyl_npoint(c4) / pre);
    PointConfig c6 = rs.config(6);
    EXPECT_EQ(w1_truncated(3, weyl_full, c6), w1_value(weyl_full, c6));
    // Purely disconnected input: only 2-slot connected parts.
    Evaluator pairs_only = [](const PointConfig &x) {
        return bilocal_full(x, [](const PointConfig &y) { return y.size() == 4 ? v1_scalar_npoint(y) : Rat(0); });
    };
    PointConfig c8 = rs.config(8);
    EXPECT_NE(w1_value(pairs_only, c8), Rat(0));
    EXPECT_EQ(w1_truncated(4, pairs_only, c8), Rat(0));
    PointConfig bad = c4;
    bad.points[1] = bad.points[0];
    EXPECT_THROW(w1_truncated(2, weyl_full, bad), error);
}

TEST(Symmetrize, ZeroLambda)
{
    RationalSampler rs(62);
    EXPECT_EQ(symmetrized_wt(2, 0, scalar_full, rs.config(4)), Rat(0));
}

TEST(Symmetrize, PermutationInvariance)
{
    RationalSampler rs(63);
    for (int n : {2, 3}) {
        PointConfig c = rs.config(static_cast<std::size_t>(2 * n));
        Rat base = symmetrized_wt(n, 1, weyl_full, c);
        std::vector<int> perm(static_cast<std::size_t>(2 * n));
        std::iota(perm.begin(), perm.end(), 0);
        for (int k = 0; k < 6; ++k) {
            std::shuffle(perm.begin(), perm.end(), rs.engine());
            EXPECT_EQ(symmetrized_wt(n, 1, weyl_full, c.reordered(perm)), base);
        }
    }
}

TEST(Symmetrize, FittedLambdas)
{
    RationalSampler rs(64);
    auto c4 = sample(rs, 4, 8);
    Rat l0 = fit_lambda(2, lagrangian_scalar_npoint, scalar_full, c4);
    Rat l1 = fit_lambda(2, lagrangian_weyl_npoint, weyl_full, c4);
    Rat l2 = fit_lambda(2, maxwell_ref, v1_maxwell_4pt, c4);
    EXPECT_EQ(l0, Rat(1));
    EXPECT_EQ(l1, Rat(1));
    EXPECT_EQ(l2, rat(1, 2));
    EXPECT_EQ(l0, 2 * l2);
    EXPECT_EQ(l1, eigen_check(1).lambda);
    EXPECT_EQ(fit_lambda(3, lagrangian_weyl_npoint, weyl_full, sample(rs, 6, 20)), Rat(1));
    EXPECT_EQ(fit_lambda(3, lagrangian_scalar_npoint, scalar_full, sample(rs, 6, 5)), Rat(1));
}

TEST(Symmetrize, FitFailures)
{
    RationalSampler rs(65);
    auto c4 = sample(rs, 4, 4);
    Evaluator zero = [](const PointConfig &) { return Rat(0); };
    EXPECT_THROW(fit_lambda(2, zero, scalar_full, c4), usage_error);
    Evaluator constant = [](const PointConfig &) { return Rat(1); };
    EXPECT_THROW(fit_lambda(2, constant, scalar_full, c4), not_symmetrizable_error);
}

TEST(Symmetrize, ElementaryContributionCount)
{
    RationalSampler rs(66);
    PointConfig c = rs.config(6);
    Rat total = 0;
    std::size_t pieces = 0;
    for (auto &p : enumerate_patterns(3)) {
        PointConfig q = c.reordered(p.flat());
        Rat pre = pow(q.rho(0, 1) * q.rho(2, 3) * q.rho(4, 5), 3);
        for (auto &e : orbit_enumerate(3, false)) {
            total += elementary_value(q, e.cycle) / pre;
            ++pieces;
        }
    }
    EXPECT_EQ(pieces, 120u);
    EXPECT_EQ(total, symmetrized_wt(3, 1, weyl_full, c));
}

TEST(Symmetrize, TwistTwoDecay)
{
    RationalSampler rs(67);
    PointConfig base = rs.config(4);
    auto eps = geometric_epsilons(6);
    auto matched = twist2_consistency(2, 1, scalar_full, base, eps);
    EXPECT_TRUE(matched.pass);
    EXPECT_GE(matched.exponent, 1.0);
    auto mismatched = twist2_consistency(2, 2, scalar_full, base, eps);
    EXPECT_FALSE(mismatched.pass);
    EXPECT_LT(mismatched.exponent, 0.5);
    Evaluator zero = [](const PointConfig &) { return Rat(0); };
    auto z = twist2_consistency(2, 1, zero, base, eps);
    EXPECT_TRUE(z.exact_zero);
    EXPECT_TRUE(z.pass);
    EXPECT_THROW(twist2_consistency(2, 1, scalar_full, base, geometric_epsilons(3)), usage_error);
    EXPECT_THROW(twist2_consistency(2, 1, scalar_full, base, {rat(1, 2), rat(1, 8), rat(1, 32), rat(1, 128)}), usage_error);
}

TEST(Symmetrize, WeylTwistTwoDecay)
{
    RationalSampler rs(68);
    auto rep = twist2_consistency(2, 1, weyl_full, rs.config(4), geometric_epsilons(6));
    EXPECT_TRUE(rep.pass);
}
