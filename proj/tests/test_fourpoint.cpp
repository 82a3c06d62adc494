#include <gtest/gtest.h>

#include <gci/random.hpp>

using namespace gci;

namespace {

const MPoly s = MPoly::var(2, 0), t = MPoly::var(2, 1), one = MPoly::constant(2, 1);

PWParams only(int k, const Rat &v)
{
    PWParams p = PWParams::units()[static_cast<std::size_t>(k)];
    p.a0 *= v;
    p.a1 *= v;
    p.a2 *= v;
    p.b *= v;
    p.c *= v;
    return p;
}

} // namespace

TEST(FourPoint, BasisValues)
{
    EXPECT_EQ(basis_J(0).eval({Rat(1), Rat(1)}), Rat(6));
    EXPECT_EQ(basis_J(1).eval({Rat(0), Rat(1)}), Rat(0));
    EXPECT_EQ(basis_J(2).eval({Rat(0), Rat(0)}), Rat(1));
    EXPECT_EQ(basis_Q(1).eval({Rat(1), Rat(1)}), Rat(3));
    EXPECT_EQ(basis_Q(2).eval({Rat(1), Rat(1)}), Rat(3));
    EXPECT_EQ(basis_Q(1) - basis_Q(2) * Rat(2), (one - s - t).pow(2) - s * t * Rat(4));
    EXPECT_THROW(basis_J(3), usage_error);
    EXPECT_THROW(basis_Q(0), usage_error);
}

TEST(FourPoint, SmallBasisValues)
{
    RationalSampler rs(31);
    for (int k = 0; k < 10; ++k) EXPECT_EQ(basis_j_small(0).eval({rs.next(), Rat(1)}), Rat(2));
    RatFn S = st_s(), T = st_t(), One = RatFn::constant(2, 1);
    RatFn j1_s0 = basis_j_small(1).compose({RatFn::constant(2, 0), T});
    EXPECT_EQ(j1_s0, ((One - T) / T).pow(2) * (One + T));
    // (1+s-t)^2 - s and the s-term both vanish at (0, 1).
    EXPECT_EQ(basis_j_small(2).eval({Rat(0), Rat(1)}), Rat(0));
    EXPECT_EQ(basis_j_small(2).eval({Rat(0), Rat(2)}), rat(9, 8));
}

TEST(FourPoint, Assembly)
{
    EXPECT_TRUE(assemble_P4(PWParams{}).is_zero());
    EXPECT_EQ(assemble_P4(only(0, 1)), basis_J(0));
    EXPECT_EQ(assemble_P4(only(3, 1)), s * t * (one - s - t).pow(2) - s * s * t * t * Rat(4));
    RationalSampler rs(32);
    for (int k = 0; k < 10; ++k) {
        PWParams a = rs.params(), b = rs.params();
        EXPECT_EQ(assemble_P4(a + b), assemble_P4(a) + assemble_P4(b));
    }
}

TEST(FourPoint, CrossingSymmetry)
{
    for (int nu = 0; nu <= 2; ++nu) EXPECT_TRUE(crossing_check(basis_J(nu), 4));
    EXPECT_FALSE(crossing_check(s, 4));
    EXPECT_TRUE(crossing_check((one + s + t) * Rat(7), 2));
    RationalSampler rs(33);
    for (int k = 0; k < 10; ++k) EXPECT_TRUE(crossing_check(assemble_P4(rs.params()), 4));
    // The (1+t)^3 misreading of the third basis polynomial is not symmetric.
    MPoly a = one + s - t, b = one + t - s;
    MPoly misread = (one + t).pow(3) * (a * a - s) - s * (one - t) * Rat(3) + s.pow(3) * (b * b - t);
    EXPECT_FALSE(crossing_check(misread, 4));
}

TEST(FourPoint, EigenRelations)
{
    auto e0 = eigen_check(0), e1 = eigen_check(1), e2 = eigen_check(2);
    EXPECT_EQ(e0.lambda, Rat(1));
    EXPECT_EQ(e0.sigma, 2);
    EXPECT_EQ(e1.lambda, Rat(1));
    EXPECT_EQ(e1.sigma, 1);
    EXPECT_EQ(e2.lambda, rat(1, 2));
    EXPECT_EQ(e2.sigma, 3);
}

TEST(FourPoint, CrossingDimension)
{
    EXPECT_EQ(crossing_dimension(2), 1);
    EXPECT_EQ(crossing_dimension(4), 5);
    EXPECT_EQ(crossing_dimension(5), 8);
    EXPECT_THROW(crossing_dimension(1), usage_error);
}

// Brute-force count of crossing-symmetric polynomials of the right degree
// through the rank of the symmetrization constraints, for small d.
TEST(FourPoint, CrossingDimensionMatchesLinearAlgebra)
{
    for (int d : {2, 3, 4, 5}) {
        const int deg = 2 * d - 3; // degree bound in each of s, t and total
        std::vector<Exps> monos;
        for (int i = 0; i <= deg; ++i)
            for (int j = 0; i + j <= deg; ++j) monos.push_back({i, j});
        // Rows: coefficients of (g P - P) for the two generators applied to each monomial.
        std::vector<std::vector<Rat>> cols;
        std::map<Exps, int> row_index;
        std::vector<std::map<Exps, Rat>> images;
        for (auto &m : monos) {
            RatFn f(MPoly::monomial(m, 1));
            std::map<Exps, Rat> img;
            for (auto g : {S3Gen::s12, S3Gen::s23}) {
                auto p = (s3_action(g, f, d) - f).as_polynomial();
                ASSERT_TRUE(p);
                for (auto &[e, c] : p->terms()) {
                    Exps key = e;
                    key.push_back(g == S3Gen::s12 ? 0 : 1);
                    img[key] += c;
                }
            }
            images.push_back(img);
        }
        for (auto &img : images)
            for (auto &[k, c] : img) row_index.try_emplace(k, static_cast<int>(row_index.size()));
        const std::size_t R = row_index.size(), C = monos.size();
        std::vector<std::vector<Rat>> M(R, std::vector<Rat>(C));
        for (std::size_t j = 0; j < C; ++j)
            for (auto &[k, c] : images[j]) M[static_cast<std::size_t>(row_index[k])][j] = c;
        std::size_t rank = 0;
        for (std::size_t col = 0; col < C && rank < R; ++col) {
            std::size_t piv = rank;
            while (piv < R && M[piv][col] == 0) ++piv;
            if (piv == R) continue;
            std::swap(M[piv], M[rank]);
            for (std::size_t r = 0; r < R; ++r)
                if (r != rank && M[r][col] != 0) {
                    Rat f = M[r][col] / M[rank][col];
                    for (std::size_t k = col; k < C; ++k) M[r][k] -= f * M[rank][k];
                }
            ++rank;
        }
        EXPECT_EQ(static_cast<long>(C - rank), crossing_dimension(d)) << "d=" << d;
    }
}

TEST(FourPoint, TruncatedValue)
{
    RationalSampler rs(34);
    PointConfig c = rs.config(4);
    EXPECT_EQ(truncated_4pt_value(MPoly(2), c, 4), Rat(0));
    // d = 2, P = 1+s+t: the sum of three one-loop terms.
    auto r = [&](int i, int j) { return c.rho(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
    Rat loops = 1 / (r(0, 1) * r(1, 2) * r(2, 3) * r(0, 3)) + 1 / (r(0, 1) * r(1, 3) * r(2, 3) * r(0, 2)) +
                1 / (r(0, 2) * r(1, 2) * r(1, 3) * r(0, 3));
    EXPECT_EQ(truncated_4pt_value(one + s + t, c, 2), loops);
    PointConfig bad = c;
    bad.points[1] = bad.points[0];
    EXPECT_THROW(truncated_4pt_value(one, bad, 4), degenerate_error);
}
