#include <gtest/gtest.h>

#include <gci/random.hpp>
#include <gci/rational.hpp>

using namespace gci;

TEST(Rational, ParsesFractionsAndIntegers)
{
    EXPECT_EQ(parse_rat("3/6"), rat(1, 2));
    EXPECT_EQ(parse_rat(" -7 "), Rat(-7));
    EXPECT_EQ(parse_rat("+4/-8"), rat(-1, 2));
    EXPECT_EQ(to_fraction(rat(6, 4)), "3/2");
    EXPECT_EQ(to_fraction(Rat(5)), "5/1");
}

TEST(Rational, RejectsMalformedInput)
{
    EXPECT_THROW(parse_rat(""), usage_error);
    EXPECT_THROW(parse_rat("1/0"), usage_error);
    EXPECT_THROW(parse_rat("1.5"), usage_error);
    EXPECT_THROW(parse_rat("a/2"), usage_error);
    EXPECT_THROW(rat(1, 0), usage_error);
}

TEST(Rational, IntegerFunctions)
{
    EXPECT_EQ(factorial(7), 5040);
    EXPECT_EQ(binomial(8, 4), 70);
    EXPECT_EQ(binomial(3, 5), 0);
    EXPECT_EQ(pochhammer(Rat(3), 2), Rat(12));
    EXPECT_EQ(beta_int(3, 2), rat(1, 12));
    EXPECT_EQ(beta_int(2, 2), rat(1, 6));
    EXPECT_EQ(pow(rat(2, 3), -2), rat(9, 4));
    EXPECT_THROW(beta_int(0, 1), usage_error);
}

TEST(Rational, SquareRoots)
{
    Rat r;
    EXPECT_TRUE(rational_sqrt(rat(9, 16), r));
    EXPECT_EQ(r, rat(3, 4));
    EXPECT_FALSE(rational_sqrt(rat(2, 9), r));
    EXPECT_FALSE(rational_sqrt(Rat(-4), r));
}

TEST(Rational, GaussianArithmetic)
{
    GaussRat i = GaussRat::unit_i();
    EXPECT_EQ(i * i, GaussRat(Rat(-1)));
    GaussRat z(rat(1, 2), Rat(3));
    EXPECT_EQ(z * inverse(z), GaussRat(Rat(1)));
    EXPECT_THROW(inverse(GaussRat(Rat(0))), pole_error);
}

TEST(Rational, SquareRootPropertyOnSquares)
{
    RationalSampler rs(11);
    for (int k = 0; k < 200; ++k) {
        Rat x = rs.next(), r;
        ASSERT_TRUE(rational_sqrt(x * x, r));
        EXPECT_EQ(r, abs(x));
    }
}
