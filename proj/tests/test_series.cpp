#include <gtest/gtest.h>

#include <gci/random.hpp>
#include <gci/series.hpp>

using namespace gci;

namespace {

Series2 uv(int N, int i, int j, const Rat &c = 1) { return Series2::monomial(N, i, j, c); }

} // namespace

TEST(Series1, InverseOfGeometric)
{
    Series1 one_minus_x(6, {Rat(1), Rat(-1)});
    Series1 inv = one_minus_x.inverse();
    for (int k = 0; k <= 6; ++k) EXPECT_EQ(inv[k], Rat(1));
    EXPECT_THROW(Series1(3).inverse(), pole_error);
}

TEST(Series1, ShiftsRoundTrip)
{
    Series1 a(4, {Rat(1), Rat(2), Rat(3)});
    EXPECT_EQ(a.shift_up(2).shift_down(2), a);
    EXPECT_THROW(a.shift_down(1), structural_error);
}

TEST(Series2, DivideAntisymmetricExamples)
{
    const int N = 6;
    EXPECT_EQ(series2_div_antisym(uv(N, 2, 0) - uv(N, 0, 2)), (uv(N, 1, 0) + uv(N, 0, 1)).truncated(N - 1));
    EXPECT_EQ(series2_div_antisym(uv(N, 1, 0) - uv(N, 0, 1)), Series2::constant(N - 1, 1));
    EXPECT_EQ(series2_div_antisym(uv(N, 3, 1) - uv(N, 1, 3)), (uv(N, 2, 1) + uv(N, 1, 2)).truncated(N - 1));
    EXPECT_THROW(series2_div_antisym(uv(N, 1, 0)), structural_error);
}

TEST(Series2, DivisionInvertsMultiplication)
{
    RationalSampler rs(3);
    const int N = 7;
    for (int trial = 0; trial < 10; ++trial) {
        Series2 g(N);
        for (int i = 0; i <= N; ++i)
            for (int j = 0; i + j <= N; ++j) g.ref(i, j) = rs.next();
        g = g + g.swapped();
        Series2 f = (uv(N, 1, 0) - uv(N, 0, 1)) * g;
        EXPECT_EQ(series2_div_antisym(f), g.truncated(N - 1));
    }
}

TEST(SymmetricReduce, NewtonIdentities)
{
    MPoly u = MPoly::var(2, 0), v = MPoly::var(2, 1);
    MPoly e1 = MPoly::var(2, 0), e2 = MPoly::var(2, 1);
    EXPECT_EQ(symmetric_reduce(u * u + v * v), e1 * e1 - e2 * Rat(2));
    EXPECT_EQ(symmetric_reduce(u * v), e2);
    EXPECT_EQ(symmetric_reduce(u.pow(3) + v.pow(3)), e1.pow(3) - e1 * e2 * Rat(3));
    EXPECT_THROW(symmetric_reduce(u), structural_error);
}

TEST(SymmetricReduce, RoundTripOnRandomSymmetricPolynomials)
{
    RationalSampler rs(4);
    MPoly u = MPoly::var(2, 0), v = MPoly::var(2, 1);
    for (int trial = 0; trial < 20; ++trial) {
        MPoly p(2);
        for (int k = 0; k < 5; ++k) {
            std::uniform_int_distribution<int> d(0, 4);
            int a = d(rs.engine()), b = d(rs.engine());
            Rat c = rs.next();
            p.add_term({a, b}, c);
            p.add_term({b, a}, c);
        }
        MPoly e = symmetric_reduce(p);
        EXPECT_EQ(e.compose({u + v, u * v}), p);
    }
}

TEST(ExpandToChiral, Examples)
{
    const int N = 5;
    RatFn s = st_s(), t = st_t(), one = RatFn::constant(2, 1);
    EXPECT_EQ(expand_to_chiral(s, N), uv(N, 1, 1));
    Series2 geo = expand_to_chiral(one / t, N);
    for (int i = 0; i <= N; ++i)
        for (int j = 0; i + j <= N; ++j) EXPECT_EQ(geo.coeff(i, j), Rat(1));
    EXPECT_EQ(expand_to_chiral(t, N), Series2::constant(N, 1) - uv(N, 1, 0) - uv(N, 0, 1) + uv(N, 1, 1));
    EXPECT_THROW(expand_to_chiral(one / s, N), pole_error);
}

TEST(QSeries, HalfPeriodSubstitution)
{
    QSeries a(0, 20);
    a.add(0, Rat(5));
    a.add(2, Rat(1));
    a.add(4, Rat(3));
    QSeries h = halfperiod_substitute(a);
    EXPECT_EQ(h.coeff(0), Rat(5));
    EXPECT_EQ(h.coeff(1), Rat(-1));
    EXPECT_EQ(h.coeff_q(1), Rat(3));
    QSeries half(0, 4);
    half.add(1, Rat(1));
    EXPECT_THROW(halfperiod_substitute(half), usage_error);
}

TEST(QSeries, ProductWindow)
{
    QSeries a(0, 6), b(0, 6);
    a.add(0, 1);
    a.add(2, 1);
    b.add(0, 1);
    b.add(2, -1);
    QSeries p = a * b;
    EXPECT_EQ(p.coeff(4), Rat(-1));
    EXPECT_EQ(p.coeff(2), Rat(0));
    EXPECT_EQ(p.max_key(), 6);
}
