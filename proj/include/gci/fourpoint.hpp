#pragma once

#include <array>

#include "kinematics.hpp"

namespace gci {

// Parameters of the crossing-symmetric d = 4 truncated 4-point family,
// plus the 2-point normalization B.
struct PWParams {
    Rat a0, a1, a2, b, c, B;

    std::array<Rat, 5> four_point() const { return {a0, a1, a2, b, c}; }

    friend PWParams operator+(const PWParams &x, const PWParams &y)
    {
        return {x.a0 + y.a0, x.a1 + y.a1, x.a2 + y.a2, x.b + y.b, x.c + y.c, x.B + y.B};
    }
    friend bool operator==(const PWParams &x, const PWParams &y)
    {
        return x.a0 == y.a0 && x.a1 == y.a1 && x.a2 == y.a2 && x.b == y.b && x.c == y.c && x.B == y.B;
    }

    // The five unit directions of (a0, a1, a2, b, c), with B = 0.
    static std::array<PWParams, 5> units()
    {
        std::array<PWParams, 5> u{};
        u[0].a0 = 1;
        u[1].a1 = 1;
        u[2].a2 = 1;
        u[3].b = 1;
        u[4].c = 1;
        return u;
    }
};

namespace detail {
inline MPoly S() { return MPoly::var(2, 0); }
inline MPoly T() { return MPoly::var(2, 1); }
inline MPoly C(long k) { return MPoly::constant(2, k); }
} // namespace detail

inline MPoly basis_J(int nu)
{
    using namespace detail;
    const MPoly s = S(), t = T(), one = C(1);
    switch (nu) {
    case 0:
        return s * s * (one + s) + t * t * (one + t) + s * s * t * t * (s + t);
    case 1: {
        MPoly Q1 = one + s * s + t * t;
        return s * (one - s) * (one - s * s) + t * (one - t) * (one - t * t) +
               s * t * ((s - t) * (s * s - t * t) - C(2) * Q1);
    }
    case 2: {
        // The cubic factor is 1 + t^3; the (1+t)^3 reading breaks crossing symmetry.
        MPoly a = one + s - t, b = one + t - s;
        return (one + t.pow(3)) * (a * a - s) - C(3) * s * (one - t) + s.pow(3) * (b * b - t);
    }
    }
    throw usage_error("basis_J: nu must be 0, 1 or 2");
}

inline MPoly basis_Q(int j)
{
    using namespace detail;
    const MPoly s = S(), t = T(), one = C(1);
    if (j == 1) return one + s * s + t * t;
    if (j == 2) return s + t + s * t;
    throw usage_error("basis_Q: j must be 1 or 2");
}

// The twist-two basis: values of the first partial-wave function.
inline RatFn basis_j_small(int nu)
{
    const RatFn s = st_s(), t = st_t(), one = RatFn::constant(2, 1);
    const RatFn ti = t.pow(-1);
    switch (nu) {
    case 0:
        return one + ti;
    case 1: {
        RatFn r = (one - t) * ti;
        return r * r * (one + t - s) - RatFn::constant(2, 2) * s * ti;
    }
    case 2: {
        RatFn a = one + s - t;
        RatFn ti3 = t.pow(-3);
        return (one + ti3) * (a * a - s) - RatFn::constant(2, 3) * s * (one - t) * ti3;
    }
    }
    throw usage_error("basis_j_small: nu must be 0, 1 or 2");
}

inline MPoly assemble_P4(const PWParams &p)
{
    using namespace detail;
    const MPoly Q1 = basis_Q(1), Q2 = basis_Q(2);
    return basis_J(0) * p.a0 + basis_J(1) * p.a1 + basis_J(2) * p.a2 +
           S() * T() * ((Q1 - C(2) * Q2) * p.b + Q2 * p.c);
}

inline bool crossing_check(const MPoly &P, int d)
{
    RatFn f(P);
    return s3_action(S3Gen::s12, f, d) == f && s3_action(S3Gen::s23, f, d) == f;
}

struct EigenResult {
    Rat lambda;
    int sigma = 0;
    MPoly q;
};

// Checks lambda (1 + s13 + s23)[t^3 j_nu] = J_nu and that
// lambda (1 + s13 + s23)[t^3 j_nu] - t^3 j_nu = s^sigma q with q(0,t) != 0.
inline EigenResult eigen_check(int nu)
{
    const RatFn base = st_t().pow(3) * basis_j_small(nu);
    const RatFn sym = base + s3_action(S3Gen::s13, base, 4) + s3_action(S3Gen::s23, base, 4);
    auto symp = sym.as_polynomial();
    if (!symp) throw structural_error("eigen_check: symmetrization is not polynomial");
    const MPoly J = basis_J(nu);
    if (symp->is_zero() || J.is_zero()) throw structural_error("eigen_check: vanishing symmetrization");
    const auto &[e, c] = symp->leading();
    Rat lambda = J.coeff(e) / c;
    if (*symp * lambda != J) throw structural_error("eigen_check: symmetrization is not proportional to J");
    auto basep = base.as_polynomial();
    if (!basep) throw structural_error("eigen_check: t^3 j is not polynomial");
    MPoly diff = J - *basep;
    if (diff.is_zero()) throw structural_error("eigen_check: vanishing remainder");
    int sigma = diff.min_degree_in(0);
    MPoly q = diff.shifted({-sigma, 0});
    EigenResult r{lambda, sigma, q};
    bool q0 = false;
    for (auto &[ex, cx] : q.terms())
        if (ex[0] == 0) q0 = true;
    if (!q0) throw structural_error("eigen_check: q(0,t) vanishes");
    return r;
}

inline long crossing_dimension(long d)
{
    if (d < 2) throw usage_error("crossing_dimension: d must be at least 2");
    return d * d / 3;
}

// (rho13 rho24)^{d-2} (rho12 rho23 rho34 rho14)^{1-d} P(s, t).
inline Rat truncated_4pt_value(const MPoly &P, const PointConfig &c, int d)
{
    if (c.size() != 4) throw usage_error("truncated_4pt_value: need 4 points");
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j)
            if (c.rho(i, j) == 0) throw degenerate_error("truncated_4pt_value: vanishing interval");
    CrossRatios cr = cross_ratios(c);
    Rat ring = c.rho(0, 1) * c.rho(1, 2) * c.rho(2, 3) * c.rho(0, 3);
    return pow(c.rho(0, 2) * c.rho(1, 3), d - 2) * pow(ring, 1 - d) * P.eval({cr.s, cr.t});
}

} // namespace gci
