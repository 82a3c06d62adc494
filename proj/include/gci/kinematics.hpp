#pragma once

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "ratfn.hpp"

namespace gci {

using Vec4 = std::array<Rat, 4>;

inline Vec4 operator-(const Vec4 &a, const Vec4 &b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

inline Rat dot(const Vec4 &a, const Vec4 &b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// n points in R^4 with rational coordinates. Indices are 0-based.
struct PointConfig {
    std::vector<Vec4> points;

    std::size_t size() const { return points.size(); }
    const Vec4 &operator[](std::size_t i) const { return points[i]; }

    Rat rho(std::size_t i, std::size_t j) const
    {
        if (i >= size() || j >= size()) throw usage_error("squared_interval: index out of range");
        Vec4 d = points[i] - points[j];
        return dot(d, d);
    }

    bool nondegenerate() const
    {
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = i + 1; j < size(); ++j)
                if (rho(i, j) == 0) return false;
        return true;
    }

    // Points reordered: result[k] = points[order[k]].
    PointConfig reordered(const std::vector<int> &order) const
    {
        PointConfig c;
        for (int k : order) c.points.push_back(points.at(static_cast<std::size_t>(k)));
        return c;
    }
};

inline Rat squared_interval(const PointConfig &c, std::size_t i, std::size_t j) { return c.rho(i, j); }

struct CrossRatios {
    Rat s, t;
};

inline CrossRatios cross_ratios(const PointConfig &c)
{
    if (c.size() != 4) throw usage_error("cross_ratios: need exactly 4 points");
    Rat den = c.rho(0, 2) * c.rho(1, 3);
    if (den == 0) throw degenerate_error("cross_ratios: rho13 * rho24 vanishes");
    return {c.rho(0, 1) * c.rho(2, 3) / den, c.rho(0, 3) * c.rho(1, 2) / den};
}

// e1 = u+v = 1+s-t, e2 = uv = s. Explicit roots only when the
// discriminant is a rational square; u is the smaller root.
struct ChiralPair {
    Rat e1, e2, discriminant;
    std::optional<std::pair<Rat, Rat>> roots;
};

inline ChiralPair chiral_from_st(const Rat &s, const Rat &t)
{
    ChiralPair c;
    c.e1 = 1 + s - t;
    c.e2 = s;
    c.discriminant = c.e1 * c.e1 - 4 * c.e2;
    Rat r;
    if (rational_sqrt(c.discriminant, r)) c.roots = std::make_pair((c.e1 - r) / 2, (c.e1 + r) / 2);
    return c;
}

enum class S3Gen { s12, s23, s13 };

// Crossing action on f(s, t) with weight 2d-3:
//   s12 f = t^w f(s/t, 1/t),  s23 f = s^w f(1/s, t/s),  s13 f = f(t, s).
inline RatFn s3_action(S3Gen g, const RatFn &f, int d)
{
    if (d < 2) throw usage_error("s3_action: d must be at least 2");
    if (f.arity() != 2) throw usage_error("s3_action: expects a function of (s, t)");
    const long w = 2L * d - 3;
    const RatFn s = st_s(), t = st_t();
    switch (g) {
    case S3Gen::s12:
        return t.pow(w) * f.compose({s / t, t.pow(-1)});
    case S3Gen::s23:
        return s.pow(w) * f.compose({s.pow(-1), t / s});
    case S3Gen::s13:
        return f.compose({t, s});
    }
    throw usage_error("s3_action: unknown generator");
}

// Scale dimension d and spin labels (j1, j2), all half-integers.
struct SpinLabel {
    Rat d, j1, j2;

    bool valid() const
    {
        return is_integer(2 * d) && is_integer(2 * j1) && is_integer(2 * j2) && j1 >= 0 && j2 >= 0;
    }
    Rat N() const { return d + j1 + j2; }
};

struct Admissibility {
    bool admissible = false;
    // Some N_i equals zero; accepted, since the nonnegative reading of the
    // naturals is used.
    bool zero_boundary = false;
};

inline Admissibility gci_3pt_admissible(const std::array<SpinLabel, 3> &f)
{
    Admissibility out;
    Rat sumN = 0, sumd = 0;
    bool ok = true;
    for (const auto &l : f) {
        if (!l.valid()) throw usage_error("gci_3pt_admissible: labels must be half-integers with j >= 0");
        Rat N = l.N();
        if (!is_integer(N) || N < 0) ok = false;
        if (N == 0) out.zero_boundary = true;
        sumN += N;
        sumd += l.d;
    }
    out.admissible = ok && is_integer(sumN / 2) && is_integer(sumd);
    return out;
}

struct Locality {
    Int N;
    int epsilon;
};

inline Locality locality_exponent(const SpinLabel &l)
{
    if (!l.valid()) throw usage_error("locality_exponent: labels must be half-integers with j >= 0");
    Rat N = l.N();
    if (!is_integer(N) || N < 0) throw inadmissible_error("locality_exponent: d + j1 + j2 is not a nonnegative integer");
    Rat twice = 2 * (l.j1 + l.j2);
    return {N.get_num(), twice.get_num() % 2 == 0 ? 1 : -1};
}

// Dimension of homogeneous harmonic polynomials of degree m in D variables.
inline Int harmonic_dimension(long m, long D)
{
    if (m < 0 || D < 2) throw usage_error("harmonic_dimension: need m >= 0, D >= 2");
    return binomial(m + D - 1, D - 1) - binomial(m + D - 3, D - 1);
}

} // namespace gci
