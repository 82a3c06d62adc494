#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "fourpoint.hpp"

namespace gci {

template <class T>
using Vec4T = std::array<T, 4>;

template <class T>
T zero_like(const T &x)
{
    return T(x * Rat(0));
}

// 2x2 matrix with Gaussian entries over T (Rat for numbers, MPoly for
// symbolic coordinates).
template <class T>
struct Quat {
    std::array<std::array<Gauss<T>, 2>, 2> m;

    friend Quat operator*(const Quat &a, const Quat &b)
    {
        Quat r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j];
        return r;
    }
    friend Quat operator+(const Quat &a, const Quat &b)
    {
        Quat r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
        return r;
    }
    friend bool operator==(const Quat &a, const Quat &b) { return a.m == b.m; }

    Gauss<T> trace() const { return m[0][0] + m[1][1]; }
};

// slash(z) = z4 + z.Q, slash+(z) = z4 - z.Q, with
// z.Q = -i [[z3, z1 - i z2], [z1 + i z2, -z3]].
template <class T>
Quat<T> slash_t(const Vec4T<T> &z, bool conjugate)
{
    const T &z1 = z[0], &z2 = z[1], &z3 = z[2], &z4 = z[3];
    const T zero = zero_like(z1);
    // z.Q entries written out: (-i z3, -i z1 - z2; -i z1 + z2, i z3).
    Gauss<T> q00(zero, -z3), q01(-z2, -z1), q10(z2, -z1), q11(zero, z3);
    if (conjugate) {
        q00 = -q00;
        q01 = -q01;
        q10 = -q10;
        q11 = -q11;
    }
    Quat<T> r;
    r.m[0][0] = Gauss<T>(z4, zero) + q00;
    r.m[0][1] = q01;
    r.m[1][0] = q10;
    r.m[1][1] = Gauss<T>(z4, zero) + q11;
    return r;
}

inline Quat<Rat> slash(const Vec4 &z, bool conjugate) { return slash_t<Rat>(z, conjugate); }

inline Quat<Rat> quat_identity()
{
    Quat<Rat> r;
    r.m[0][0] = GaussRat(1);
    r.m[1][1] = GaussRat(1);
    r.m[0][1] = r.m[1][0] = GaussRat(0);
    return r;
}

template <class T>
T dot_t(const Vec4T<T> &a, const Vec4T<T> &b)
{
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Determinant of the 4x4 matrix with columns a, b, c, d.
template <class T>
T det4_t(const Vec4T<T> &a, const Vec4T<T> &b, const Vec4T<T> &c, const Vec4T<T> &d)
{
    std::array<int, 4> p{0, 1, 2, 3};
    T acc = zero_like(a[0]);
    do {
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] > p[j]) ++inv;
        T term = a[p[0]] * b[p[1]] * c[p[2]] * d[p[3]];
        acc = inv % 2 ? T(acc - term) : T(acc + term);
    } while (std::next_permutation(p.begin(), p.end()));
    return acc;
}

inline Rat det4(const Vec4 &a, const Vec4 &b, const Vec4 &c, const Vec4 &d) { return det4_t<Rat>(a, b, c, d); }

// tr(a b+ c d+) = 2[(ab)(cd) - (ac)(bd) + (ad)(bc) + det(a,b,c,d)].
template <class T>
bool trace4_identity_holds(const Vec4T<T> &a, const Vec4T<T> &b, const Vec4T<T> &c, const Vec4T<T> &d)
{
    Gauss<T> lhs = (slash_t(a, false) * slash_t(b, true) * slash_t(c, false) * slash_t(d, true)).trace();
    T rhs = (dot_t(a, b) * dot_t(c, d) - dot_t(a, c) * dot_t(b, d) + dot_t(a, d) * dot_t(b, c) + det4_t(a, b, c, d)) * Rat(2);
    return lhs.re == rhs && lhs.im == zero_like(rhs);
}

inline bool trace4_identity_check(const Vec4 &a, const Vec4 &b, const Vec4 &c, const Vec4 &d)
{
    return trace4_identity_holds<Rat>(a, b, c, d);
}

template <class T>
Vec4T<T> diff_t(const Vec4T<T> &a, const Vec4T<T> &b)
{
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

// Symmetric two-orientation trace over the alternating cycle c:
// tr(slash z_{c1c2} X) + tr(slash z_{c1c2} X^rev),
// X = slash+ z_{c2c3} slash z_{c3c4} ... slash+ z_{c1,c2n}.
template <class T>
Gauss<T> cycle_trace_t(const std::vector<Vec4T<T>> &pts, const std::vector<int> &c)
{
    const std::size_t m = c.size();
    if (m < 4 || m % 2) throw usage_error("cycle_trace: cycle must have an even length >= 4");
    std::vector<Quat<T>> f;
    for (std::size_t k = 1; k + 1 < m; ++k) f.push_back(slash_t(diff_t(pts[c[k]], pts[c[k + 1]]), k % 2 == 1));
    f.push_back(slash_t(diff_t(pts[c[0]], pts[c[m - 1]]), true));
    Quat<T> X = f.front(), Y = f.back();
    for (std::size_t k = 1; k < f.size(); ++k) X = X * f[k];
    for (std::size_t k = f.size() - 1; k-- > 0;) Y = Y * f[k];
    Quat<T> A = slash_t(diff_t(pts[c[0]], pts[c[1]]), false);
    return (A * X).trace() + (A * Y).trace();
}

inline void check_cycle(const PointConfig &cfg, const std::vector<int> &c)
{
    std::vector<int> sorted = c;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != static_cast<int>(i)) throw usage_error("cycle must be a permutation of the point indices");
    if (sorted.size() != cfg.size()) throw usage_error("cycle length differs from the number of points");
}

inline Rat cycle_trace_2n(const PointConfig &cfg, const std::vector<int> &c)
{
    check_cycle(cfg, c);
    GaussRat v = cycle_trace_t<Rat>(cfg.points, c);
    if (v.im != 0) throw structural_error("cycle_trace_2n: imaginary part does not cancel");
    return v.re;
}

// Pole pairs of a cycle: (c2,c3), (c4,c5), ..., (c2n,c1).
inline std::vector<std::pair<int, int>> pole_pairs(const std::vector<int> &c)
{
    std::vector<std::pair<int, int>> p;
    const std::size_t m = c.size();
    for (std::size_t k = 1; k < m; k += 2) p.emplace_back(c[k], c[(k + 1) % m]);
    return p;
}

// Trace numerator over the squared pole intervals.
inline Rat elementary_value(const PointConfig &cfg, const std::vector<int> &c)
{
    Rat den = 1;
    for (auto [a, b] : pole_pairs(c)) {
        Rat r = cfg.rho(a, b);
        if (r == 0) throw degenerate_error("elementary contribution: vanishing pole interval");
        den *= r * r;
    }
    return cycle_trace_2n(cfg, c) / den;
}

// Interval variables rho_ij (i < j) of m points as MPoly variables.
struct RhoVars {
    int m = 0;
    int count() const { return m * (m - 1) / 2; }
    int index(int i, int j) const
    {
        if (i == j || i < 0 || j < 0 || i >= m || j >= m) throw usage_error("RhoVars: bad pair");
        if (i > j) std::swap(i, j);
        return i * m - i * (i + 1) / 2 + (j - i - 1);
    }
    MPoly var(int i, int j) const { return MPoly::var(count(), index(i, j)); }
    std::vector<Rat> values(const PointConfig &c) const
    {
        std::vector<Rat> v(static_cast<std::size_t>(count()));
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j) v[static_cast<std::size_t>(index(i, j))] = c.rho(i, j);
        return v;
    }
    std::string name(int idx) const
    {
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (index(i, j) == idx) return "r" + std::to_string(i + 1) + std::to_string(j + 1);
        return "?";
    }
    std::vector<std::string> names() const
    {
        std::vector<std::string> n;
        for (int k = 0; k < count(); ++k) n.push_back(name(k));
        return n;
    }
};

// All perfect matchings of {0..m-1}, first element of each pair smaller,
// pairs sorted by first element (lexicographic order).
inline std::vector<std::vector<std::pair<int, int>>> perfect_matchings(int m)
{
    std::vector<std::vector<std::pair<int, int>>> out;
    std::vector<std::pair<int, int>> cur;
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    std::function<void()> rec = [&]() {
        int a = -1;
        for (int i = 0; i < m; ++i)
            if (!used[static_cast<std::size_t>(i)]) {
                a = i;
                break;
            }
        if (a < 0) {
            out.push_back(cur);
            return;
        }
        used[static_cast<std::size_t>(a)] = true;
        for (int b = a + 1; b < m; ++b) {
            if (used[static_cast<std::size_t>(b)]) continue;
            used[static_cast<std::size_t>(b)] = true;
            cur.emplace_back(a, b);
            rec();
            cur.pop_back();
            used[static_cast<std::size_t>(b)] = false;
        }
        used[static_cast<std::size_t>(a)] = false;
    };
    if (m % 2 == 0) rec();
    return out;
}

inline int crossing_parity(const std::vector<std::pair<int, int>> &pairs)
{
    int c = 0;
    for (auto [a, b] : pairs)
        for (auto [x, y] : pairs)
            if (a < x && x < b && b < y) ++c;
    return c % 2 ? -1 : 1;
}

// Sum over perfect pairings of the positions of `ordering`, signed by the
// crossing parity relative to that ordering, of the product of rho's.
inline MPoly signed_pairing_sum(int n, const std::vector<int> &ordering)
{
    if (n < 1 || static_cast<int>(ordering.size()) != 2 * n) throw usage_error("signed_pairing_sum: ordering must have 2n entries");
    RhoVars rv{2 * n};
    MPoly sum(rv.count());
    for (auto &pm : perfect_matchings(2 * n)) {
        MPoly term = MPoly::constant(rv.count(), crossing_parity(pm));
        for (auto [a, b] : pm) term *= rv.var(ordering[static_cast<std::size_t>(a)], ordering[static_cast<std::size_t>(b)]);
        sum += term;
    }
    return sum;
}

inline MPoly wick_numerator(int n, const std::vector<int> &ordering, const Rat &c_n)
{
    if (n < 2) throw usage_error("wick_numerator: n must be at least 2");
    return signed_pairing_sum(n, ordering) * c_n;
}

inline std::vector<int> identity_cycle(int n)
{
    std::vector<int> c(static_cast<std::size_t>(2 * n));
    std::iota(c.begin(), c.end(), 0);
    return c;
}

// c_n = trace numerator / signed pairing sum, fitted at the first
// configuration and required to agree at all others.
inline Rat fit_wick_normalization(int n, const std::vector<PointConfig> &configs)
{
    if (configs.empty()) throw usage_error("fit_wick_normalization: no configurations");
    const auto cyc = identity_cycle(n);
    const MPoly w = signed_pairing_sum(n, cyc);
    RhoVars rv{2 * n};
    std::optional<Rat> c;
    for (const auto &cfg : configs) {
        Rat den = w.eval(rv.values(cfg));
        Rat num = cycle_trace_2n(cfg, cyc);
        if (den == 0) {
            if (num != 0) throw structural_error("fit_wick_normalization: trace nonzero where pairing sum vanishes");
            continue;
        }
        Rat ratio = num / den;
        if (!c) c = ratio;
        else if (*c != ratio) throw structural_error("fit_wick_normalization: ratio not constant across configurations");
    }
    if (!c) throw structural_error("fit_wick_normalization: pairing sum vanished everywhere");
    return *c;
}

// m generic points with coordinate variables x_{4i+k}.
inline std::vector<Vec4T<MPoly>> symbolic_points(int m)
{
    std::vector<Vec4T<MPoly>> z(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < 4; ++k) z[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = MPoly::var(4 * m, 4 * i + k);
    return z;
}

// Substitutes rho_ij = (z_i - z_j)^2 in coordinate variables.
inline MPoly rho_in_coordinates(const MPoly &p, int m)
{
    RhoVars rv{m};
    auto z = symbolic_points(m);
    std::vector<MPoly> subs(static_cast<std::size_t>(rv.count()));
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            auto d = diff_t(z[static_cast<std::size_t>(i)], z[static_cast<std::size_t>(j)]);
            subs[static_cast<std::size_t>(rv.index(i, j))] = dot_t(d, d);
        }
    return p.compose(subs);
}

// Trace numerator of a cycle as a polynomial in coordinates; throws if the
// imaginary part survives.
inline MPoly cycle_trace_symbolic(const std::vector<int> &c)
{
    auto z = symbolic_points(static_cast<int>(c.size()));
    Gauss<MPoly> v = cycle_trace_t<MPoly>(z, c);
    if (!v.im.is_zero()) throw structural_error("cycle_trace_symbolic: imaginary part does not cancel");
    return v.re;
}

struct ElementaryTerm {
    int n = 0;
    std::vector<int> cycle;
    MPoly numerator; // signed pairing sum in rho variables (before c_n)
    std::vector<std::pair<int, int>> pole_pairs;
};

// Cyclic pole structures for n bilocal slots (2k, 2k+1): one
// representative per class modulo rotation and reversal, with slot 0 first
// in orientation (0, 1). Size 2^{n-1} (n-1)!.
inline std::vector<ElementaryTerm> orbit_enumerate(int n, bool with_numerators = true)
{
    if (n < 2) throw usage_error("orbit_enumerate: n must be at least 2");
    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    std::iota(rest.begin(), rest.end(), 1);
    std::vector<ElementaryTerm> out;
    do {
        for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
            ElementaryTerm e;
            e.n = n;
            e.cycle = {0, 1};
            for (int k = 0; k < n - 1; ++k) {
                int slot = rest[static_cast<std::size_t>(k)];
                if (mask >> k & 1u) {
                    e.cycle.push_back(2 * slot + 1);
                    e.cycle.push_back(2 * slot);
                } else {
                    e.cycle.push_back(2 * slot);
                    e.cycle.push_back(2 * slot + 1);
                }
            }
            e.pole_pairs = pole_pairs(e.cycle);
            if (with_numerators) e.numerator = signed_pairing_sum(n, e.cycle);
            out.push_back(std::move(e));
        }
    } while (std::next_permutation(rest.begin(), rest.end()));
    return out;
}

// Connected 2n-point function of the Weyl bilocal (normalized so that the
// slot propagator carries unit weight): sum of elementary contributions
// over the orbit of pole structures.
inline Rat v1_weyl_npoint(const PointConfig &cfg)
{
    if (cfg.size() < 4 || cfg.size() % 2) throw usage_error("v1_weyl_npoint: need 2n >= 4 points");
    Rat sum = 0;
    for (auto &e : orbit_enumerate(static_cast<int>(cfg.size() / 2), false)) sum += elementary_value(cfg, e.cycle);
    return sum;
}

// The two-trace 4-point combination with the spinor trace normalized away
// (divided by 2): equals j_1(s,t)/(rho13 rho24).
inline Rat v1_weyl_4pt(const PointConfig &cfg)
{
    if (cfg.size() != 4) throw usage_error("v1_weyl_4pt: need 4 points");
    for (auto [a, b] : std::vector<std::pair<int, int>>{{0, 3}, {1, 2}, {0, 2}, {1, 3}})
        if (cfg.rho(a, b) == 0) throw degenerate_error("v1_weyl_4pt: vanishing interval");
    return v1_weyl_npoint(cfg) / 2;
}

// Connected 2n-point function of the scalar bilocal :phi(z1) phi(z2):
// one-loop cycles with propagator 1/rho.
inline Rat v1_scalar_npoint(const PointConfig &cfg)
{
    if (cfg.size() < 4 || cfg.size() % 2) throw usage_error("v1_scalar_npoint: need 2n >= 4 points");
    Rat sum = 0;
    for (auto &e : orbit_enumerate(static_cast<int>(cfg.size() / 2), false)) {
        Rat den = 1;
        for (auto [a, b] : e.pole_pairs) den *= cfg.rho(a, b);
        if (den == 0) throw degenerate_error("v1_scalar_npoint: vanishing propagator interval");
        sum += 1 / den;
    }
    return sum;
}

// Set partitions of {0..n-1} (blocks in increasing order of first element).
inline std::vector<std::vector<std::vector<int>>> set_partitions(int n)
{
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> cur;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (std::size_t k = 0; k < cur.size(); ++k) {
            cur[k].push_back(i);
            rec(i + 1);
            cur[k].pop_back();
        }
        cur.push_back({i});
        rec(i + 1);
        cur.pop_back();
    };
    rec(0);
    return out;
}

inline PointConfig slots_config(const PointConfig &cfg, const std::vector<int> &slots)
{
    PointConfig c;
    for (int s : slots) {
        c.points.push_back(cfg[static_cast<std::size_t>(2 * s)]);
        c.points.push_back(cfg[static_cast<std::size_t>(2 * s + 1)]);
    }
    return c;
}

using Evaluator = std::function<Rat(const PointConfig &)>;

// Full vacuum expectation of n normal-ordered bilocals from the connected
// parts: sum over partitions of the slots into blocks of size >= 2.
inline Rat bilocal_full(const PointConfig &cfg, const Evaluator &connected)
{
    const int n = static_cast<int>(cfg.size() / 2);
    Rat sum = 0;
    for (auto &part : set_partitions(n)) {
        bool ok = std::all_of(part.begin(), part.end(), [](auto &b) { return b.size() >= 2; });
        if (!ok) continue;
        Rat prod = 1;
        for (auto &b : part) prod *= connected(slots_config(cfg, b));
        sum += prod;
    }
    return sum;
}

namespace detail {
// Visits every directed Hamiltonian cycle through 0 as a sequence of vertices.
template <class F>
void for_each_cycle_sequence(int m, F &&f)
{
    std::vector<int> seq(static_cast<std::size_t>(m));
    std::iota(seq.begin(), seq.end(), 0);
    do {
        f(seq);
    } while (std::next_permutation(seq.begin() + 1, seq.end()));
}
} // namespace detail

// Connected 2n-point function of the scalar composite :phi varphi: with
// real fields of dimension 1 and 3: alternating 1/rho and 1/rho^3 loops.
inline Rat lagrangian_scalar_npoint(const PointConfig &cfg)
{
    const int m = static_cast<int>(cfg.size());
    if (m < 2 || m % 2) throw usage_error("lagrangian_scalar_npoint: need an even number of points");
    Rat sum = 0;
    detail::for_each_cycle_sequence(m, [&](const std::vector<int> &seq) {
        for (int alt = 0; alt < 2; ++alt) {
            Rat den = 1;
            for (int k = 0; k < m; ++k) {
                Rat r = cfg.rho(seq[k], seq[(k + 1) % m]);
                den *= (k % 2 == alt) ? r : Rat(r * r * r);
            }
            if (den == 0) throw degenerate_error("lagrangian_scalar_npoint: vanishing interval");
            sum += 1 / den;
        }
    });
    return sum / 2;
}

// Connected 2n-point function of psi+ chi + chi+ psi (Weyl field of
// dimension 3/2, partner of dimension 5/2): alternating fermion loops with
// propagators slash+/rho^2 and slash/rho^3, one minus sign per loop.
inline Rat lagrangian_weyl_npoint(const PointConfig &cfg)
{
    const int m = static_cast<int>(cfg.size());
    if (m < 2 || m % 2) throw usage_error("lagrangian_weyl_npoint: need an even number of points");
    GaussRat sum(0);
    detail::for_each_cycle_sequence(m, [&](const std::vector<int> &seq) {
        for (int alt = 0; alt < 2; ++alt) {
            Quat<Rat> M = quat_identity();
            Rat den = 1;
            for (int k = 0; k < m; ++k) {
                int a = seq[k], b = seq[(k + 1) % m];
                bool heavy = (k % 2 == 0) == (alt == 0);
                M = M * slash(cfg[a] - cfg[b], !heavy);
                Rat r = cfg.rho(a, b);
                den *= heavy ? Rat(r * r * r) : Rat(r * r);
            }
            if (den == 0) throw degenerate_error("lagrangian_weyl_npoint: vanishing interval");
            GaussRat tr = M.trace();
            sum += GaussRat(tr.re / den, tr.im / den);
        }
    });
    if (sum.im != 0) throw structural_error("lagrangian_weyl_npoint: imaginary part does not cancel");
    return -sum.re;
}

// 2 z12.z23 = rho13 - rho12 - rho23 and 2 z12.z34 = rho14 + rho23 - rho13 - rho24.
template <class T>
bool interval_identities_hold(const std::vector<Vec4T<T>> &z)
{
    if (z.size() != 4) throw usage_error("interval_identities: need 4 points");
    auto rho = [&](int i, int j) {
        auto d = diff_t(z[i], z[j]);
        return dot_t(d, d);
    };
    auto zz = [&](int i, int j) { return diff_t(z[i], z[j]); };
    T l1 = dot_t(zz(0, 1), zz(1, 2)) * Rat(2);
    T r1 = rho(0, 2) - rho(0, 1) - rho(1, 2);
    T l2 = dot_t(zz(0, 1), zz(2, 3)) * Rat(2);
    T r2 = rho(0, 3) + rho(1, 2) - rho(0, 2) - rho(1, 3);
    return l1 == r1 && l2 == r2;
}

inline bool interval_identities(const PointConfig &cfg) { return interval_identities_hold<Rat>(cfg.points); }

} // namespace gci
