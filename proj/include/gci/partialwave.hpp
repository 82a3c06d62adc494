#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fourpoint.hpp"
#include "series.hpp"

namespace gci {

// Gauss 2F1(a, b; c; x) through x^N. F(0,0;0;x) = 1: a term whose
// numerator Pochhammer product vanishes is zero even when (c)_n does.
inline Series1 hypergeom_series(long a, long b, long c, int N)
{
    Series1 out(N);
    Rat term = 1;
    out[0] = 1;
    for (int n = 1; n <= N; ++n) {
        Rat num = Rat(a + n - 1) * Rat(b + n - 1);
        Rat den = Rat(c + n - 1) * n;
        if (num == 0) break;
        if (den == 0) throw pole_error("hypergeom_series: c is a nonpositive integer and the series does not terminate");
        term = term * num / den;
        out[n] = term;
    }
    return out;
}

// t^{-3} P4(s,t) + B^2 s^4 (1 + t^{-4}) as a function of (s, t).
inline RatFn lhs_function(const PWParams &p)
{
    const RatFn s = st_s(), t = st_t();
    RatFn f = RatFn(assemble_P4(p)) * t.pow(-3);
    if (p.B != 0) f += s.pow(4) * (RatFn::constant(2, 1) + t.pow(-4)) * (p.B * p.B);
    return f;
}

inline Series2 lhs_series(const PWParams &p, int N) { return expand_to_chiral(lhs_function(p), N); }

struct TwistLevel {
    int kappa = 0;
    Series1 g;              // g_kappa(u), g(0) = 0
    Series2 f;              // f_kappa(u, v)
    std::size_t checked = 0; // remainder coefficients verified to vanish
};

struct TwistTower {
    int max_twist = 0;
    int order = 0;
    std::vector<TwistLevel> levels;
    Series2 remainder; // LHS minus all extracted s^{k-1} f_k
};

// Peels off s^{k-1} f_k for k = 1..K from the chiral expansion of the
// left-hand side. Each f_k is rebuilt from its restriction to v = 0 via
// f_k = [F_k(v) g_k(u) - F_k(u) g_k(v)]/(u - v), F_k = F(k-1,k-1;2k-2).
inline TwistTower twist_extract_series(const Series2 &lhs, int K)
{
    const int N = lhs.order();
    if (K < 1) throw usage_error("twist_extract: max twist must be at least 1");
    if (N < 2 * K + 4) throw usage_error("twist_extract: series order too small for the requested twist");
    TwistTower tower;
    tower.max_twist = K;
    tower.order = N;
    Series2 R = lhs;
    for (int k = 1; k <= K; ++k) {
        TwistLevel lvl;
        lvl.kappa = k;
        Series1 row = R.v_coefficient(k - 1);
        for (int i = 0; i < k - 1; ++i)
            if (row[i] != 0) throw inconsistency_error("twist_extract: remainder does not vanish below s^" + std::to_string(k - 1));
        Series1 h = row.shift_down(k - 1);      // f_k(0, 1-u), order N-2k+2
        lvl.g = h.shift_up(1);                  // order N-2k+3
        const int og = lvl.g.order();
        Series1 F = hypergeom_series(k - 1, k - 1, 2 * k - 2, og);
        Series2 A = Series2::outer(lvl.g, F, og) - Series2::outer(F, lvl.g, og);
        lvl.f = series2_div_antisym(A);         // order N-2k+2
        R = R - lvl.f.shift_up(k - 1, k - 1);   // order N
        for (int d = 0; d <= N; ++d)
            for (int i = 0; i <= d; ++i) {
                int j = d - i;
                if (std::min(i, j) <= k - 1) {
                    ++lvl.checked;
                    if (R.coeff(i, j) != 0)
                        throw inconsistency_error("twist_extract: lower-order remainder after twist " + std::to_string(k) +
                                                  " is nonzero");
                }
            }
        tower.levels.push_back(std::move(lvl));
    }
    tower.remainder = R;
    return tower;
}

inline TwistTower twist_extract(const PWParams &p, int K, int N)
{
    if (N < 2 * K + 4) throw usage_error("twist_extract: series order too small for the requested twist");
    return twist_extract_series(lhs_series(p, N), K);
}

inline int default_series_order(int K, int L) { return 2 * L + 2 * K + 8; }

// f_1 = (g(u) - g(v))/(u - v), g(x) = x (1-x)^{-3} P4(0, 1-x), rewritten in (s, t).
inline RatFn f1_rational(const PWParams &p)
{
    const MPoly P = assemble_P4(p);
    const MPoly u = MPoly::var(2, 0), v = MPoly::var(2, 1), one = MPoly::constant(2, 1), zero(2);
    const MPoly nu = P.compose({zero, one - u});
    const MPoly nv = P.compose({zero, one - v});
    const MPoly A = u * nu * (one - v).pow(3) - v * nv * (one - u).pow(3);
    auto q = A.divide_exact(u - v);
    if (!q) throw structural_error("f1_rational: numerator not divisible by u - v");
    const MPoly e = symmetric_reduce(*q);
    const MPoly s = MPoly::var(2, 0), t = MPoly::var(2, 1);
    const MPoly in_st = e.compose({one + s - t, s});
    return RatFn(in_st, t.pow(3));
}

// s f_ss + t f_tt + (s+t-1) f_st + 2 (f_s + f_t).
inline RatFn laplace_st(const RatFn &f)
{
    const RatFn s = st_s(), t = st_t(), one = RatFn::constant(2, 1);
    const RatFn fs = f.derivative(0), ft = f.derivative(1);
    return s * fs.derivative(0) + t * ft.derivative(1) + (s + t - one) * fs.derivative(1) +
           RatFn::constant(2, 2) * (fs + ft);
}

// Solves g(u) = u sum_l B_l u^{2l} F(2l+k, 2l+k; 4l+2k; u) for l <= L by
// forward substitution; coefficients not used to fix some B_l must be
// reproduced.
inline std::vector<Rat> solve_structure_constants(const Series1 &g, int kappa, int L)
{
    if (kappa < 1 || L < 0) throw usage_error("solve_structure_constants: need kappa >= 1, L >= 0");
    if (g.order() < 2 * L + 2) throw usage_error("solve_structure_constants: series order too small for L");
    if (g[0] != 0) throw structural_error("solve_structure_constants: g(0) != 0");
    Series1 r = g.shift_down(1);
    const int n = r.order();
    std::vector<Rat> B;
    for (int l = 0; l <= L; ++l) {
        Rat b = r[2 * l];
        B.push_back(b);
        if (b != 0) {
            Series1 wave = hypergeom_series(2 * l + kappa, 2 * l + kappa, 4 * l + 2 * kappa, n).shift_up(2 * l).truncated(n);
            r = r - wave * b;
        }
        if (r[2 * l + 1] != 0)
            throw structural_error("solve_structure_constants: odd coefficient u^" + std::to_string(2 * l + 1) +
                                   " not reproduced for twist " + std::to_string(kappa));
    }
    return B;
}

inline Rat closed_form_B(int kappa, long l, const PWParams &p)
{
    if (l < 0) throw usage_error("closed_form_B: l must be nonnegative");
    const Rat L(l);
    switch (kappa) {
    case 1:
        return (2 * p.a0 + 2 * L * (2 * L + 1) * (2 * p.a1 + (2 * L - 1) * (L + 1) * p.a2)) / Rat(binomial(4 * l, 2 * l));
    case 2:
        return (L * (2 * L + 3) * ((L + 1) * (2 * L + 1) * p.a1 + 2 * p.b) + p.c) / Rat(binomial(4 * l + 1, 2 * l));
    case 3:
        return ((L + 1) * (2 * L + 3) * ((L + 2) * (2 * L + 1) * (2 * p.a0 + p.a1) - 6 * p.b + 4 * p.c) - p.c) /
               (2 * Rat(binomial(4 * l + 3, 2 * l + 1)));
    }
    throw usage_error("closed_form_B: closed forms exist only for kappa = 1, 2, 3");
}

struct Condition {
    std::string name;
    bool holds = false;
};

struct SolverB {
    int kappa = 0;
    int l = 0;
    Rat value;
};

struct PositivityReport {
    std::vector<Condition> necessary;       // a_nu >= 0, 3a1+b >= 0, c >= 0, 6(2a0+a1-3b)+11c >= 0
    bool necessary_ok = true;
    bool scan_ok = true;                     // closed forms nonnegative for kappa <= 3, l <= L_scan
    std::optional<SolverB> first_negative;   // first negative closed-form value
    std::vector<SolverB> solver_high;        // solver values for kappa >= 4 (reported only)
    bool gauge = false;                      // a0 = c = 0
    std::vector<Condition> gauge_box;        // a1 >= 0, a2 >= 0, a1+a2 > 0, -3a1 <= b <= a1/3
    bool trivial = false;                    // gauge case with a1 + a2 > 0 violated
    bool admissible = false;
    std::string first_violation;             // empty when admissible

    std::string verdict() const
    {
        if (!admissible) return "rejected";
        return trivial ? "trivial" : "admissible";
    }
};

inline PositivityReport positivity_check(const PWParams &p, int L_scan, int K = 3)
{
    PositivityReport r;
    r.necessary = {{"a0>=0", p.a0 >= 0},
                   {"a1>=0", p.a1 >= 0},
                   {"a2>=0", p.a2 >= 0},
                   {"3a1+b>=0", 3 * p.a1 + p.b >= 0},
                   {"c>=0", p.c >= 0},
                   {"6(2a0+a1-3b)+11c>=0", 6 * (2 * p.a0 + p.a1 - 3 * p.b) + 11 * p.c >= 0}};
    for (auto &c : r.necessary)
        if (!c.holds) {
            r.necessary_ok = false;
            if (r.first_violation.empty()) r.first_violation = c.name;
        }
    for (int k = 1; k <= 3 && r.scan_ok; ++k)
        for (int l = 0; l <= L_scan; ++l) {
            Rat b = closed_form_B(k, l, p);
            if (b < 0) {
                r.scan_ok = false;
                r.first_negative = SolverB{k, l, b};
                if (r.first_violation.empty()) r.first_violation = "B" + std::to_string(k) + "," + std::to_string(l) + ">=0";
                break;
            }
        }
    if (K >= 4) {
        int L = 2;
        TwistTower tw = twist_extract(p, K, default_series_order(K, L));
        for (int k = 4; k <= K; ++k) {
            auto Bs = solve_structure_constants(tw.levels[k - 1].g, k, L);
            for (int l = 0; l <= L; ++l) r.solver_high.push_back({k, l, Bs[l]});
        }
    }
    r.gauge = p.a0 == 0 && p.c == 0;
    if (r.gauge) {
        r.gauge_box = {{"a1>=0", p.a1 >= 0},
                       {"a2>=0", p.a2 >= 0},
                       {"a1+a2>0", p.a1 + p.a2 > 0},
                       {"-3a1<=b", -3 * p.a1 <= p.b},
                       {"b<=a1/3", p.b <= p.a1 / 3}};
        r.trivial = !(p.a1 + p.a2 > 0);
    }
    r.admissible = r.necessary_ok && r.scan_ok;
    return r;
}

// Coefficient of t1^m t2^n in the Taylor expansion of the OPE kernel.
inline Rat kernel_coeff(long kappa, long l, long m, long n)
{
    if (kappa < 1 || l < 0 || m < 0 || n < 0) throw usage_error("kernel_coeff: need kappa >= 1 and l, m, n >= 0");
    const long a = l + kappa;
    Rat v = beta_int(a + n + m, a + n) / (beta_int(a, a) * Rat(factorial(m)) * Rat(factorial(n)) *
                                          pow(Rat(4), n) * pochhammer(Rat(2 * l + 2 * kappa - 1), n));
    return n % 2 ? Rat(-v) : v;
}

} // namespace gci
