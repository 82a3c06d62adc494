#pragma once

#include <cmath>
#include <vector>

#include "freefield.hpp"

namespace gci {

// Pairs (i1,i2),...,(i_{2n-1},i_{2n}) over {0..2n-1}, i1 = 0, each pair
// increasing, first elements increasing.
struct PairingPattern {
    std::vector<std::pair<int, int>> pairs;

    std::vector<int> flat() const
    {
        std::vector<int> f;
        for (auto [a, b] : pairs) {
            f.push_back(a);
            f.push_back(b);
        }
        return f;
    }
    std::string str() const
    {
        std::string s;
        for (auto [a, b] : pairs) s += "(" + std::to_string(a + 1) + std::to_string(b + 1) + ")";
        return s;
    }
    friend bool operator==(const PairingPattern &, const PairingPattern &) = default;
};

inline std::vector<PairingPattern> enumerate_patterns(int n)
{
    if (n < 1) throw usage_error("enumerate_patterns: n must be at least 1");
    std::vector<PairingPattern> out;
    for (auto &pm : perfect_matchings(2 * n)) out.push_back({pm});
    return out;
}

inline Rat double_factorial_odd(int n)
{
    Rat r = 1;
    for (int k = 2 * n - 1; k > 1; k -= 2) r *= k;
    return r;
}

// w1 at the points taken in the given order: prod rho_{2i-1,2i}^{-3}
// times the full bilocal correlator.
inline Rat w1_value(const Evaluator &v1_full, const PointConfig &cfg)
{
    Rat pre = 1;
    for (std::size_t i = 0; i + 1 < cfg.size(); i += 2) {
        Rat r = cfg.rho(i, i + 1);
        if (r == 0) throw degenerate_error("w1: vanishing bilocal interval");
        pre *= r * r * r;
    }
    return v1_full(cfg) / pre;
}

namespace detail {
inline Rat w1_truncated_slots(const Evaluator &v1_full, const PointConfig &cfg, const std::vector<int> &slots,
                              std::map<std::vector<int>, Rat> &memo)
{
    if (slots.size() < 2) return 0;
    if (auto it = memo.find(slots); it != memo.end()) return it->second;
    Rat full = w1_value(v1_full, slots_config(cfg, slots));
    Rat r = full;
    if (slots.size() >= 4) {
        for (auto &part : set_partitions(static_cast<int>(slots.size()))) {
            if (part.size() < 2) continue;
            if (std::any_of(part.begin(), part.end(), [](auto &b) { return b.size() < 2; })) continue;
            Rat prod = 1;
            for (auto &b : part) {
                std::vector<int> sub;
                for (int k : b) sub.push_back(slots[static_cast<std::size_t>(k)]);
                prod *= w1_truncated_slots(v1_full, cfg, sub, memo);
            }
            r -= prod;
        }
    }
    memo[slots] = r;
    return r;
}
} // namespace detail

// Truncated bilocal 2n-point function: the full w1 minus all products over
// partitions of the bilocal slots into >= 2 blocks (singletons vanish).
// For n < 4 no partition survives; for n = 4 these are the three products
// of 4-point functions.
inline Rat w1_truncated(int n, const Evaluator &v1_full, const PointConfig &cfg)
{
    if (n < 2) throw usage_error("w1_truncated: n must be at least 2");
    if (static_cast<int>(cfg.size()) != 2 * n) throw usage_error("w1_truncated: need 2n points");
    std::vector<int> slots(static_cast<std::size_t>(n));
    std::iota(slots.begin(), slots.end(), 0);
    std::map<std::vector<int>, Rat> memo;
    return detail::w1_truncated_slots(v1_full, cfg, slots, memo);
}

inline Rat symmetrized_wt(int n, const Rat &lambda, const Evaluator &v1_full, const PointConfig &cfg)
{
    if (n < 2) throw usage_error("symmetrized_wt: n must be at least 2");
    if (static_cast<int>(cfg.size()) != 2 * n) throw usage_error("symmetrized_wt: need 2n points");
    if (lambda == 0) return 0;
    Rat sum = 0;
    for (auto &p : enumerate_patterns(n)) sum += w1_truncated(n, v1_full, cfg.reordered(p.flat()));
    return lambda * sum;
}

// Exact ratio reference / symmetrized sum, required constant.
inline Rat fit_lambda(int n, const Evaluator &reference, const Evaluator &v1_full, const std::vector<PointConfig> &configs)
{
    if (configs.size() < 2) throw usage_error("fit_lambda: need at least 2 configurations");
    std::optional<Rat> lam;
    bool ref_nonzero = false;
    for (auto &c : configs) {
        Rat ref = reference(c);
        Rat sym = symmetrized_wt(n, 1, v1_full, c);
        if (ref != 0) ref_nonzero = true;
        if (sym == 0) {
            if (ref != 0) throw not_symmetrizable_error("fit_lambda: symmetrized sum vanishes where the reference does not");
            continue;
        }
        Rat r = ref / sym;
        if (!lam) lam = r;
        else if (*lam != r) throw not_symmetrizable_error("fit_lambda: ratio is not constant across configurations");
    }
    if (!ref_nonzero || !lam) throw usage_error("fit_lambda: reference vanishes at every configuration");
    if (*lam == 0) throw usage_error("fit_lambda: reference vanishes at every configuration");
    return *lam;
}

struct DecayReport {
    std::vector<Rat> epsilons;
    std::vector<Rat> values; // rho12^3 (wt - w1t) at each epsilon
    bool exact_zero = false;
    double exponent = 0;
    double tolerance = 0.1;
    bool pass = false;
};

// Moves z2 toward z1 along the first axis with rho12 = epsilon (epsilon
// must be a rational square) and fits the power law of
// rho12^3 (wt - w1t(12;34;...)) by least squares in log-log.
inline DecayReport twist2_consistency(int n, const Rat &lambda, const Evaluator &v1_full, const PointConfig &base,
                                      const std::vector<Rat> &eps, double tolerance = 0.1)
{
    if (eps.size() < 4) throw usage_error("twist2_consistency: need at least 4 epsilon values");
    if (static_cast<int>(base.size()) != 2 * n) throw usage_error("twist2_consistency: need 2n points");
    if (!base.nondegenerate()) throw degenerate_error("twist2_consistency: degenerate base configuration");
    DecayReport rep;
    rep.tolerance = tolerance;
    rep.epsilons = eps;
    for (auto &e : eps) {
        Rat root;
        if (e <= 0 || !rational_sqrt(e, root)) throw usage_error("twist2_consistency: epsilon must be a positive rational square");
        PointConfig c = base;
        c.points[1] = c.points[0];
        c.points[1][0] += root;
        if (!c.nondegenerate()) throw degenerate_error("twist2_consistency: configuration degenerates along the path");
        Rat wt = symmetrized_wt(n, lambda, v1_full, c);
        Rat w1 = w1_truncated(n, v1_full, c);
        rep.values.push_back(e * e * e * (wt - w1));
    }
    rep.exact_zero = std::all_of(rep.values.begin(), rep.values.end(), [](const Rat &v) { return v == 0; });
    if (rep.exact_zero) {
        rep.exponent = INFINITY;
        rep.pass = true;
        return rep;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t i = 0; i < eps.size(); ++i) {
        if (rep.values[i] == 0) continue;
        double x = std::log(eps[i].get_d());
        double y = std::log(std::fabs(rep.values[i].get_d()));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) throw structural_error("twist2_consistency: too few nonzero samples to fit");
    rep.exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    rep.pass = rep.exponent >= 1 - tolerance;
    return rep;
}

inline std::vector<Rat> geometric_epsilons(int count, long ratio = 4)
{
    std::vector<Rat> e;
    Rat x = 1;
    for (int i = 0; i < count; ++i) {
        x /= ratio;
        e.push_back(x);
    }
    return e;
}

// 4-point of the d = 4 Maxwell bilocal from the twist-2 basis function j2.
inline Rat v1_maxwell_4pt(const PointConfig &cfg)
{
    if (cfg.size() != 4) throw usage_error("v1_maxwell_4pt: need 4 points");
    CrossRatios cr = cross_ratios(cfg);
    return basis_j_small(2).eval({cr.s, cr.t}) / (cfg.rho(0, 2) * cfg.rho(1, 3));
}

} // namespace gci
