#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "ratfn.hpp"

namespace gci {

// Univariate power series truncated after x^order.
class Series1 {
public:
    Series1() = default;
    explicit Series1(int order) : c_(check(order) + 1) {}
    Series1(int order, std::vector<Rat> coeffs) : c_(std::move(coeffs))
    {
        c_.resize(check(order) + 1);
    }

    static Series1 monomial(int order, int k, const Rat &c = 1)
    {
        Series1 s(order);
        if (k <= order) s.c_[k] = c;
        return s;
    }

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const Rat &operator[](int k) const { return c_[k]; }
    Rat &operator[](int k) { return c_[k]; }
    Rat at(int k) const { return k >= 0 && k <= order() ? c_[k] : Rat(0); }
    const std::vector<Rat> &coeffs() const { return c_; }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const Rat &x) { return x == 0; });
    }

    Series1 truncated(int order) const
    {
        Series1 r(order);
        for (int k = 0; k <= std::min(order, this->order()); ++k) r.c_[k] = c_[k];
        return r;
    }

    friend Series1 operator+(const Series1 &a, const Series1 &b)
    {
        int n = std::min(a.order(), b.order());
        Series1 r(n);
        for (int k = 0; k <= n; ++k) r.c_[k] = a.c_[k] + b.c_[k];
        return r;
    }
    friend Series1 operator-(const Series1 &a, const Series1 &b) { return a + b * Rat(-1); }
    friend Series1 operator*(Series1 a, const Rat &k)
    {
        for (auto &x : a.c_) x *= k;
        return a;
    }
    friend Series1 operator*(const Series1 &a, const Series1 &b)
    {
        int n = std::min(a.order(), b.order());
        Series1 r(n);
        for (int i = 0; i <= n; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return r;
    }

    Series1 inverse() const
    {
        if (c_[0] == 0) throw pole_error("Series1 inverse: zero constant term");
        int n = order();
        Series1 r(n);
        Rat inv0 = 1 / c_[0];
        r.c_[0] = inv0;
        for (int k = 1; k <= n; ++k) {
            Rat acc = 0;
            for (int j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
            r.c_[k] = -acc * inv0;
        }
        return r;
    }

    // x^k * this; the order grows by k.
    Series1 shift_up(int k) const
    {
        Series1 r(order() + k);
        for (int i = 0; i <= order(); ++i) r.c_[i + k] = c_[i];
        return r;
    }

    // this / x^k; requires the first k coefficients to vanish.
    Series1 shift_down(int k) const
    {
        for (int i = 0; i < k && i <= order(); ++i)
            if (c_[i] != 0) throw structural_error("Series1::shift_down: nonzero low coefficient");
        Series1 r(order() - k);
        for (int i = 0; i <= r.order(); ++i) r.c_[i] = c_[i + k];
        return r;
    }

    friend bool operator==(const Series1 &a, const Series1 &b) { return a.c_ == b.c_; }

private:
    static int check(int order)
    {
        if (order < 0) throw usage_error("series order must be nonnegative");
        return order;
    }
    std::vector<Rat> c_;
};

// Bivariate power series in (u, v) truncated at total degree `order`.
// Storage is dense and triangular.
class Series2 {
public:
    Series2() = default;
    explicit Series2(int order) : n_(order)
    {
        if (order < 0) throw usage_error("series order must be nonnegative");
        c_.resize(static_cast<std::size_t>((order + 1) * (order + 2) / 2));
    }

    static Series2 constant(int order, const Rat &c)
    {
        Series2 s(order);
        s.c_[0] = c;
        return s;
    }
    static Series2 monomial(int order, int i, int j, const Rat &c = 1)
    {
        Series2 s(order);
        if (i + j <= order) s.ref(i, j) = c;
        return s;
    }
    // a(u) * b(v).
    static Series2 outer(const Series1 &a, const Series1 &b, int order)
    {
        Series2 s(order);
        for (int i = 0; i <= std::min(order, a.order()); ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; i + j <= order && j <= b.order(); ++j) s.ref(i, j) = a[i] * b[j];
        }
        return s;
    }

    int order() const { return n_; }

    Rat coeff(int i, int j) const
    {
        if (i < 0 || j < 0 || i + j > n_) return 0;
        return c_[idx(i, j)];
    }
    Rat &ref(int i, int j)
    {
        if (i < 0 || j < 0 || i + j > n_) throw usage_error("Series2: exponent pair beyond truncation order");
        return c_[idx(i, j)];
    }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const Rat &x) { return x == 0; });
    }

    Series2 truncated(int order) const
    {
        Series2 r(order);
        for (int d = 0; d <= std::min(order, n_); ++d)
            for (int i = 0; i <= d; ++i) r.ref(i, d - i) = coeff(i, d - i);
        return r;
    }

    Series2 operator-() const { return *this * Rat(-1); }
    friend Series2 operator+(const Series2 &a, const Series2 &b)
    {
        int n = std::min(a.n_, b.n_);
        Series2 r = a.n_ == n ? a : a.truncated(n);
        for (int d = 0; d <= n; ++d)
            for (int i = 0; i <= d; ++i) r.ref(i, d - i) += b.coeff(i, d - i);
        return r;
    }
    friend Series2 operator-(const Series2 &a, const Series2 &b) { return a + (-b); }
    friend Series2 operator*(Series2 a, const Rat &k)
    {
        for (auto &x : a.c_) x *= k;
        return a;
    }
    friend Series2 operator*(const Series2 &a, const Series2 &b)
    {
        int n = std::min(a.n_, b.n_);
        Series2 r(n);
        for (int da = 0; da <= n; ++da)
            for (int i = 0; i <= da; ++i) {
                const Rat &x = a.c_[idx(i, da - i)];
                if (x == 0) continue;
                for (int db = 0; da + db <= n; ++db)
                    for (int k = 0; k <= db; ++k) {
                        const Rat &y = b.c_[idx(k, db - k)];
                        if (y != 0) r.c_[idx(i + k, da - i + db - k)] += x * y;
                    }
            }
        return r;
    }
    Series2 &operator+=(const Series2 &o) { return *this = *this + o; }
    Series2 &operator-=(const Series2 &o) { return *this = *this - o; }

    Series2 inverse() const
    {
        if (c_[0] == 0) throw pole_error("Series2 inverse: zero constant term");
        Series2 r(n_);
        Rat inv0 = 1 / c_[0];
        r.c_[0] = inv0;
        for (int d = 1; d <= n_; ++d)
            for (int i = 0; i <= d; ++i) {
                int j = d - i;
                Rat acc = 0;
                for (int a = 0; a <= i; ++a)
                    for (int b = 0; b <= j; ++b) {
                        if (a + b == 0) continue;
                        const Rat &x = c_[idx(a, b)];
                        if (x != 0) acc += x * r.c_[idx(i - a, j - b)];
                    }
                r.c_[idx(i, j)] = -acc * inv0;
            }
        return r;
    }

    // u^a v^b * this; the order grows by a+b.
    Series2 shift_up(int a, int b) const
    {
        Series2 r(n_ + a + b);
        for (int d = 0; d <= n_; ++d)
            for (int i = 0; i <= d; ++i) r.ref(i + a, d - i + b) = coeff(i, d - i);
        return r;
    }

    // f(u, v) -> f(v, u).
    Series2 swapped() const
    {
        Series2 r(n_);
        for (int d = 0; d <= n_; ++d)
            for (int i = 0; i <= d; ++i) r.ref(d - i, i) = coeff(i, d - i);
        return r;
    }

    // Coefficient of v^j as a series in u, valid through u^{order-j}.
    Series1 v_coefficient(int j) const
    {
        Series1 s(n_ - j);
        for (int i = 0; i <= n_ - j; ++i) s[i] = coeff(i, j);
        return s;
    }

    friend bool operator==(const Series2 &a, const Series2 &b) { return a.n_ == b.n_ && a.c_ == b.c_; }
    friend bool operator!=(const Series2 &a, const Series2 &b) { return !(a == b); }

private:
    static std::size_t idx(int i, int j)
    {
        int d = i + j;
        return static_cast<std::size_t>(d * (d + 1) / 2 + i);
    }

    int n_ = 0;
    std::vector<Rat> c_;
};

// Returns g with (u - v) g = f through total degree order-1. The input
// must be antisymmetric under u <-> v.
inline Series2 series2_div_antisym(const Series2 &f)
{
    if (f.swapped() != -f) throw structural_error("series2_div_antisym: input is not antisymmetric");
    const int n = f.order();
    if (n == 0) return Series2(0);
    Series2 g(n - 1);
    // Degree-d part of f: f_{i,d-i} = g_{i-1,d-i} - g_{i,d-i-1}.
    for (int d = 1; d <= n; ++d) {
        for (int i = d; i >= 1; --i) g.ref(i - 1, d - i) = f.coeff(i, d - i) + g.coeff(i, d - 1 - i);
        if (f.coeff(0, d) != -g.coeff(0, d - 1)) throw structural_error("series2_div_antisym: nonzero remainder");
    }
    return g;
}

// Substitutes s = uv, t = (1-u)(1-v) into f(s, t) and expands through
// total degree N. The denominator must not vanish at u = v = 0.
inline Series2 expand_to_chiral(const RatFn &f, int N)
{
    if (f.arity() != 2) throw usage_error("expand_to_chiral: expects a function of (s, t)");
    Series2 one = Series2::constant(N, 1);
    Series2 s = Series2::monomial(N, 1, 1);
    Series2 t = one - Series2::monomial(N, 1, 0) - Series2::monomial(N, 0, 1) + s;
    std::vector<Series2> st{s, t};
    Series2 num = f.num().eval_in<Series2>(st, one);
    Series2 den = f.den().eval_in<Series2>(st, one);
    if (den.coeff(0, 0) == 0) throw pole_error("expand_to_chiral: denominator vanishes at the origin");
    return num * den.inverse();
}

// Rewrites a symmetric polynomial in (u, v) through e1 = u+v, e2 = uv.
inline MPoly symmetric_reduce(const MPoly &p)
{
    if (p.arity() != 2) throw usage_error("symmetric_reduce: expects a polynomial in (u, v)");
    if (p.permuted({1, 0}) != p) throw structural_error("symmetric_reduce: input is not symmetric");
    MPoly out(2), r = p;
    const MPoly e1 = MPoly::var(2, 0) + MPoly::var(2, 1);
    const MPoly e2 = MPoly::var(2, 0) * MPoly::var(2, 1);
    while (!r.is_zero()) {
        const auto [e, c] = r.leading();
        int a = e[0], b = e[1];
        if (a < b) throw structural_error("symmetric_reduce: input is not symmetric");
        out.add_term({a - b, b}, c);
        r -= e1.pow(static_cast<unsigned>(a - b)) * e2.pow(static_cast<unsigned>(b)) * c;
    }
    return out;
}

// q-series with half-integer exponents: key k stands for q^{k/2}. Only
// keys in [min_key, max_key] are meaningful; coefficients beyond max_key
// are unknown (truncated), never implicitly zero.
class QSeries {
public:
    QSeries() = default;
    QSeries(long min_key, long max_key) : lo_(min_key), hi_(max_key)
    {
        if (max_key < min_key) throw usage_error("QSeries: empty window");
    }

    long min_key() const { return lo_; }
    long max_key() const { return hi_; }
    const std::map<long, Rat> &terms() const { return c_; }

    Rat coeff(long key) const
    {
        auto it = c_.find(key);
        return it == c_.end() ? Rat(0) : it->second;
    }
    // Coefficient of q^n for integer n.
    Rat coeff_q(long n) const { return coeff(2 * n); }

    void add(long key, const Rat &c)
    {
        if (key < lo_ || key > hi_ || c == 0) return;
        auto [it, inserted] = c_.try_emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) c_.erase(it);
        }
    }

    bool integral_exponents() const
    {
        return std::all_of(c_.begin(), c_.end(), [](auto &kv) { return kv.first % 2 == 0; });
    }

    friend QSeries operator+(const QSeries &a, const QSeries &b)
    {
        QSeries r(std::max(a.lo_, b.lo_), std::min(a.hi_, b.hi_));
        for (auto &[k, c] : a.c_) r.add(k, c);
        for (auto &[k, c] : b.c_) r.add(k, c);
        return r;
    }
    friend QSeries operator*(QSeries a, const Rat &k)
    {
        if (k == 0) a.c_.clear();
        for (auto &[e, c] : a.c_) c *= k;
        return a;
    }
    friend QSeries operator-(const QSeries &a, const QSeries &b) { return a + b * Rat(-1); }
    friend QSeries operator*(const QSeries &a, const QSeries &b)
    {
        long lo = a.lo_ + b.lo_;
        long hi = std::min(a.hi_ + b.lo_, b.hi_ + a.lo_);
        QSeries r(lo, std::max(lo, hi));
        for (auto &[ka, ca] : a.c_)
            for (auto &[kb, cb] : b.c_) r.add(ka + kb, ca * cb);
        return r;
    }

    QSeries truncated(long max_key) const
    {
        QSeries r(lo_, std::min(hi_, max_key));
        for (auto &[k, c] : c_) r.add(k, c);
        return r;
    }

    // Equality on the common window.
    friend bool operator==(const QSeries &a, const QSeries &b)
    {
        long lo = std::min(a.lo_, b.lo_), hi = std::min(a.hi_, b.hi_);
        for (auto &[k, c] : a.c_)
            if (k >= lo && k <= hi && b.coeff(k) != c) return false;
        for (auto &[k, c] : b.c_)
            if (k >= lo && k <= hi && a.coeff(k) != c) return false;
        return true;
    }

private:
    long lo_ = 0, hi_ = 0;
    std::map<long, Rat> c_;
};

// q -> -q^{1/2}: q^n becomes (-1)^n q^{n/2}, i.e. key 2n -> key n.
inline QSeries halfperiod_substitute(const QSeries &s)
{
    if (!s.integral_exponents() || s.min_key() % 2 != 0)
        throw usage_error("halfperiod_substitute: input has half-integer exponents");
    QSeries r(s.min_key() / 2, s.max_key() / 2);
    for (auto &[k, c] : s.terms()) {
        long n = k / 2;
        r.add(n, (n % 2 == 0) ? c : Rat(-c));
    }
    return r;
}

} // namespace gci
