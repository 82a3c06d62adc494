#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mpoly.hpp"

namespace gci {

// Quotient of two MPolys. No multivariate gcd is taken: normalization
// strips common monomial factors and the joint content, and makes the
// lex-leading coefficient of the denominator positive. Equality is
// decided by cross-multiplication.
class RatFn {
public:
    RatFn() = default;
    explicit RatFn(int arity) : num_(arity), den_(MPoly::constant(arity, 1)) {}
    RatFn(MPoly num) : num_(std::move(num)), den_(MPoly::constant(num_.arity(), 1)) {}
    RatFn(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den))
    {
        if (num_.arity() != den_.arity()) throw usage_error("RatFn: arity mismatch");
        normalize();
    }

    static RatFn constant(int arity, const Rat &c) { return RatFn(MPoly::constant(arity, c)); }
    static RatFn var(int arity, int i) { return RatFn(MPoly::var(arity, i)); }

    int arity() const { return num_.arity(); }
    const MPoly &num() const { return num_; }
    const MPoly &den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    RatFn operator-() const
    {
        RatFn r = *this;
        r.num_ = -r.num_;
        return r;
    }

    friend RatFn operator+(const RatFn &a, const RatFn &b)
    {
        a.check_arity(b);
        if (a.den_ == b.den_) return RatFn(a.num_ + b.num_, a.den_);
        return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFn operator-(const RatFn &a, const RatFn &b) { return a + (-b); }
    friend RatFn operator*(const RatFn &a, const RatFn &b)
    {
        a.check_arity(b);
        return RatFn(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFn operator/(const RatFn &a, const RatFn &b)
    {
        a.check_arity(b);
        if (b.is_zero()) throw pole_error("RatFn division by zero");
        return RatFn(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RatFn operator*(const RatFn &a, const Rat &k) { return RatFn(a.num_ * k, a.den_); }
    friend RatFn operator*(const Rat &k, const RatFn &a) { return a * k; }
    RatFn &operator+=(const RatFn &o) { return *this = *this + o; }
    RatFn &operator-=(const RatFn &o) { return *this = *this - o; }
    RatFn &operator*=(const RatFn &o) { return *this = *this * o; }

    RatFn pow(long n) const
    {
        if (n >= 0) return RatFn(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
        if (is_zero()) throw pole_error("negative power of zero RatFn");
        return RatFn(den_.pow(static_cast<unsigned>(-n)), num_.pow(static_cast<unsigned>(-n)));
    }

    RatFn derivative(int i) const
    {
        return RatFn(num_.derivative(i) * den_ - num_ * den_.derivative(i), den_ * den_);
    }

    // f(x_0, ..., x_{k-1}) -> f(x[0], ..., x[k-1]).
    RatFn compose(const std::vector<RatFn> &x) const
    {
        if (static_cast<int>(x.size()) != arity()) throw usage_error("RatFn::compose: arity mismatch");
        RatFn one = constant(x.front().arity(), 1);
        RatFn n = num_.eval_in<RatFn>(x, one);
        RatFn d = den_.eval_in<RatFn>(x, one);
        return n / d;
    }

    Rat eval(const std::vector<Rat> &x) const
    {
        Rat d = den_.eval(x);
        if (d == 0) throw pole_error("RatFn evaluated on a pole");
        return num_.eval(x) / d;
    }

    // The polynomial this function equals, if it is one.
    std::optional<MPoly> as_polynomial() const
    {
        auto q = num_.divide_exact(den_);
        return q;
    }

    friend bool operator==(const RatFn &a, const RatFn &b)
    {
        a.check_arity(b);
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const RatFn &a, const RatFn &b) { return !(a == b); }

    std::string str(const std::vector<std::string> &names = {}) const
    {
        if (den_ == MPoly::constant(arity(), 1)) return num_.str(names);
        return "(" + num_.str(names) + ")/(" + den_.str(names) + ")";
    }

private:
    void check_arity(const RatFn &o) const
    {
        if (o.arity() != arity()) throw usage_error("RatFn arity mismatch");
    }

    void normalize()
    {
        if (den_.is_zero()) throw pole_error("RatFn with zero denominator");
        const int n = arity();
        if (num_.is_zero()) {
            den_ = MPoly::constant(n, 1);
            return;
        }
        Exps shift(n);
        for (int i = 0; i < n; ++i) shift[i] = -std::min(num_.min_degree_in(i), den_.min_degree_in(i));
        if (std::any_of(shift.begin(), shift.end(), [](int x) { return x != 0; })) {
            num_ = num_.shifted(shift);
            den_ = den_.shifted(shift);
        }
        Int g = 0, l = 1;
        for (const MPoly *p : {&num_, &den_})
            for (auto &[e, c] : p->terms()) {
                g = gcd(g, c.get_num());
                l = lcm(l, c.get_den());
            }
        Rat k = rat(l, g);
        if (den_.leading().second < 0) k = -k;
        if (k != 1) {
            num_ *= k;
            den_ *= k;
        }
        if (den_.size() == 1 && den_.terms().begin()->first == Exps(n, 0)) return;
        // Cheap exact-division attempt keeps polynomial results polynomial.
        if (den_.total_degree() <= num_.total_degree()) {
            if (auto q = num_.divide_exact(den_)) {
                num_ = std::move(*q);
                den_ = MPoly::constant(n, 1);
            }
        }
    }

    MPoly num_;
    MPoly den_;
};

// Arity-2 helpers for functions of the cross-ratios (s, t).
inline RatFn st_s() { return RatFn::var(2, 0); }
inline RatFn st_t() { return RatFn::var(2, 1); }
inline const std::vector<std::string> &st_names()
{
    static const std::vector<std::string> n{"s", "t"};
    return n;
}

inline bool ratfn_eq(const RatFn &a, const RatFn &b)
{
    if (a.arity() != b.arity()) throw usage_error("ratfn_eq: arity mismatch");
    return a == b;
}

} // namespace gci
