#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rational.hpp"

namespace gci {

using Exps = std::vector<int>;

// Sparse multivariate polynomial with rational coefficients. Terms are
// kept in a map ordered lexicographically on exponent vectors, so the
// last entry is the lex-leading term. Zero coefficients are never stored.
class MPoly {
public:
    using Terms = std::map<Exps, Rat>;

    MPoly() = default;
    explicit MPoly(int arity) : arity_(arity)
    {
        if (arity < 0) throw usage_error("MPoly: negative arity");
    }

    static MPoly constant(int arity, const Rat &c)
    {
        MPoly p(arity);
        if (c != 0) p.terms_[Exps(arity, 0)] = c;
        return p;
    }

    static MPoly var(int arity, int i)
    {
        if (i < 0 || i >= arity) throw usage_error("MPoly::var: index out of range");
        MPoly p(arity);
        Exps e(arity, 0);
        e[i] = 1;
        p.terms_[e] = 1;
        return p;
    }

    static MPoly monomial(const Exps &e, const Rat &c)
    {
        MPoly p(static_cast<int>(e.size()));
        for (int x : e)
            if (x < 0) throw usage_error("MPoly::monomial: negative exponent");
        if (c != 0) p.terms_[e] = c;
        return p;
    }

    int arity() const { return arity_; }
    const Terms &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rat coeff(const Exps &e) const
    {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void add_term(const Exps &e, const Rat &c)
    {
        if (static_cast<int>(e.size()) != arity_) throw usage_error("MPoly: exponent length mismatch");
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    int total_degree() const
    {
        int d = -1;
        for (auto &[e, c] : terms_) {
            int s = 0;
            for (int x : e) s += x;
            d = std::max(d, s);
        }
        return d;
    }

    int degree_in(int i) const
    {
        int d = -1;
        for (auto &[e, c] : terms_) d = std::max(d, e[i]);
        return d;
    }

    int min_degree_in(int i) const
    {
        int d = -1;
        for (auto &[e, c] : terms_) d = d < 0 ? e[i] : std::min(d, e[i]);
        return d;
    }

    const std::pair<const Exps, Rat> &leading() const
    {
        if (terms_.empty()) throw usage_error("leading term of zero polynomial");
        return *terms_.rbegin();
    }

    MPoly operator-() const
    {
        MPoly r = *this;
        for (auto &[e, c] : r.terms_) c = -c;
        return r;
    }

    MPoly &operator+=(const MPoly &o)
    {
        check_arity(o);
        for (auto &[e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MPoly &operator-=(const MPoly &o)
    {
        check_arity(o);
        for (auto &[e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    MPoly &operator*=(const Rat &k)
    {
        if (k == 0) terms_.clear();
        else
            for (auto &[e, c] : terms_) c *= k;
        return *this;
    }

    friend MPoly operator+(MPoly a, const MPoly &b) { return a += b; }
    friend MPoly operator-(MPoly a, const MPoly &b) { return a -= b; }
    friend MPoly operator*(MPoly a, const Rat &k) { return a *= k; }
    friend MPoly operator*(const Rat &k, MPoly a) { return a *= k; }

    friend MPoly operator*(const MPoly &a, const MPoly &b)
    {
        a.check_arity(b);
        MPoly r(a.arity_);
        Exps e(a.arity_);
        for (auto &[ea, ca] : a.terms_)
            for (auto &[eb, cb] : b.terms_) {
                for (int i = 0; i < a.arity_; ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    MPoly &operator*=(const MPoly &o) { return *this = *this * o; }

    friend bool operator==(const MPoly &a, const MPoly &b)
    {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MPoly &a, const MPoly &b) { return !(a == b); }

    MPoly pow(unsigned n) const
    {
        MPoly out = constant(arity_, 1), base = *this;
        while (n) {
            if (n & 1) out *= base;
            n >>= 1;
            if (n) base *= base;
        }
        return out;
    }

    // Multiplies by x^shift; shift entries must keep exponents nonnegative.
    MPoly shifted(const Exps &shift) const
    {
        MPoly r(arity_);
        for (auto &[e, c] : terms_) {
            Exps f = e;
            for (int i = 0; i < arity_; ++i) {
                f[i] += shift[i];
                if (f[i] < 0) throw usage_error("MPoly::shifted: negative exponent");
            }
            r.terms_[f] = c;
        }
        return r;
    }

    MPoly derivative(int i) const
    {
        MPoly r(arity_);
        for (auto &[e, c] : terms_)
            if (e[i] > 0) {
                Exps f = e;
                f[i] -= 1;
                r.add_term(f, c * e[i]);
            }
        return r;
    }

    // Reorders variables: new variable k is old variable perm[k].
    MPoly permuted(const std::vector<int> &perm) const
    {
        MPoly r(arity_);
        for (auto &[e, c] : terms_) {
            Exps f(arity_);
            for (int k = 0; k < arity_; ++k) f[k] = e[perm[k]];
            r.terms_[f] = c;
        }
        return r;
    }

    // Evaluates with values in any commutative ring R that accepts
    // multiplication by a Rat coefficient. `one` is the unit of R.
    template <class R>
    R eval_in(const std::vector<R> &x, const R &one) const
    {
        if (static_cast<int>(x.size()) != arity_) throw usage_error("MPoly::eval: arity mismatch");
        std::vector<std::vector<R>> powers(arity_);
        for (int i = 0; i < arity_; ++i) powers[i].push_back(one);
        auto power = [&](int i, int k) -> const R & {
            while (static_cast<int>(powers[i].size()) <= k) powers[i].push_back(powers[i].back() * x[i]);
            return powers[i][k];
        };
        R acc = one * Rat(0);
        for (auto &[e, c] : terms_) {
            R term = one * c;
            for (int i = 0; i < arity_; ++i)
                if (e[i]) term = term * power(i, e[i]);
            acc = acc + term;
        }
        return acc;
    }

    Rat eval(const std::vector<Rat> &x) const { return eval_in<Rat>(x, Rat(1)); }

    MPoly compose(const std::vector<MPoly> &x) const
    {
        if (x.empty()) throw usage_error("MPoly::compose: empty substitution");
        return eval_in<MPoly>(x, constant(x.front().arity(), 1));
    }

    // Positive rational c with this/c having coprime integer coefficients.
    Rat content() const
    {
        Int g = 0, l = 1;
        for (auto &[e, c] : terms_) {
            g = gcd(g, c.get_num());
            l = lcm(l, c.get_den());
        }
        if (g == 0) return 1;
        return rat(g, l);
    }

    // Exact quotient under lex division, or nullopt when d does not divide.
    std::optional<MPoly> divide_exact(const MPoly &d) const
    {
        check_arity(d);
        if (d.is_zero()) throw pole_error("MPoly division by zero");
        MPoly q(arity_), r = *this;
        const auto &[de, dc] = d.leading();
        while (!r.is_zero()) {
            const auto [re, rc] = r.leading();
            Exps f(arity_);
            for (int i = 0; i < arity_; ++i) {
                f[i] = re[i] - de[i];
                if (f[i] < 0) return std::nullopt;
            }
            MPoly t = monomial(f, rc / dc);
            q += t;
            r -= t * d;
        }
        return q;
    }

    std::string str(const std::vector<std::string> &names = {}) const
    {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto &[e, c] = *it;
            bool unit_mono = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
            Rat a = abs(c);
            out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
            std::string mono;
            for (int i = 0; i < arity_; ++i) {
                if (!e[i]) continue;
                if (!mono.empty()) mono += "*";
                mono += i < static_cast<int>(names.size()) ? names[i] : "x" + std::to_string(i);
                if (e[i] > 1) mono += "^" + std::to_string(e[i]);
            }
            if (unit_mono) out += to_string(a);
            else if (a == 1) out += mono;
            else out += to_string(a) + "*" + mono;
        }
        return out;
    }

private:
    void check_arity(const MPoly &o) const
    {
        if (o.arity_ != arity_) throw usage_error("MPoly arity mismatch");
    }

    int arity_ = 0;
    Terms terms_;
};

} // namespace gci
