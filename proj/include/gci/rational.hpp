#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

#include "errors.hpp"

namespace gci {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat rat(long p, long q = 1)
{
    if (q == 0) throw usage_error("rat: zero denominator");
    Rat r(p, q);
    r.canonicalize();
    return r;
}

inline Rat rat(const Int &p, const Int &q = 1)
{
    if (q == 0) throw usage_error("rat: zero denominator");
    Rat r(p, q);
    r.canonicalize();
    return r;
}

// Accepts "p", "p/q" with optional sign and surrounding blanks.
inline Rat parse_rat(std::string_view text)
{
    std::string s(text);
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) throw usage_error("empty rational");
    s = s.substr(b, e - b + 1);
    auto slash = s.find('/');
    auto valid_int = [](const std::string &x) {
        if (x.empty()) return false;
        std::size_t i = (x[0] == '-' || x[0] == '+') ? 1 : 0;
        if (i == x.size()) return false;
        for (; i < x.size(); ++i)
            if (x[i] < '0' || x[i] > '9') return false;
        return true;
    };
    auto strip_plus = [](std::string x) {
        if (!x.empty() && x[0] == '+') x.erase(0, 1);
        return x;
    };
    std::string num = slash == std::string::npos ? s : s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den)) throw usage_error("malformed rational '" + std::string(text) + "'");
    Int n(strip_plus(num)), d(strip_plus(den));
    if (d == 0) throw usage_error("zero denominator in '" + std::string(text) + "'");
    return rat(n, d);
}

// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rat &r)
{
    return r.get_str();
}

// Always "p/q", used for CSV columns.
inline std::string to_fraction(const Rat &r)
{
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat pow(const Rat &x, long e)
{
    if (e < 0) {
        if (x == 0) throw pole_error("negative power of zero");
        Rat inv = 1 / x;
        return pow(inv, -e);
    }
    Rat out(1), base(x);
    while (e) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

inline Int factorial(long n)
{
    if (n < 0) throw usage_error("factorial of negative integer");
    Int out;
    mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
    return out;
}

// Zero outside 0 <= k <= n.
inline Int binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    Int out;
    mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return out;
}

// Rising factorial (a)_n.
inline Rat pochhammer(const Rat &a, long n)
{
    Rat out(1);
    for (long i = 0; i < n; ++i) out *= a + i;
    return out;
}

// Beta(a, b) = (a-1)!(b-1)!/(a+b-1)! for positive integers.
inline Rat beta_int(long a, long b)
{
    if (a < 1 || b < 1) throw usage_error("beta_int needs positive arguments");
    return rat(factorial(a - 1) * factorial(b - 1), factorial(a + b - 1));
}

inline bool is_integer(const Rat &r) { return r.get_den() == 1; }

inline bool rational_sqrt(const Rat &r, Rat &out)
{
    if (r < 0) return false;
    const Int &n = r.get_num(), &d = r.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    Int sn, sd;
    mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
    out = rat(sn, sd);
    return true;
}

inline Int gcd(const Int &a, const Int &b)
{
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int &a, const Int &b)
{
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// Gaussian numbers over a commutative ring T; GaussRat is the field Q(i).
template <class T>
struct Gauss {
    T re{}, im{};

    Gauss() = default;
    Gauss(T r) : re(std::move(r)), im() {}
    Gauss(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    static Gauss unit_i() { return Gauss(T(0), T(1)); }

    Gauss conj() const { return Gauss(re, -im); }

    friend Gauss operator+(const Gauss &a, const Gauss &b) { return {a.re + b.re, a.im + b.im}; }
    friend Gauss operator-(const Gauss &a, const Gauss &b) { return {a.re - b.re, a.im - b.im}; }
    friend Gauss operator-(const Gauss &a) { return {-a.re, -a.im}; }
    friend Gauss operator*(const Gauss &a, const Gauss &b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    Gauss &operator+=(const Gauss &b) { return *this = *this + b; }
    Gauss &operator-=(const Gauss &b) { return *this = *this - b; }
    Gauss &operator*=(const Gauss &b) { return *this = *this * b; }

    friend bool operator==(const Gauss &a, const Gauss &b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const Gauss &a, const Gauss &b) { return !(a == b); }
};

using GaussRat = Gauss<Rat>;

inline GaussRat inverse(const GaussRat &z)
{
    Rat n = z.re * z.re + z.im * z.im;
    if (n == 0) throw pole_error("inverse of zero Gaussian rational");
    return {z.re / n, -z.im / n};
}

inline std::string to_string(const GaussRat &z)
{
    return to_string(z.re) + (z.im < 0 ? "-" : "+") + to_string(abs(z.im)) + "i";
}

} // namespace gci
