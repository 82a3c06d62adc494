#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <vector>

#include "series.hpp"

namespace gci {

using Real = long double;
using Cx = std::complex<Real>;

inline const Real kPi = 3.141592653589793238462643383279502884L;
inline const Cx kI{0, 1};

inline Rat bernoulli(int k)
{
    if (k < 0) throw usage_error("bernoulli: k must be nonnegative");
    std::vector<Rat> B(static_cast<std::size_t>(k + 1));
    B[0] = 1;
    for (int m = 1; m <= k; ++m) {
        Rat s = 0;
        for (int j = 0; j < m; ++j) s += Rat(binomial(m + 1, j)) * B[static_cast<std::size_t>(j)];
        B[static_cast<std::size_t>(m)] = -s / (m + 1);
    }
    return B[static_cast<std::size_t>(k)];
}

inline Int divisor_power_sum(long n, int p)
{
    Int s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            Int t;
            mpz_ui_pow_ui(t.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(p));
            s += t;
        }
    return s;
}

// Adds a q^n/(1-q^n) expanded through q^N.
namespace detail {
inline void add_lambert(QSeries &s, long n, const Rat &a, long N)
{
    for (long m = 1; n * m <= N; ++m) s.add(2 * n * m, a);
}
} // namespace detail

// G_{2k} = -B_{2k}/(4k) + sum_n sigma_{2k-1}(n) q^n through q^N.
inline QSeries eisenstein_G(int k, long N)
{
    if (k < 1) throw usage_error("eisenstein_G: k must be at least 1");
    if (N < 1) throw usage_error("eisenstein_G: N must be at least 1");
    QSeries s(0, 2 * N);
    s.add(0, -bernoulli(2 * k) / (4 * k));
    for (long n = 1; n <= N; ++n) s.add(2 * n, Rat(divisor_power_sum(n, 2 * k - 1)));
    return s;
}

// Coefficient a_n of q^n/(1-q^n) in energy_mean_scalar (0 below d0).
inline Rat scalar_lambert_coefficient(int D, long n)
{
    if (D < 4 || D % 2) throw unsupported_error("scalar_lambert_coefficient: D must be even and at least 4");
    const long d0 = (D - 2) / 2;
    if (n < d0) return 0;
    Rat a = Rat(2) / Rat(factorial(2 * d0)) * n;
    for (long i = 0; i < d0; ++i) a *= n * n - i * i;
    return a;
}

// Vacuum constant E(d0) known for D = 4, 6.
inline std::optional<Rat> scalar_vacuum_constant(int D)
{
    if (D == 4) return rat(1, 240);
    if (D == 6) return rat(-31, 12 * 5040);
    return std::nullopt;
}

// E(d0) + sum_{n >= d0} 2/(2d0)! n^2 (n^2-1)...(n^2-(d0-1)^2) n q^n/(1-q^n),
// D = 2 d0 + 2. For D outside {4, 6} the constant is taken from `vacuum`
// (0 when absent).
inline QSeries energy_mean_scalar(int D, long N, std::optional<Rat> vacuum = std::nullopt)
{
    if (D < 4 || D % 2) throw unsupported_error("energy_mean_scalar: D must be even and at least 4");
    if (N < 1) throw usage_error("energy_mean_scalar: N must be at least 1");
    const long d0 = (D - 2) / 2;
    Rat E = vacuum ? *vacuum : scalar_vacuum_constant(D).value_or(Rat(0));
    if (vacuum && scalar_vacuum_constant(D) && *vacuum != *scalar_vacuum_constant(D))
        throw usage_error("energy_mean_scalar: supplied vacuum constant contradicts the known value");
    QSeries s(0, 2 * N);
    s.add(0, E);
    for (long n = d0; n <= N; ++n) detail::add_lambert(s, n, scalar_lambert_coefficient(D, n), N);
    return s;
}

// Constant term of the sign-consistent braces (see energy_mean_weyl_modular).
inline Rat weyl_vacuum_energy() { return rat(17, 960); }

// E0 + sum_{n>=1} (2n+1) n(n+1) q^{n+1/2}/(1+q^{n+1/2}) through q^N.
inline QSeries energy_mean_weyl(long N, const Rat &E0 = weyl_vacuum_energy())
{
    if (N < 1) throw usage_error("energy_mean_weyl: N must be at least 1");
    QSeries s(0, 2 * N);
    s.add(0, E0);
    for (long n = 1; 2 * n + 1 <= 2 * N; ++n) {
        Rat a = Rat((2 * n + 1) * n * (n + 1));
        for (long m = 1; m * (2 * n + 1) <= 2 * N; ++m) s.add(m * (2 * n + 1), m % 2 ? a : Rat(-a));
    }
    return s;
}

// (1/4){G4((tau+1)/2) - 8 G4 - G2((tau+1)/2) + 2 G2} through q^N, as
// written. Its fluctuation terms are the negatives of those of
// energy_mean_weyl; its constant is -17/960.
inline QSeries energy_mean_weyl_modular(long N)
{
    QSeries g4 = eisenstein_G(2, 2 * N), g2 = eisenstein_G(1, 2 * N);
    QSeries r = halfperiod_substitute(g4) - g4 * Rat(8) - halfperiod_substitute(g2) + g2 * Rat(2);
    return (r * rat(1, 4)).truncated(2 * N);
}

// F = 2 G2(tau) - G2((tau+1)/2) through q^N.
inline QSeries theta_form_F(long N)
{
    QSeries g2 = eisenstein_G(1, 2 * N);
    return (g2 * Rat(2) - halfperiod_substitute(g2)).truncated(2 * N);
}

inline void check_tau(const Cx &tau)
{
    if (!(tau.imag() > 0)) throw usage_error("tau must have positive imaginary part");
}

inline Cx q_of(const Cx &tau) { return std::exp(2 * kPi * kI * tau); }

struct Evaluation {
    Cx value;
    Real error_bound = 0;
};

// Sum of c_k q^{k/2} over the stored window. The bound is the magnitude of
// a first omitted term sized like the largest stored coefficient, times a
// safety factor of 10, plus a rounding allowance.
inline Evaluation qseries_eval(const QSeries &s, const Cx &tau)
{
    check_tau(tau);
    const Cx h = std::exp(kPi * kI * tau);
    Evaluation e{Cx(0), 0};
    Real cmax = 0, mass = 0;
    for (auto &[k, c] : s.terms()) {
        Cx term = Real(c.get_d()) * std::pow(h, Real(k));
        e.value += term;
        mass += std::abs(term);
        cmax = std::max(cmax, std::fabs(Real(c.get_d())));
    }
    const long next = s.max_key() + 1;
    Real growth = std::pow(Real(next) / Real(std::max(1L, s.max_key())), 8);
    e.error_bound = 10 * std::max<Real>(cmax, 1) * growth * std::pow(std::abs(h), Real(next)) /
                    std::max<Real>(1 - std::abs(h), Real(1e-300));
    e.error_bound += 8 * std::numeric_limits<Real>::epsilon() * mass;
    if (!std::isfinite(e.error_bound) || !std::isfinite(std::abs(e.value)) || e.error_bound > 1)
        throw precision_error("qseries_eval: window does not converge at this tau");
    return e;
}

// Direct evaluation of G_{2k}(tau) with n up to N.
inline Evaluation eisenstein_eval(int k, const Cx &tau, long N)
{
    check_tau(tau);
    const Cx q = q_of(tau);
    Evaluation e{Cx(-Real(bernoulli(2 * k).get_d()) / Real(4 * k)), 0};
    Cx qn = 1;
    for (long n = 1; n <= N; ++n) {
        qn *= q;
        e.value += std::pow(Real(n), Real(2 * k - 1)) * qn / (Real(1) - qn);
    }
    const Real aq = std::abs(q);
    e.error_bound = 4 * std::pow(Real(N + 1), Real(2 * k - 1)) * std::pow(aq, Real(N + 1)) / ((1 - aq) * (1 - aq));
    return e;
}

struct ModularResidual {
    Real residual = 0;
    Real bound = 0;
};

inline void check_budget(Real bound, Real tol, const char *what)
{
    if (!(bound < tol)) throw precision_error(std::string(what) + ": truncation bound exceeds tolerance");
}

// max over gamma in {S, T} of |(c tau + d)^{-2k} G_{2k}(gamma tau) - G_{2k}(tau)|.
inline ModularResidual modular_check_G(int k, const Cx &tau, long N, Real tol)
{
    if (k < 2) throw usage_error("modular_check_G: k must be at least 2");
    auto g = eisenstein_eval(k, tau, N);
    auto gs = eisenstein_eval(k, -Real(1) / tau, N);
    auto gt = eisenstein_eval(k, tau + Real(1), N);
    Real rs = std::abs(std::pow(tau, Real(-2 * k)) * gs.value - g.value);
    Real rt = std::abs(gt.value - g.value);
    ModularResidual r{std::max(rs, rt), g.error_bound + gs.error_bound * std::pow(std::abs(tau), Real(-2 * k))};
    check_budget(r.bound, tol, "modular_check_G");
    return r;
}

// |tau^{-2} G2(-1/tau) - G2(tau) - i/(4 pi tau)|.
inline ModularResidual g2_anomaly_check(const Cx &tau, long N, Real tol)
{
    auto g = eisenstein_eval(1, tau, N);
    auto gs = eisenstein_eval(1, -Real(1) / tau, N);
    Real res = std::abs(gs.value / (tau * tau) - g.value - kI / (4 * kPi * tau));
    ModularResidual r{res, g.error_bound + gs.error_bound / std::norm(tau)};
    check_budget(r.bound, tol, "g2_anomaly_check");
    return r;
}

inline Evaluation theta_form_eval(const Cx &tau, long N)
{
    auto a = eisenstein_eval(1, tau, N);
    auto b = eisenstein_eval(1, (tau + Real(1)) / Real(2), N);
    return {Real(2) * a.value - b.value, 2 * a.error_bound + b.error_bound};
}

struct Weight2Residual {
    Real s_residual = 0;
    Real t2_residual = 0;
    Real bound = 0;
};

// S and T^2 checks of the weight 2 form F.
inline Weight2Residual weight2_check(const Cx &tau, long N, Real tol)
{
    auto f = theta_form_eval(tau, N);
    auto fs = theta_form_eval(-Real(1) / tau, N);
    auto ft = theta_form_eval(tau + Real(2), N);
    Weight2Residual r;
    r.s_residual = std::abs(fs.value / (tau * tau) - f.value);
    r.t2_residual = std::abs(ft.value - f.value);
    r.bound = f.error_bound + fs.error_bound / std::norm(tau) + ft.error_bound;
    check_budget(r.bound, tol, "weight2_check");
    return r;
}

inline void check_not_integer(const Cx &z, const char *what)
{
    if (std::abs(z.imag()) < 1e-14L && std::fabs(z.real() - std::nearbyint(z.real())) < 1e-14L)
        throw pole_error(std::string(what) + ": argument on the pole set");
}

// pi cot(pi zeta) + 4 pi sum_{n<=N} q^n/(1-q^n) sin(2 pi n zeta).
inline Cx elliptic_p1(const Cx &zeta, const Cx &tau, long N)
{
    check_tau(tau);
    check_not_integer(zeta, "elliptic_p1");
    const Cx q = q_of(tau);
    Cx v = kPi * std::cos(kPi * zeta) / std::sin(kPi * zeta);
    Cx qn = 1;
    for (long n = 1; n <= N; ++n) {
        qn *= q;
        v += 4 * kPi * qn / (Real(1) - qn) * std::sin(2 * kPi * Real(n) * zeta);
    }
    return v;
}

// Symmetric lattice summation: sum_{|m| <= M} pi cot pi(zeta + m tau).
inline Cx elliptic_p1_lattice(const Cx &zeta, const Cx &tau, long M)
{
    check_tau(tau);
    Cx v = 0;
    for (long m = -M; m <= M; ++m) {
        Cx w = zeta + Real(m) * tau;
        check_not_integer(w, "elliptic_p1_lattice");
        v += kPi * std::cos(kPi * w) / std::sin(kPi * w);
    }
    return v;
}

// p_1^{11} = pi sum_{|n|<=N} (-1)^n / sin pi(zeta + n tau);
// p_2^{11} = -d/dzeta of the same sum, termwise.
inline Cx elliptic_p_k11(int k, const Cx &zeta, const Cx &tau, long N)
{
    if (k != 1 && k != 2) throw usage_error("elliptic_p_k11: k must be 1 or 2");
    check_tau(tau);
    Cx v = 0;
    for (long n = -N; n <= N; ++n) {
        Cx w = kPi * (zeta + Real(n) * tau);
        Cx s = std::sin(w);
        if (std::abs(s) < 1e-14L) throw pole_error("elliptic_p_k11: argument too close to a pole");
        Real sign = (n % 2 == 0) ? 1 : -1;
        v += k == 1 ? sign * kPi / s : sign * kPi * kPi * std::cos(w) / (s * s);
    }
    return v;
}

inline void check_alpha(Real alpha)
{
    if (std::fabs(std::sin(2 * kPi * alpha)) < 1e-12L) throw degenerate_error("sin(2 pi alpha) vanishes");
}

// Vacuum scalar 2-point: -1/(4 sin pi zeta+ sin pi zeta-).
inline Cx scalar_vacuum_2pt(const Cx &zeta, Real alpha)
{
    Cx sp = std::sin(kPi * (zeta + alpha)), sm = std::sin(kPi * (zeta - alpha));
    if (std::abs(sp * sm) < 1e-300L) throw pole_error("scalar_vacuum_2pt: coincident points");
    return Real(-1) / (Real(4) * sp * sm);
}

inline Cx gibbs_scalar_2pt(const Cx &zeta, Real alpha, const Cx &tau, long N)
{
    check_alpha(alpha);
    return (elliptic_p1(zeta + alpha, tau, N) - elliptic_p1(zeta - alpha, tau, N)) / (4 * kPi * std::sin(2 * kPi * alpha));
}

// w0 + 2 sum_n q^n/(1-q^n) sin(2 pi n alpha)/sin(2 pi alpha) cos(2 pi n zeta).
inline Cx gibbs_scalar_modes(const Cx &zeta, Real alpha, const Cx &tau, long N)
{
    check_alpha(alpha);
    check_tau(tau);
    const Cx q = q_of(tau);
    Cx v = scalar_vacuum_2pt(zeta, alpha);
    Cx qn = 1;
    for (long n = 1; n <= N; ++n) {
        qn *= q;
        v += Real(2) * qn / (Real(1) - qn) * (std::sin(2 * kPi * n * alpha) / std::sin(2 * kPi * alpha)) *
             std::cos(2 * kPi * Real(n) * zeta);
    }
    return v;
}

using CVec4 = std::array<Cx, 4>;
using CMat2 = std::array<std::array<Cx, 2>, 2>;

inline CMat2 operator+(const CMat2 &a, const CMat2 &b)
{
    CMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = a[i][j] + b[i][j];
    return r;
}
inline CMat2 operator*(const Cx &k, const CMat2 &a)
{
    CMat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r[i][j] = k * a[i][j];
    return r;
}
inline Real max_abs_diff(const CMat2 &a, const CMat2 &b)
{
    Real m = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) m = std::max(m, std::abs(a[i][j] - b[i][j]));
    return m;
}

// Same conventions as the rational slash: z4 +/- z.Q.
inline CMat2 slash_complex(const CVec4 &z, bool conjugate)
{
    const Cx s = conjugate ? Real(-1) : Real(1);
    CMat2 m;
    m[0][0] = z[3] + s * (-kI * z[2]);
    m[0][1] = s * (-kI * z[0] - z[1]);
    m[1][0] = s * (-kI * z[0] + z[1]);
    m[1][1] = z[3] + s * (kI * z[2]);
    return m;
}

inline Cx cdot(const CVec4 &a, const CVec4 &b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]; }

struct IsotropicPair {
    CVec4 v, vbar;
};

using RVec4 = std::array<Real, 4>;

// Solves u1 = e^{i pi a} v + e^{-i pi a} vbar, u2 = e^{-i pi a} v + e^{i pi a} vbar.
inline IsotropicPair isotropic_pair(const RVec4 &u1, const RVec4 &u2, Real alpha)
{
    check_alpha(alpha);
    auto norm = [](const RVec4 &u) { return u[0] * u[0] + u[1] * u[1] + u[2] * u[2] + u[3] * u[3]; };
    if (std::fabs(norm(u1) - 1) > 1e-12L || std::fabs(norm(u2) - 1) > 1e-12L)
        throw usage_error("isotropic_pair: u1, u2 must be unit vectors");
    Real c = u1[0] * u2[0] + u1[1] * u2[1] + u1[2] * u2[2] + u1[3] * u2[3];
    if (std::fabs(c - std::cos(2 * kPi * alpha)) > 1e-12L) throw usage_error("isotropic_pair: u1.u2 differs from cos(2 pi alpha)");
    const Cx e = std::exp(kI * kPi * alpha), det = Cx(0, 2) * std::sin(2 * kPi * alpha);
    IsotropicPair p;
    for (int k = 0; k < 4; ++k) {
        p.v[k] = (e * u1[k] - std::conj(e) * u2[k]) / det;
        p.vbar[k] = (e * u2[k] - std::conj(e) * u1[k]) / det;
    }
    return p;
}

// Unit vectors with u1.u2 = cos(2 pi alpha).
inline std::pair<RVec4, RVec4> canonical_units(Real alpha)
{
    return {RVec4{0, 0, 0, 1}, RVec4{std::sin(2 * kPi * alpha), 0, 0, std::cos(2 * kPi * alpha)}};
}

inline CMat2 weyl_vacuum_2pt(const Cx &zeta, Real alpha, const IsotropicPair &p)
{
    Cx sm = std::sin(kPi * (zeta - alpha)), sp = std::sin(kPi * (zeta + alpha));
    if (std::abs(sm * sp) < 1e-300L) throw pole_error("weyl_vacuum_2pt: coincident points");
    Cx pre = kI / (Real(8) * sm * sp);
    return pre * ((Real(1) / sm) * slash_complex(p.v, true) + (Real(1) / sp) * slash_complex(p.vbar, true));
}

// Partial-fraction form of the vacuum function.
inline CMat2 weyl_vacuum_2pt_split(const Cx &zeta, Real alpha, const IsotropicPair &p)
{
    const Real s2 = std::sin(2 * kPi * alpha), ct = std::cos(2 * kPi * alpha) / s2;
    Cx zm = kPi * (zeta - alpha), zp = kPi * (zeta + alpha);
    Cx a = std::cos(zm) / (std::sin(zm) * std::sin(zm)) - ct / std::sin(zm) + Real(1) / (s2 * std::sin(zp));
    Cx b = std::cos(zp) / (std::sin(zp) * std::sin(zp)) + ct / std::sin(zp) - Real(1) / (s2 * std::sin(zm));
    return (kI / (8 * s2)) * (a * slash_complex(p.v, true) + (-b) * slash_complex(p.vbar, true));
}

// Gibbs function of the Weyl field. The p_2^{11} terms enter divided by pi
// so that q -> 0 reproduces the vacuum function.
inline CMat2 gibbs_weyl_2pt(const Cx &zeta, Real alpha, const RVec4 &u1, const RVec4 &u2, const Cx &tau, long N)
{
    IsotropicPair p = isotropic_pair(u1, u2, alpha);
    const Real s2 = std::sin(2 * kPi * alpha), ct = std::cos(2 * kPi * alpha) / s2;
    Cx zm = zeta - alpha, zp = zeta + alpha;
    Cx p1m = elliptic_p_k11(1, zm, tau, N), p1p = elliptic_p_k11(1, zp, tau, N);
    Cx p2m = elliptic_p_k11(2, zm, tau, N), p2p = elliptic_p_k11(2, zp, tau, N);
    Cx a = p2m / kPi - ct * p1m + p1p / s2;
    Cx b = p2p / kPi + ct * p1p - p1m / s2;
    return (kI / (8 * kPi * s2)) * (a * slash_complex(p.v, true) + (-b) * slash_complex(p.vbar, true));
}

enum class ThermalKind { scalar4, weyl4 };

struct KmsReport {
    Real closed_residual = 0; // translate sum vs closed form
    Real shift_residual = 0;  // sum(zeta + tau) vs (-1)^{2d} sum(zeta)
    Real edge_bound = 0;
    bool pass = false;
};

// sum_{|k|<=K} (-1)^{2 k d} w0(zeta + k tau) compared with the closed
// Gibbs form and with its own tau-shift.
inline KmsReport kms_translate_sum_check(ThermalKind kind, const Cx &zeta, Real alpha, const Cx &tau, long K, Real tol,
                                         long N = 60)
{
    if (K < 3) throw usage_error("kms_translate_sum_check: window K must be at least 3");
    check_tau(tau);
    check_alpha(alpha);
    KmsReport r;
    const Real aq = std::abs(q_of(tau));
    if (kind == ThermalKind::scalar4) {
        auto sum = [&](const Cx &z) {
            Cx s = 0;
            for (long k = -K; k <= K; ++k) s += scalar_vacuum_2pt(z + Real(k) * tau, alpha);
            return s;
        };
        Cx s0 = sum(zeta);
        r.closed_residual = std::abs(s0 - gibbs_scalar_2pt(zeta, alpha, tau, N));
        r.shift_residual = std::abs(sum(zeta + tau) - s0);
        r.edge_bound = 4 * (std::abs(scalar_vacuum_2pt(zeta + Real(K) * tau, alpha)) +
                            std::abs(scalar_vacuum_2pt(zeta - Real(K) * tau, alpha))) /
                       (1 - aq);
    } else {
        auto [u1, u2] = canonical_units(alpha);
        IsotropicPair p = isotropic_pair(u1, u2, alpha);
        auto sum = [&](const Cx &z) {
            CMat2 s{};
            for (long k = -K; k <= K; ++k)
                s = s + Cx(k % 2 == 0 ? 1 : -1) * weyl_vacuum_2pt(z + Real(k) * tau, alpha, p);
            return s;
        };
        CMat2 s0 = sum(zeta);
        r.closed_residual = max_abs_diff(s0, gibbs_weyl_2pt(zeta, alpha, u1, u2, tau, N));
        r.shift_residual = max_abs_diff(sum(zeta + tau), Cx(-1) * s0);
        CMat2 zero{};
        r.edge_bound = 4 * (max_abs_diff(weyl_vacuum_2pt(zeta + Real(K) * tau, alpha, p), zero) +
                            max_abs_diff(weyl_vacuum_2pt(zeta - Real(K) * tau, alpha, p), zero)) /
                       (1 - aq);
    }
    if (r.edge_bound > tol) throw precision_error("kms_translate_sum_check: window too small for the tolerance");
    const Real slack = 1e-17L; // rounding floor of long double sums
    r.pass = r.closed_residual <= r.edge_bound + slack && r.shift_residual <= r.edge_bound + slack;
    return r;
}

} // namespace gci
