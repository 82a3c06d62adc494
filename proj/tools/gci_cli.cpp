// Command-line driver: decompositions, positivity scans, free-field
// oracles, thermal tables and the acceptance suite.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <gci/verify.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace gci;

namespace {

// Raised for verification failures that should end with exit code 1.
struct check_failed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    PWParams params{};
    int max_twist = 3;
    int max_spin = 3;
    std::optional<int> series_order;
    std::uint64_t seed = 1;
    std::map<std::string, double> tolerances;
    std::vector<std::string> tau_points;
    std::string csv_dir;
    std::string json_path;
};

// Raw flag values; applied on top of the config file.
struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> a0, a1, a2, b, c, B;
    std::optional<int> max_twist, max_spin, order;
    std::vector<std::string> tau;
    std::string json_path, csv_dir;
};

Rat json_rat(const json &v, const std::string &what)
{
    if (v.is_string()) return parse_rat(v.get<std::string>());
    if (v.is_number_integer()) return Rat(v.get<long>());
    throw usage_error("config: " + what + " must be an integer or a \"p/q\" string");
}

RunConfig load_config(const Flags &f)
{
    RunConfig rc;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw usage_error("cannot open config file " + f.config);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception &e) {
            throw usage_error(std::string("config: ") + e.what());
        }
        if (j.contains("params")) {
            const json &p = j["params"];
            std::map<std::string, Rat *> slots{{"a0", &rc.params.a0}, {"a1", &rc.params.a1}, {"a2", &rc.params.a2},
                                               {"b", &rc.params.b},   {"c", &rc.params.c},   {"B", &rc.params.B}};
            for (auto it = p.begin(); it != p.end(); ++it) {
                auto s = slots.find(it.key());
                if (s == slots.end()) throw usage_error("config: unknown parameter " + it.key());
                *s->second = json_rat(it.value(), it.key());
            }
        }
        try {
            if (j.contains("max_twist")) rc.max_twist = j["max_twist"].get<int>();
            if (j.contains("max_spin")) rc.max_spin = j["max_spin"].get<int>();
            if (j.contains("series_order")) rc.series_order = j["series_order"].get<int>();
            if (j.contains("seed")) rc.seed = j["seed"].get<std::uint64_t>();
            if (j.contains("tolerances"))
                for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it)
                    rc.tolerances[it.key()] = it.value().get<double>();
            if (j.contains("tau_points")) rc.tau_points = j["tau_points"].get<std::vector<std::string>>();
        } catch (const json::exception &e) {
            throw usage_error(std::string("config: ") + e.what());
        }
    }
    if (f.seed) rc.seed = *f.seed;
    auto over = [](const std::optional<std::string> &s, Rat &dst) {
        if (s) dst = parse_rat(*s);
    };
    over(f.a0, rc.params.a0);
    over(f.a1, rc.params.a1);
    over(f.a2, rc.params.a2);
    over(f.b, rc.params.b);
    over(f.c, rc.params.c);
    over(f.B, rc.params.B);
    if (f.max_twist) rc.max_twist = *f.max_twist;
    if (f.max_spin) rc.max_spin = *f.max_spin;
    if (f.order) rc.series_order = *f.order;
    if (!f.tau.empty()) rc.tau_points = f.tau;
    rc.csv_dir = f.csv_dir;
    rc.json_path = f.json_path;
    if (rc.max_twist < 1) throw usage_error("max-twist must be at least 1");
    if (rc.max_spin < 0) throw usage_error("max-spin must be nonnegative");
    for (auto &[k, v] : rc.tolerances)
        if (!(v > 0)) throw usage_error("tolerance " + k + " must be positive");
    return rc;
}

// Accepts "1.1i", "0.3+1.2i", "-0.5-2i", "i", "2".
Cx parse_tau(const std::string &text)
{
    static const std::regex re(R"(^\s*([+-]?\d*\.?\d+(?:[eE][+-]?\d+)?)?\s*(?:([+-])\s*(\d*\.?\d*(?:[eE][+-]?\d+)?)\s*i)?\s*$)");
    static const std::regex im_only(R"(^\s*([+-]?\d*\.?\d*(?:[eE][+-]?\d+)?)\s*i\s*$)");
    std::smatch m;
    auto num = [](const std::string &s) -> Real {
        if (s.empty() || s == "+") return 1;
        if (s == "-") return -1;
        return std::stold(s);
    };
    if (std::regex_match(text, m, im_only)) return Cx(0, num(m[1].str()));
    if (std::regex_match(text, m, re) && (m[1].matched || m[2].matched)) {
        Real r = m[1].matched ? std::stold(m[1].str()) : 0;
        Real i = 0;
        if (m[2].matched) i = (m[2].str() == "-" ? -1 : 1) * num(m[3].str());
        return Cx(r, i);
    }
    throw usage_error("malformed tau '" + text + "' (expected re+imi)");
}

std::string decimal(const Rat &r, int digits = 12)
{
    std::ostringstream s;
    s.precision(digits);
    s << r.get_d();
    return s.str();
}

std::string decimal(Real x)
{
    std::ostringstream s;
    s.precision(18);
    s << x;
    return s.str();
}

// Writes to csv_dir/name when a directory is set, otherwise to stdout.
class CsvSink {
public:
    CsvSink(const RunConfig &rc, const std::string &name)
    {
        if (rc.csv_dir.empty()) return;
        fs::create_directories(rc.csv_dir);
        path_ = (fs::path(rc.csv_dir) / name).string();
        file_.open(path_);
        if (!file_) throw usage_error("cannot write " + path_);
    }
    std::ostream &out() { return file_.is_open() ? static_cast<std::ostream &>(file_) : std::cout; }
    bool to_file() const { return file_.is_open(); }
    const std::string &path() const { return path_; }

private:
    std::string path_;
    std::ofstream file_;
};

double tolerance(const RunConfig &rc, const std::string &name, double dflt)
{
    auto it = rc.tolerances.find(name);
    return it == rc.tolerances.end() ? dflt : it->second;
}

int cmd_decompose(const RunConfig &rc)
{
    const int K = rc.max_twist, L = rc.max_spin;
    const int N = rc.series_order.value_or(default_series_order(K, L));
    TwistTower tw = twist_extract(rc.params, K, N);
    CsvSink table(rc, "structure_constants.csv");
    table.out() << "kappa,l,B,B_decimal,closed_form,match\n";
    bool mismatch = false;
    for (int k = 1; k <= K; ++k) {
        auto B = solve_structure_constants(tw.levels[static_cast<std::size_t>(k - 1)].g, k, L);
        for (int l = 0; l <= L; ++l) {
            const Rat &b = B[static_cast<std::size_t>(l)];
            std::string closed = "", match = "";
            if (k <= 3) {
                Rat cf = closed_form_B(k, l, rc.params);
                closed = to_fraction(cf);
                match = cf == b ? "yes" : "no";
                if (cf != b) mismatch = true;
            }
            table.out() << k << "," << l << "," << to_fraction(b) << "," << decimal(b) << "," << closed << "," << match
                        << "\n";
        }
    }
    CsvSink series(rc, "g_series.csv");
    if (series.to_file()) {
        series.out() << "kappa,power,coeff\n";
        for (auto &lvl : tw.levels)
            for (int n = 0; n <= lvl.g.order(); ++n) series.out() << lvl.kappa << "," << n << "," << to_fraction(lvl.g[n]) << "\n";
    }
    if (mismatch) throw check_failed("solver and closed forms disagree");
    return 0;
}

struct Grid {
    std::string param;
    std::string from, to;
    int steps = 0;
};

int cmd_positivity(const RunConfig &rc, const Grid &g, int l_scan)
{
    std::vector<PWParams> points;
    std::vector<Rat> values;
    if (g.param.empty()) {
        points.push_back(rc.params);
    } else {
        static const std::vector<std::string> names{"a0", "a1", "a2", "b", "c"};
        if (std::find(names.begin(), names.end(), g.param) == names.end()) throw usage_error("grid parameter must be one of a0 a1 a2 b c");
        if (g.steps < 1) throw usage_error("grid needs at least one step");
        Rat lo = parse_rat(g.from), hi = parse_rat(g.to);
        if (hi < lo) throw usage_error("grid bounds reversed");
        for (int i = 0; i <= g.steps; ++i) {
            Rat v = lo + (hi - lo) * Rat(i) / Rat(g.steps);
            PWParams p = rc.params;
            Rat *slot = g.param == "a0" ? &p.a0 : g.param == "a1" ? &p.a1 : g.param == "a2" ? &p.a2 : g.param == "b" ? &p.b : &p.c;
            *slot = v;
            points.push_back(p);
            values.push_back(v);
        }
    }
    CsvSink out(rc, "positivity.csv");
    out.out() << "a0,a1,a2,b,c,verdict,first_violation,gauge,trivial\n";
    for (auto &p : points) {
        auto r = positivity_check(p, l_scan);
        out.out() << to_fraction(p.a0) << "," << to_fraction(p.a1) << "," << to_fraction(p.a2) << "," << to_fraction(p.b)
                  << "," << to_fraction(p.c) << "," << r.verdict() << "," << r.first_violation << ","
                  << (r.gauge ? "yes" : "no") << "," << (r.trivial ? "yes" : "no") << "\n";
    }
    return 0;
}

int cmd_oracle(const RunConfig &rc, int only_n, int count, bool corrupt)
{
    RationalSampler rs(rc.seed);
    auto flip = [&](Rat x) { return corrupt ? Rat(-x) : x; };
    bool ok = true;
    std::vector<int> ns = only_n ? std::vector<int>{only_n} : std::vector<int>{2, 3, 4};
    for (int n : ns) {
        if (n < 2 || n > 4) throw usage_error("oracle: --n must be 2, 3 or 4");
        const int m = 2 * n;
        const int cnt = count > 0 ? count : (n == 2 ? 100 : n == 3 ? 25 : 10);
        std::vector<PointConfig> cs;
        for (int i = 0; i < cnt; ++i) cs.push_back(rs.config(static_cast<std::size_t>(m)));
        // c4 is fitted on a configuration outside the compared set.
        const Rat c4 = n == 4 ? fit_wick_normalization(4, {rs.config(8)}) : Rat(0);
        const RhoVars rv{8};
        int exact = 0;
        for (auto &c : cs) {
            if (n == 2 && flip(v1_weyl_4pt(c) * c.rho(0, 2) * c.rho(1, 3)) == verify_detail::j1_at(c)) ++exact;
            if (n == 3 && flip(elementary_value(c, identity_cycle(3))) == verify_detail::six_point_braces(c)) ++exact;
            if (n == 4) {
                bool all = true;
                for (auto &e : orbit_enumerate(4, false))
                    if (flip(cycle_trace_2n(c, e.cycle)) != wick_numerator(4, e.cycle, c4).eval(rv.values(c))) all = false;
                if (all) ++exact;
            }
        }
        Rat cn = fit_wick_normalization(n, {rs.config(static_cast<std::size_t>(m))});
        std::string symbolic = "-";
        if (n <= 3) {
            MPoly w = rho_in_coordinates(wick_numerator(n, identity_cycle(n), flip(cn)), m);
            bool same = w == cycle_trace_symbolic(identity_cycle(n));
            symbolic = same ? "identity" : "FAIL";
            if (!same) ok = false;
        }
        const char *what = n == 2 ? "trace vs j1" : n == 3 ? "six-point elementary term" : "Wick vs trace (numeric)";
        std::printf("n=%d %-26s %d/%d exact; symbolic Wick %s; fitted c%d = %s\n", n, what, exact, cnt, symbolic.c_str(), n,
                    to_fraction(cn).c_str());
        if (exact != cnt) ok = false;
    }
    if (!ok) throw check_failed("oracle comparison failed");
    return 0;
}

QSeries thermal_series(const std::string &model, long N)
{
    if (model == "scalar4") return energy_mean_scalar(4, N);
    if (model == "scalar6") return energy_mean_scalar(6, N);
    if (model == "weyl") return energy_mean_weyl(N);
    throw usage_error("thermal: --model must be scalar4, scalar6 or weyl");
}

int cmd_thermal_energy(const RunConfig &rc, const std::string &model)
{
    const long N = rc.series_order.value_or(10);
    if (N < 1) throw usage_error("thermal energy: --order must be at least 1");
    QSeries s = thermal_series(model, N);
    CsvSink out(rc, "energy_" + model + ".csv");
    out.out() << "exponent_num,exponent_den,coeff\n";
    for (auto &[k, c] : s.terms()) {
        Rat e = rat(k, 2);
        out.out() << e.get_num().get_str() << "," << e.get_den().get_str() << "," << to_fraction(c) << "\n";
    }
    std::FILE *info = out.to_file() ? stdout : stderr;
    std::fprintf(info, "# constant term %s\n", to_fraction(s.coeff(0)).c_str());
    if (model == "scalar6")
        std::fprintf(info, "# Lambert weights n=2,3,4: %s %s %s (q^4 coefficient %s collects n=2 and n=4)\n",
                     to_fraction(scalar_lambert_coefficient(6, 2)).c_str(), to_fraction(scalar_lambert_coefficient(6, 3)).c_str(),
                     to_fraction(scalar_lambert_coefficient(6, 4)).c_str(), to_fraction(s.coeff_q(4)).c_str());
    if (model == "weyl") {
        QSeries mod = energy_mean_weyl_modular(N);
        bool corrected = s == mod * Rat(-1);
        std::fprintf(info, "# Eisenstein form constant %s; fluctuation terms %s the negated Eisenstein form\n",
                     to_fraction(mod.coeff(0)).c_str(), corrected ? "match" : "DIFFER FROM");
        if (!corrected) throw check_failed("Weyl energy lines disagree");
    }
    return 0;
}

int cmd_thermal_modular(const RunConfig &rc, int k)
{
    std::vector<std::string> taus = rc.tau_points.empty() ? std::vector<std::string>{"1.1i"} : rc.tau_points;
    const long N = rc.series_order.value_or(300);
    const double tol = tolerance(rc, "modular", k == 1 ? 1e-8 : 1e-10);
    CsvSink out(rc, "modular_k" + std::to_string(k) + ".csv");
    out.out() << "check,tau_re,tau_im,residual,error_bound,tolerance,pass\n";
    bool ok = true;
    auto row = [&](const char *name, const Cx &tau, Real res, Real bound) {
        bool pass = res < tol;
        ok = ok && pass;
        out.out() << name << "," << decimal(tau.real()) << "," << decimal(tau.imag()) << "," << decimal(res) << ","
                  << decimal(bound) << "," << tol << "," << (pass ? "yes" : "no") << "\n";
    };
    for (auto &t : taus) {
        Cx tau = parse_tau(t);
        check_tau(tau);
        if (k >= 2) {
            auto r = modular_check_G(k, tau, N, tol);
            row("weight", tau, r.residual, r.bound);
        } else if (k == 1) {
            auto a = g2_anomaly_check(tau, N, tol);
            row("anomaly", tau, a.residual, a.bound);
            auto w = weight2_check(tau, N, tol);
            row("theta_S", tau, w.s_residual, w.bound);
            row("theta_T2", tau, w.t2_residual, w.bound);
        } else {
            throw usage_error("thermal modular: --k must be at least 1");
        }
    }
    if (!ok) throw check_failed("modular residual above tolerance");
    return 0;
}

int cmd_thermal_gibbs(const RunConfig &rc, Real alpha, int points, long K)
{
    std::vector<std::string> taus = rc.tau_points.empty() ? std::vector<std::string>{"1.5i"} : rc.tau_points;
    const double tol = tolerance(rc, "gibbs", 1e-12);
    const long N = rc.series_order.value_or(60);
    if (points < 1) throw usage_error("thermal gibbs: --points must be positive");
    CsvSink out(rc, "gibbs.csv");
    out.out() << "zeta,tau_re,tau_im,re,im,error_bound\n";
    bool ok = true;
    for (auto &t : taus) {
        Cx tau = parse_tau(t);
        check_tau(tau);
        for (int i = 0; i < points; ++i) {
            Real z = (Real(i) + Real(0.5)) / Real(points);
            if (std::fabs(std::sin(kPi * (z - alpha))) < 1e-6L || std::fabs(std::sin(kPi * (z + alpha))) < 1e-6L) continue;
            Cx a = gibbs_scalar_2pt(Cx(z), alpha, tau, N), b = gibbs_scalar_modes(Cx(z), alpha, tau, N);
            Real err = std::abs(a - b);
            out.out() << decimal(z) << "," << decimal(tau.real()) << "," << decimal(tau.imag()) << "," << decimal(a.real())
                      << "," << decimal(a.imag()) << "," << decimal(err) << "\n";
            if (err > tol * std::max<Real>(1, std::abs(a))) ok = false;
        }
        for (auto kind : {ThermalKind::scalar4, ThermalKind::weyl4}) {
            auto r = kms_translate_sum_check(kind, Cx(0.13L), alpha, tau, K, tolerance(rc, "kms", 1e-8));
            std::fprintf(out.to_file() ? stdout : stderr, "# %s translate sum: closed %s, shift %s, edge bound %s\n",
                         kind == ThermalKind::scalar4 ? "scalar" : "weyl", decimal(r.closed_residual).c_str(),
                         decimal(r.shift_residual).c_str(), decimal(r.edge_bound).c_str());
            ok = ok && r.pass;
        }
    }
    if (!ok) throw check_failed("Gibbs representations disagree");
    return 0;
}

int cmd_verify_all(const RunConfig &rc, std::optional<double> tol)
{
    VerifyOptions o;
    o.seed = rc.seed;
    if (tol) o.numeric_tol = *tol;
    else if (rc.tolerances.count("numeric")) o.numeric_tol = rc.tolerances.at("numeric");
    auto results = run_acceptance(o);
    json summary = json::array();
    int failed = 0;
    for (auto &r : results) {
        std::printf("[%s] %2d %-28s (%.2fs) %s\n", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds, r.detail.c_str());
        summary.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
        if (!r.pass) ++failed;
    }
    if (!rc.json_path.empty()) {
        std::ofstream f(rc.json_path);
        if (!f) throw usage_error("cannot write " + rc.json_path);
        f << json{{"seed", rc.seed}, {"failed", failed}, {"checks", summary}}.dump(2) << "\n";
    }
    if (failed) throw check_failed(std::to_string(failed) + " acceptance criteria failed");
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Rational conformal correlators: partial waves, free-field oracles, thermal series"};
    app.require_subcommand(1);
    Flags f;
    app.add_option("--config", f.config, "JSON run configuration");
    app.add_option("--seed", f.seed, "seed for random configurations");
    app.add_option("--a0", f.a0, "parameter a0 (rational)");
    app.add_option("--a1", f.a1, "parameter a1 (rational)");
    app.add_option("--a2", f.a2, "parameter a2 (rational)");
    app.add_option("--b", f.b, "parameter b (rational)");
    app.add_option("--c", f.c, "parameter c (rational)");
    app.add_option("--B", f.B, "2-point normalization B (rational)");
    app.add_option("--max-twist", f.max_twist, "largest twist index");
    app.add_option("--max-spin", f.max_spin, "largest spin index");
    app.add_option("--order", f.order, "series order");
    app.add_option("--tau", f.tau, "modular parameter(s), e.g. 0.3+1.2i");
    app.add_option("--json", f.json_path, "JSON summary path");
    app.add_option("--csv-dir", f.csv_dir, "directory for CSV output");

    auto *dec = app.add_subcommand("decompose", "structure constants from the twist tower")->fallthrough();

    Grid grid;
    int l_scan = 50;
    auto *pos = app.add_subcommand("positivity", "admissibility verdicts on a parameter grid")->fallthrough();
    pos->add_option("--grid", grid.param, "parameter to scan (a0 a1 a2 b c)");
    pos->add_option("--from", grid.from, "grid start (rational)");
    pos->add_option("--to", grid.to, "grid end (rational)");
    pos->add_option("--steps", grid.steps, "number of grid intervals");
    pos->add_option("--l-scan", l_scan, "spin range of the closed-form scan");

    int oracle_n = 0, oracle_count = 0;
    bool corrupt = false;
    auto *orc = app.add_subcommand("oracle", "free-field trace and Wick oracles")->fallthrough();
    orc->add_option("--n", oracle_n, "restrict to 2n points (2, 3 or 4)");
    orc->add_option("--count", oracle_count, "number of random configurations");
    orc->add_flag("--corrupt-sign", corrupt, "flip one sign to exercise the failure path");

    auto *th = app.add_subcommand("thermal", "thermal series and numerics")->fallthrough();
    th->require_subcommand(1);
    std::string model = "scalar4";
    auto *energy = th->add_subcommand("energy", "energy mean value series")->fallthrough();
    energy->add_option("--model", model, "scalar4, scalar6 or weyl");
    int k = 2;
    auto *modular = th->add_subcommand("modular", "modular transformation residuals")->fallthrough();
    modular->add_option("--k", k, "Eisenstein index (weight 2k); 1 checks the weight-2 anomaly");
    double alpha = 0.37;
    int points = 16;
    long kms_window = 8;
    auto *gibbs = th->add_subcommand("gibbs", "Gibbs 2-point tables and translate sums")->fallthrough();
    gibbs->add_option("--alpha", alpha, "angle parameter");
    gibbs->add_option("--points", points, "zeta grid size");
    gibbs->add_option("--K", kms_window, "translate-sum window");

    std::optional<double> vtol;
    auto *va = app.add_subcommand("verify-all", "run every acceptance criterion")->fallthrough();
    va->add_option("--tol", vtol, "replace every numeric tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return 2;
    }

    try {
        RunConfig rc = load_config(f);
        if (*dec) return cmd_decompose(rc);
        if (*pos) return cmd_positivity(rc, grid, l_scan);
        if (*orc) return cmd_oracle(rc, oracle_n, oracle_count, corrupt);
        if (*energy) return cmd_thermal_energy(rc, model);
        if (*modular) return cmd_thermal_modular(rc, k);
        if (*gibbs) return cmd_thermal_gibbs(rc, alpha, points, kms_window);
        if (*va) return cmd_verify_all(rc, vtol);
    } catch (const check_failed &e) {
        std::fprintf(stderr, "verification failed: %s\n", e.what());
        return 1;
    } catch (const usage_error &e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const unsupported_error &e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return 2;
    } catch (const precision_error &e) {
        std::fprintf(stderr, "precision error: %s\n", e.what());
        return 1;
    } catch (const gci::error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
