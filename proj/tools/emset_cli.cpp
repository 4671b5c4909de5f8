// Command-line front end: every subsystem behind one batch tool with JSON
// configs, deterministic seeding and CSV/JSON outputs.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "emset/asym.hpp"
#include "emset/boltz.hpp"
#include "emset/io.hpp"
#include "emset/llt.hpp"
#include "emset/mset.hpp"
#include "emset/series.hpp"
#include "emset/solve.hpp"

using namespace emset;
using io::json;
using io::Table;

namespace {

struct CliOptions {
    std::string config_path;
    std::string out_path;
    std::string format = "csv";
    std::uint64_t seed = 1;
    bool seed_set = false;
    int threads = 1;
    unsigned precision = 128;
    bool exact = false;
    bool window_override = false;
};

struct Run {
    CliOptions opt;
    json config;
    io::SpecDocument spec;
    std::vector<std::pair<std::string, std::string>> outputs;  // path -> content

    long get_long(const char* key) const { return config.at(key).get<long>(); }
    long get_long_or(const char* key, long dflt) const {
        return config.contains(key) ? config.at(key).get<long>() : dflt;
    }
    double get_double_or(const char* key, double dflt) const {
        return config.contains(key) ? config.at(key).get<double>() : dflt;
    }

    void emit(const std::string& suffix, const Table& table) {
        std::string body = opt.format == "json" ? table.to_json().dump(2) + "\n" : table.to_csv();
        if (opt.out_path.empty()) {
            std::fputs(body.c_str(), stdout);
            return;
        }
        std::string path = opt.out_path;
        if (!suffix.empty()) path += suffix;
        outputs.emplace_back(path, body);
    }

    void check_keys(std::initializer_list<const char*> required,
                    std::initializer_list<const char*> optional_keys) const {
        std::vector<const char*> opt_all = {"schema", "spec",    "command", "out",
                                            "format", "seed",    "threads", "precision",
                                            "exact",  "window_override"};
        for (const char* k : optional_keys) opt_all.push_back(k);
        for (const char* k : required)
            if (!config.contains(k)) throw ConfigError(std::string("config: missing key '") + k + "'");
        for (auto it = config.begin(); it != config.end(); ++it) {
            bool known = false;
            for (const char* k : required)
                if (it.key() == k) known = true;
            for (const char* k : opt_all)
                if (it.key() == k) known = true;
            if (!known) throw ConfigError("config: unknown key '" + it.key() + "'");
        }
    }
};

template <class T>
std::string fmt(const T& v) {
    return io::format_real(v);
}

std::vector<long> long_array(const json& j) {
    std::vector<long> v;
    for (const auto& e : j) v.push_back(e.get<long>());
    return v;
}
std::vector<double> double_array(const json& j) {
    std::vector<double> v;
    for (const auto& e : j) v.push_back(e.get<double>());
    return v;
}

// ---- transform ------------------------------------------------------------

template <class T>
void run_transform_typed(Run& run) {
    long n_max = run.get_long_or("n_max", 40);
    long N_max = run.get_long_or("N_max", n_max);
    series::CoeffVector<T> c;
    if (run.spec.is_raw()) {
        std::vector<T> w;
        for (const auto& q : run.spec.raw) w.push_back(num::from_rational<T>(q));
        c = series::from_raw<T>(std::move(w));
        if (c.n_max() < n_max) {
            series::CoeffVector<T> padded(n_max);
            for (long k = 0; k <= c.n_max(); ++k) padded[k] = c[k];
            c = padded;
        }
    } else {
        c = series::build_C<T>(*run.spec.spec, n_max);
    }
    auto te = series::mset_exp_transform(c, n_max, N_max);
    auto tp = series::mset_product_transform(c, n_max, N_max);

    auto dump = [&](const series::BivariateTable<T>& t) {
        Table out;
        out.header = {"n", "N", "g"};
        for (long n = 0; n <= t.n_max; ++n)
            for (long N = 0; N <= t.N_max; ++N)
                if (!(t.g(n, N) == T(0)))
                    out.add_row({std::to_string(n), std::to_string(N), fmt(t.g(n, N))});
        return out;
    };
    run.emit("", dump(te));
    run.emit(".product.csv", dump(tp));

    bool equal = true;
    double max_rel = 0;
    for (long n = 0; n <= n_max && equal; ++n)
        for (long N = 0; N <= N_max; ++N) {
            const T &a = te.g(n, N), &b = tp.g(n, N);
            if (a == b) continue;
            if constexpr (num::is_exact_v<T>) {
                equal = false;
                break;
            } else {
                double rel = std::fabs(num::to_d(a - b)) /
                             std::max({std::fabs(num::to_d(a)), std::fabs(num::to_d(b)), 1e-300});
                max_rel = std::max(max_rel, rel);
            }
        }
    if constexpr (!num::is_exact_v<T>) equal = max_rel < 1e-15;
    json rep = {{"transforms_equal", equal}, {"max_rel_diff", max_rel}};
    Table rt;
    rt.header = {"transforms_equal", "max_rel_diff"};
    rt.add_row({equal ? "true" : "false", io::format_real(max_rel)});
    run.emit(".report.csv", rt);
    if (!equal) throw PrecisionError("transform: exp and product tables differ");
}

// ---- saddle / nstar --------------------------------------------------------

template <class T>
Table saddle_table(const saddle::SaddleSolution<T>& sol) {
    Table t;
    t.header = {"n",    "N",     "x_n",           "y_n",           "chi_n", "S_n",
                "residual_size", "residual_count", "regime",        "lambda", "n_star"};
    t.add_row({std::to_string(sol.n), std::to_string(sol.N), fmt(sol.x), fmt(sol.y), fmt(sol.chi),
               fmt(sol.S), fmt(sol.residual_size), fmt(sol.residual_count),
               saddle::regime_name(sol.regime), fmt(sol.lambda), fmt(sol.n_star)});
    return t;
}

template <class T>
void run_saddle_typed(Run& run) {
    auto ev = io::make_evaluator<T>(run.spec);
    long n = run.get_long("n");
    T tol = T(run.get_double_or("tol", 1e-12));
    if (run.config.contains("N")) {
        auto sol = saddle::solve_bivariate(ev, n, run.get_long("N"), tol);
        run.emit("", saddle_table(sol));
    } else {
        T z = saddle::solve_univariate(ev, n, tol);
        auto d = ev.derivs(z, 1, tol);
        Table t;
        t.header = {"n", "z_n", "residual"};
        t.add_row({std::to_string(n), fmt(z), fmt(z * d.v[1] - T(n))});
        run.emit("", t);
    }
}

template <class T>
void run_nstar_typed(Run& run) {
    if (run.spec.is_raw()) throw ConfigError("nstar: expansive spec required");
    T v = T(run.config.at("v").get<double>());
    T tol = T(run.get_double_or("tol", 1e-12));
    auto ns = saddle::solve_Nstar<T>(*run.spec.spec, v, tol);
    Table t;
    t.header = {"v", "u_v", "g_v", "N_star", "C0"};
    t.add_row({fmt(ns.v), fmt(ns.u), fmt(ns.g), fmt(ns.N_star), fmt(ns.C0)});
    run.emit("", t);
}

// ---- asym / compare ---------------------------------------------------------

template <class T>
long double exact_log_gnN(const io::SpecDocument& doc, long n, long N) {
    series::CoeffVector<T> c;
    if (doc.is_raw()) {
        std::vector<T> w;
        for (const auto& q : doc.raw) w.push_back(num::from_rational<T>(q));
        c = series::from_raw<T>(std::move(w));
        if (c.n_max() < n) {
            series::CoeffVector<T> padded(n);
            for (long k = 0; k <= c.n_max(); ++k) padded[k] = c[k];
            c = padded;
        }
    } else {
        c = series::build_C<T>(*doc.spec, n);
    }
    auto t = series::mset_exp_transform(c, n, N);
    T v = t.g(n, N);
    if (!(v > T(0))) throw DomainError("exact g_{n,N} is zero");
    using std::log;
    return static_cast<long double>(num::to_d(log(v)));
}

template <class T>
void run_asym_typed(Run& run) {
    auto ev = io::make_evaluator<T>(run.spec);
    long n = run.get_long("n");
    T tol = T(run.get_double_or("tol", 1e-12));
    Table t;
    t.header = {"formula", "n", "N", "log_value", "regime"};
    if (!run.config.contains("N")) {
        auto est = asym::g_n_formula(ev, n, tol);
        t.add_row({asym::formula_name(est.formula), std::to_string(n), "", fmt(est.log_value),
                   saddle::regime_name(est.regime)});
        run.emit("", t);
        return;
    }
    long N = run.get_long("N");
    auto sol = saddle::solve_bivariate(ev, n, N, tol);
    if (sol.regime == saddle::Regime::Window)
        throw DomainError("asym: lambda in the open scaling window; no formula applies");
    std::vector<asym::Formula> forms;
    if (sol.regime == saddle::Regime::CaseI)
        forms = {asym::Formula::LLT_I, asym::Formula::Explicit_I, asym::Formula::Comb_I};
    else
        forms = {asym::Formula::LLT_II, asym::Formula::Comb_II};
    for (auto f : forms) {
        auto est = sol.regime == saddle::Regime::CaseI ? asym::gnN_case1(ev, sol, f, tol)
                                                       : asym::gnN_case2(ev, sol, f, tol);
        t.add_row({asym::formula_name(est.formula), std::to_string(n), std::to_string(N),
                   fmt(est.log_value), saddle::regime_name(est.regime)});
    }
    run.emit("", t);
}

template <class T>
void run_compare_typed(Run& run) {
    auto ev = io::make_evaluator<T>(run.spec);
    auto n_grid = long_array(run.config.at("n_grid"));
    double lambda = run.get_double_or("lambda", 0.5);
    long exact_guard = run.get_long_or("exact_guard", 2000);
    T tol = T(run.get_double_or("tol", 1e-12));

    Table t;
    t.header = {"n", "N", "lambda", "regime", "exact_log", "formula", "formula_log", "ratio",
                "regime_match"};
    for (long n : n_grid) {
        auto ns = saddle::solve_Nstar<T>(ev.spec(), T(n), tol);
        long N = static_cast<long>(std::floor(lambda * num::to_d(ns.N_star)));
        if (N < 1 || n - ev.m() * N < 1) throw DomainError("compare: infeasible (n, N)");
        auto sol = saddle::solve_bivariate(ev, n, N, tol);
        if (n > exact_guard) throw SizeError("compare: n exceeds the exact-table guard");
        long double exact_log = exact_log_gnN<T>(run.spec, n, N);
        auto push = [&](const asym::AsymptoticEstimate<T>& est, bool match) {
            long double fl = static_cast<long double>(num::to_d(est.log_value));
            t.add_row({std::to_string(n), std::to_string(N), io::format_real(sol.lambda),
                       saddle::regime_name(sol.regime), io::format_real(exact_log),
                       asym::formula_name(est.formula), io::format_real(fl),
                       io::format_real(static_cast<long double>(expl(fl - exact_log))),
                       match ? "yes" : "mismatch"});
        };
        bool case1 = sol.regime == saddle::Regime::CaseI;
        if (sol.regime == saddle::Regime::Window) continue;
        auto push_guarded = [&](asym::Formula f, bool is_case1_form) {
            bool match = is_case1_form == case1;
            try {
                auto est = is_case1_form ? asym::gnN_case1(ev, sol, f, tol, true)
                                         : asym::gnN_case2(ev, sol, f, tol, true);
                push(est, match);
            } catch (const DomainError&) {
                // mismatched constant can genuinely diverge; mark the row
                t.add_row({std::to_string(n), std::to_string(N), io::format_real(sol.lambda),
                           saddle::regime_name(sol.regime), io::format_real(exact_log),
                           asym::formula_name(f), "diverges", "inf", "mismatch"});
            }
        };
        for (auto f : {asym::Formula::LLT_I, asym::Formula::Explicit_I, asym::Formula::Comb_I})
            push_guarded(f, true);
        for (auto f : {asym::Formula::LLT_II, asym::Formula::Comb_II})
            push_guarded(f, false);
    }
    run.emit("", t);
}

template <class T>
void run_phase_sweep_typed(Run& run) {
    auto ev = io::make_evaluator<T>(run.spec);
    long n = run.get_long("n");
    auto lambdas = double_array(run.config.at("lambda_grid"));
    long exact_guard = run.get_long_or("exact_guard", 2000);
    T tol = T(run.get_double_or("tol", 1e-12));

    Table t;
    t.header = {"lambda", "n",   "N",   "x_n", "y_n", "chi_n", "S_n", "S_over_N",
                "a_n",    "regime", "formula", "formula_log", "exact_log", "notice"};
    auto ns_n = saddle::solve_Nstar<T>(ev.spec(), T(n), tol);
    for (double lam : lambdas) {
        bool window_band = lam > 0.95 && lam < 1.05;
        if (window_band && !run.opt.window_override) {
            t.add_row({io::format_real(lam), std::to_string(n), "", "", "", "", "", "", "", "Window",
                       "", "", "", "skipped: open scaling window"});
            continue;
        }
        long N = static_cast<long>(std::floor(lam * num::to_d(ns_n.N_star)));
        if (N < 1 || n - ev.m() * N < 1) {
            t.add_row({io::format_real(lam), std::to_string(n), std::to_string(N), "", "", "", "",
                       "", "", "", "", "", "", "skipped: infeasible"});
            continue;
        }
        auto sol = saddle::solve_bivariate(ev, n, N, tol);
        auto ns_rest = saddle::solve_Nstar<T>(ev.spec(), T(n - ev.m() * N), tol);
        T a_n = saddle::compute_a_n<T>(ev.spec(), n, N, ns_n, ns_rest);
        std::string formula, flog, elog, notice;
        if (sol.regime == saddle::Regime::Window) {
            notice = "window: saddle data only";
        } else if (sol.regime == saddle::Regime::CaseI) {
            auto est = asym::gnN_case1(ev, sol, asym::Formula::LLT_I, tol);
            formula = asym::formula_name(est.formula);
            flog = fmt(est.log_value);
        } else {
            auto est = asym::gnN_case2(ev, sol, asym::Formula::LLT_II, tol);
            formula = asym::formula_name(est.formula);
            flog = fmt(est.log_value);
        }
        if (n <= exact_guard && sol.regime != saddle::Regime::Window)
            elog = io::format_real(exact_log_gnN<T>(run.spec, n, N));
        t.add_row({io::format_real(lam), std::to_string(n), std::to_string(N), fmt(sol.x),
                   fmt(sol.y), fmt(sol.chi), fmt(sol.S), fmt(sol.S / T(N)), fmt(a_n),
                   saddle::regime_name(sol.regime), formula, flog, elog, notice});
    }
    run.emit("", t);
}

// ---- sampling ---------------------------------------------------------------

template <class T>
boltz::BoltzmannParams sample_params(Run& run, const saddle::Evaluator<T>& ev) {
    double eps = run.get_double_or("eps", 1e-12);
    if (run.config.contains("x0")) {
        T x0 = T(run.config.at("x0").get<double>());
        T y0 = T(run.get_double_or("y0", 1.0));
        return boltz::params_at(ev, x0, y0, eps);
    }
    long n = run.get_long("n");
    std::optional<long> N;
    if (run.config.contains("N")) N = run.get_long("N");
    return boltz::tune(ev, n, N, eps);
}

template <class T>
void run_sample_typed(Run& run) {
    auto ev = io::make_evaluator<T>(run.spec);
    auto params = sample_params(run, ev);
    long trials = run.get_long_or("trials", 1000);
    int threads = run.opt.threads;

    std::vector<std::pair<long, long>> results(static_cast<size_t>(trials));
    auto worker = [&](long lo, long hi) {
        for (long i = lo; i < hi; ++i) {
            boltz::Rng rng = boltz::Rng::substream(run.opt.seed, static_cast<std::uint64_t>(i));
            auto s = boltz::sample_lambda(params, rng);
            results[static_cast<size_t>(i)] = {s.size, s.count};
        }
    };
    if (threads <= 1) {
        worker(0, trials);
    } else {
        std::vector<std::thread> pool;
        long chunk = (trials + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            long lo = w * chunk, hi = std::min<long>(trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    Table t;
    t.header = {"seed", "index", "size", "count"};
    for (long i = 0; i < trials; ++i)
        t.add_row({std::to_string(run.opt.seed), std::to_string(i),
                   std::to_string(results[static_cast<size_t>(i)].first),
                   std::to_string(results[static_cast<size_t>(i)].second)});
    run.emit("", t);
}

template <class T>
void run_estimate_typed(Run& run) {
    auto ev = io::make_evaluator<T>(run.spec);
    long n = run.get_long("n");
    long N = run.get_long("N");
    long trials = run.get_long_or("trials", 100000);
    auto params = sample_params(run, ev);
    auto r = boltz::estimate_gnN(params, n, N, trials, run.opt.seed, run.opt.threads);
    Table t;
    t.header = {"n", "N", "log_estimate", "se", "trials", "seed", "hits"};
    t.add_row({std::to_string(n), std::to_string(N), io::format_real(r.log_estimate),
               io::format_real(r.std_error), std::to_string(trials), std::to_string(run.opt.seed),
               std::to_string(r.hits)});
    run.emit("", t);
}

template <class T>
void run_llt_typed(Run& run) {
    auto ev = io::make_evaluator<T>(run.spec);
    long n = run.get_long("n");
    long N = run.get_long("N");
    auto p_grid = long_array(run.config.at("p_grid"));
    auto t_grid = run.config.contains("t_grid") ? double_array(run.config.at("t_grid"))
                                                 : std::vector<double>{0.0, 1.0, 2.0};
    auto rows = llt::llt_check(ev, n, N, p_grid, t_grid);
    Table t;
    t.header = {"p", "t", "lattice_s", "lattice_offset", "exact", "predicted", "ratio"};
    for (const auto& r : rows)
        t.add_row({std::to_string(r.p), io::format_real(r.t), std::to_string(r.lattice_s),
                   io::format_real(r.lattice_offset), io::format_real(r.exact),
                   io::format_real(r.predicted), io::format_real(r.ratio)});
    run.emit("", t);
}

template <class T>
void run_check_sv_typed(Run& run) {
    if (run.spec.is_raw()) throw ConfigError("check-sv: expansive spec required");
    const auto& spec = *run.spec.spec;
    std::vector<long> kgrid = run.config.contains("karamata_grid")
                                  ? long_array(run.config.at("karamata_grid"))
                                  : std::vector<long>{1000, 10000, 100000, 1000000};
    double delta = run.get_double_or("subpoly_delta", 0.1);

    auto rep = model::karamata_check(spec, kgrid);
    Table t;
    t.header = {"check", "x", "value"};
    for (auto& [x, r] : rep.karamata)
        t.add_row({"karamata", io::format_real(x), io::format_real(r)});
    std::vector<double> sgrid;
    for (long x : kgrid) sgrid.push_back(static_cast<double>(x));
    for (auto& [x, ok] : model::subpoly_check(spec.h, delta, sgrid))
        t.add_row({"subpoly", io::format_real(x), ok ? "1" : "0"});
    for (double lam : {0.5, 2.0, 10.0})
        for (auto& [x, dev] : model::sv_ratio_deviation(spec.h, lam, sgrid))
            t.add_row({"sv_ratio_lambda=" + io::format_real(lam), io::format_real(x),
                       io::format_real(dev)});
    run.emit("", t);
}

// ---- dispatch ---------------------------------------------------------------

void run_command(const std::string& cmd, Run& run) {
    const bool big = run.opt.precision > 64;
    if (big) num::set_float_precision_bits(run.opt.precision);

    if (cmd == "transform") {
        run.check_keys({}, {"n_max", "N_max"});
        if (run.opt.exact) {
            if (!run.spec.exact_eligible())
                throw ConfigError("exact mode requires rational weights (integral alpha, "
                                  "logarithm-free h)");
            run_transform_typed<Rational>(run);
        } else if (big) {
            run_transform_typed<BigReal>(run);
        } else {
            run_transform_typed<long double>(run);
        }
        return;
    }
    if (run.opt.exact) throw ConfigError("exact mode applies to the transform command only");

    auto dispatch = [&](auto fn_ld, auto fn_big) {
        if (big)
            fn_big(run);
        else
            fn_ld(run);
    };
    if (cmd == "saddle") {
        run.check_keys({"n"}, {"N", "tol"});
        dispatch(run_saddle_typed<long double>, run_saddle_typed<BigReal>);
    } else if (cmd == "nstar") {
        run.check_keys({"v"}, {"tol"});
        dispatch(run_nstar_typed<long double>, run_nstar_typed<BigReal>);
    } else if (cmd == "asym") {
        run.check_keys({"n"}, {"N", "tol"});
        dispatch(run_asym_typed<long double>, run_asym_typed<BigReal>);
    } else if (cmd == "compare") {
        run.check_keys({"n_grid"}, {"lambda", "exact_guard", "tol"});
        dispatch(run_compare_typed<long double>, run_compare_typed<BigReal>);
    } else if (cmd == "phase-sweep") {
        run.check_keys({"n", "lambda_grid"}, {"exact_guard", "tol"});
        dispatch(run_phase_sweep_typed<long double>, run_phase_sweep_typed<BigReal>);
    } else if (cmd == "sample") {
        run.check_keys({}, {"n", "N", "x0", "y0", "trials", "eps"});
        run_sample_typed<long double>(run);
    } else if (cmd == "estimate") {
        run.check_keys({"n", "N"}, {"x0", "y0", "trials", "eps"});
        run_estimate_typed<long double>(run);
    } else if (cmd == "llt") {
        run.check_keys({"n", "N", "p_grid"}, {"t_grid"});
        dispatch(run_llt_typed<long double>, run_llt_typed<BigReal>);
    } else if (cmd == "check-sv") {
        run.check_keys({}, {"karamata_grid", "subpoly_delta"});
        dispatch(run_check_sv_typed<long double>, run_check_sv_typed<BigReal>);
    } else {
        throw ConfigError("unknown command: " + cmd);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"expansive multiset enumeration toolkit"};
    app.require_subcommand(1);

    CliOptions opt;
    std::vector<CLI::App*> subs;
    for (const char* name : {"transform", "saddle", "nstar", "asym", "compare", "sample",
                             "estimate", "llt", "phase-sweep", "check-sv"}) {
        auto* s = app.add_subcommand(name);
        s->add_option("--config", opt.config_path, "JSON config path")->required();
        s->add_option("--out", opt.out_path, "output path (stdout when absent)");
        s->add_option("--format", opt.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
        s->add_option("--seed", opt.seed, "master RNG seed");
        s->add_option("--threads", opt.threads, "worker threads");
        s->add_option("--precision", opt.precision, "float mantissa bits (64 = native)");
        s->add_flag("--exact", opt.exact, "exact rational arithmetic (transform only)");
        s->add_flag("--window-override", opt.window_override,
                    "keep scaling-window rows in sweeps (saddle data only)");
        subs.push_back(s);
    }

    CLI11_PARSE(app, argc, argv);

    auto t0 = std::chrono::steady_clock::now();
    try {
        Run run;
        run.opt = opt;
        std::ifstream is(opt.config_path);
        if (!is) throw ConfigError("cannot open config: " + opt.config_path);
        run.config = json::parse(is);
        if (!run.config.contains("schema") || run.config.at("schema") != io::kSchema)
            throw ConfigError(std::string("config: expected schema '") + io::kSchema + "'");
        if (!run.config.contains("spec")) throw ConfigError("config: missing 'spec'");
        run.spec = io::parse_spec(run.config.at("spec"));

        std::string cmd = app.get_subcommands().front()->get_name();
        if (run.config.contains("command") && run.config.at("command") != cmd)
            throw ConfigError("config 'command' does not match the CLI subcommand");

        // config-level fallbacks for unset flags
        if (run.config.contains("seed") && !app.get_subcommands().front()->count("--seed"))
            run.opt.seed = run.config.at("seed").get<std::uint64_t>();

        run_command(cmd, run);

        double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!run.opt.out_path.empty()) {
            io::RunManifest man;
            man.config_echo = run.config;
            man.arithmetic_mode = run.opt.exact
                                      ? "exact-rational"
                                      : (run.opt.precision > 64
                                             ? "mpfr-" + std::to_string(run.opt.precision)
                                             : "float-64bit-mantissa");
            man.wall_time_s = wall;
            for (auto& [path, body] : run.outputs) {
                io::write_file(path, body);
                man.outputs.emplace_back(path, io::fnv1a64(body));
            }
            io::write_file(run.opt.out_path + ".manifest.json", man.to_json().dump(2) + "\n");
        }
        return io::kOk;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return io::kConfigError;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "domain error: %s\n", e.what());
        return io::kDomainError;
    } catch (const PrecisionError& e) {
        std::fprintf(stderr, "precision error: %s\n", e.what());
        return io::kPrecisionError;
    } catch (const SizeError& e) {
        std::fprintf(stderr, "size error: %s\n", e.what());
        return io::kSizeError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
