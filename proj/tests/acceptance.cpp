// Acceptance suite: runs the numbered criteria and prints one line each.
// Usage: acceptance [k ...]  (no arguments = all). Exit code = #failures.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "emset/asym.hpp"
#include "emset/boltz.hpp"
#include "emset/chisq.hpp"
#include "emset/io.hpp"
#include "emset/llt.hpp"
#include "emset/mset.hpp"

using namespace emset;
using model::ExpansiveSpec;
using model::SlowlyVarying;
using saddle::Evaluator;
using LD = long double;

namespace {

double now_s() {
    using namespace std::chrono;
    return duration<double>(steady_clock::now().time_since_epoch()).count();
}

ExpansiveSpec base_spec() {
    return ExpansiveSpec(Rational(1), Rational(1, 2), SlowlyVarying::one(), 1);
}

series::CoeffVector<Rational> partition_weights_q(long n_max) {
    series::CoeffVector<Rational> c(n_max);
    for (long k = 1; k <= n_max; ++k) c[k] = 1;
    return c;
}

// independent brute-force partition counting (recursive enumeration)
void enum_partitions(long rest, long max_part, std::vector<long>& parts,
                     const std::function<void(const std::vector<long>&)>& cb) {
    if (rest == 0) {
        cb(parts);
        return;
    }
    for (long p = std::min(rest, max_part); p >= 1; --p) {
        parts.push_back(p);
        enum_partitions(rest - p, p, parts, cb);
        parts.pop_back();
    }
}

std::vector<emset::Rational> random_rational_weights(std::uint64_t seed, size_t len) {
    boltz::Rng rng(seed);
    std::vector<Rational> w;
    for (size_t i = 0; i < len; ++i) {
        long k = static_cast<long>(rng.next_u64() % 81);  // [0,5] in sixteenths
        w.emplace_back(k, 16);
        w.back().canonicalize();
    }
    return w;
}

std::string fnum(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.6g", v);
    return b;
}

// exact univariate g_n in float mode
std::vector<LD> exact_g_univariate(const ExpansiveSpec& spec, long n_max) {
    auto c = series::build_C<LD>(spec, n_max);
    series::CoeffVector<LD> d(n_max);
    for (long j = 1; j <= n_max; ++j)
        for (long k = 1; j * k <= n_max && k <= c.n_max(); ++k) d[j * k] += c[k] / (LD)j;
    auto g = series::series_exp(d, n_max);
    std::vector<LD> out;
    for (long i = 0; i <= n_max; ++i) out.push_back(g[i]);
    return out;
}

// ---------------------------------------------------------------------------

bool crit1_transform_equivalence(std::string& detail) {
    double t0 = now_s();
    long checked = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto w = random_rational_weights(seed, 30);
        series::CoeffVector<Rational> c(60);
        for (size_t i = 0; i < w.size(); ++i) c[static_cast<long>(i) + 1] = w[i];
        auto a = series::mset_exp_transform(c, 60, 60);
        auto b = series::mset_product_transform(c, 60, 60);
        if (!(a == b)) {
            detail = "random vector seed " + std::to_string(seed) + " differs";
            return false;
        }
        ++checked;
    }
    auto cp = partition_weights_q(60);
    auto a = series::mset_exp_transform(cp, 60, 60);
    auto b = series::mset_product_transform(cp, 60, 60);
    if (!(a == b)) {
        detail = "partition weights differ";
        return false;
    }
    double dt = now_s() - t0;
    detail = std::to_string(checked + 1) + " weight vectors bit-exact at (60,60), " + fnum(dt) + " s";
    return dt <= 60.0;
}

bool crit2_partition_oracle(std::string& detail) {
    double t0 = now_s();
    auto c = partition_weights_q(40);
    auto t = series::mset_exp_transform(c, 40, 40);
    auto sums = t.row_sums();
    for (long n = 1; n <= 40; ++n) {
        long count = 0;
        std::vector<long> parts;
        enum_partitions(n, n, parts, [&](const std::vector<long>&) { ++count; });
        if (sums[static_cast<size_t>(n)] != Rational(count)) {
            detail = "row sum mismatch at n=" + std::to_string(n);
            return false;
        }
    }
    if (t.g(5, 2) != Rational(2)) {
        detail = "g[5][2] != 2";
        return false;
    }
    std::vector<long> want = {1, 2, 1, 1};
    for (long N = 1; N <= 4; ++N)
        if (t.g(4, N) != Rational(want[static_cast<size_t>(N - 1)])) {
            detail = "g[4] row mismatch";
            return false;
        }
    double dt = now_s() - t0;
    detail = "row sums = p(n) for n <= 40 (enumeration oracle), " + fnum(dt) + " s";
    return dt <= 5.0;
}

std::vector<ExpansiveSpec> spec_grid() {
    std::vector<ExpansiveSpec> out;
    for (auto alpha : {Rational(1, 2), Rational(1), Rational(2)})
        for (auto rho : {Rational(3, 10), Rational(1, 2)})
            for (int hlog : {0, 1})
                for (unsigned m : {1u, 2u})
                    out.emplace_back(alpha, rho,
                                     hlog ? SlowlyVarying::log_power(1.0) : SlowlyVarying::one(),
                                     m);
    return out;
}

struct GridPoint {
    long n, N;
    double lambda;
    saddle::SaddleSolution<LD> sol;
};

// solves every feasible point of the criterion-3 grid for one spec
std::vector<GridPoint> solve_grid(const Evaluator<LD>& ev, long& skipped) {
    std::vector<GridPoint> pts;
    for (long n : {1000L, 10000L, 100000L}) {
        auto ns = saddle::solve_Nstar<LD>(ev.spec(), (LD)n, (LD)1e-12L);
        for (double lam : {0.3, 0.5, 2.0, 4.0}) {
            long N = static_cast<long>(std::floor(lam * num::to_d(ns.N_star)));
            if (N < 1 || n - ev.m() * N < 1) {
                ++skipped;
                continue;
            }
            GridPoint p;
            p.n = n;
            p.N = N;
            p.lambda = lam;
            p.sol = saddle::solve_bivariate(ev, n, N, (LD)1e-12L);
            pts.push_back(std::move(p));
        }
    }
    return pts;
}

bool crit3_saddle_residuals(std::string& detail) {
    double t0 = now_s();
    long solved = 0, skipped = 0;
    for (const auto& spec : spec_grid()) {
        Evaluator<LD> ev(spec);
        for (const auto& p : solve_grid(ev, skipped)) {
            if (fabsl(p.sol.residual_size) > 1e-10L * (LD)p.n ||
                fabsl(p.sol.residual_count) > 1e-10L * (LD)p.N) {
                detail = "residual too large at n=" + std::to_string(p.n) +
                         " N=" + std::to_string(p.N);
                return false;
            }
            if (!(num::pow_t(p.sol.x, (LD)ev.m()) * p.sol.y < 1.0L)) {
                detail = "x^m y >= 1";
                return false;
            }
            ++solved;
        }
    }
    double dt = now_s() - t0;
    detail = std::to_string(solved) + " grid points solved (" + std::to_string(skipped) +
             " infeasible skipped: n-mN<1), residuals <= 1e-10, " + fnum(dt) + " s";
    return dt <= 30.0;
}

bool crit4_regime_asymptotics(std::string& detail) {
    long skipped = 0;
    std::ostringstream notes;
    for (const auto& spec : spec_grid()) {
        Evaluator<LD> ev(spec);
        auto pts = solve_grid(ev, skipped);
        // (a) |x y C'/(n-mN) - 1| decreasing in n per lambda
        for (double lam : {0.3, 0.5, 2.0, 4.0}) {
            double prev = 1e9;
            int seen = 0;
            for (const auto& p : pts) {
                if (p.lambda != lam) continue;
                auto d = ev.derivs(p.sol.x, 1, (LD)1e-14L);
                double dev =
                    std::fabs(num::to_d(p.sol.x * p.sol.y * d.v[1] / (LD)(p.n - ev.m() * p.N)) - 1.0);
                if (seen && !(dev < prev)) {
                    detail = "size-balance ratio not improving (" + spec.h.describe() +
                             ", alpha=" + spec.alpha_q.get_str() + ", rho=" + spec.rho_q.get_str() +
                             ", m=" + std::to_string(ev.m()) + ", lambda=" + fnum(lam) + ")";
                    return false;
                }
                prev = dev;
                ++seen;
            }
        }
        for (const auto& p : pts) {
            if (p.n != 100000) continue;
            if (p.lambda == 2.0) {
                LD rho = num::from_rational<LD>(spec.rho_q);
                double ydev =
                    std::fabs(num::to_d(p.sol.y * num::pow_t(rho, (LD)ev.m())) - 1.0);
                if (ydev > 0.1) {
                    detail = "y rho^m off at lambda=2 (" + fnum(ydev) + ")";
                    return false;
                }
                auto ns_n = saddle::solve_Nstar<LD>(spec, (LD)p.n, (LD)1e-12L);
                auto ns_r = saddle::solve_Nstar<LD>(spec, (LD)(p.n - ev.m() * p.N), (LD)1e-12L);
                LD a = saddle::compute_a_n<LD>(spec, p.n, p.N, ns_n, ns_r);
                double sdev =
                    std::fabs(num::to_d(p.sol.S * ev.c_m() / ((1.0L - a) * (LD)p.N)) - 1.0);
                if (sdev > 0.1) {
                    detail = "S c_m/((1-a)N) off at lambda=2 (" + fnum(sdev) + ", " +
                             spec.h.describe() + ", alpha=" + spec.alpha_q.get_str() + ")";
                    return false;
                }
            }
            if (p.lambda == 0.5 && num::to_d(p.sol.S) / static_cast<double>(p.N) > 0.01) {
                detail = "S/N > 0.01 at lambda=0.5 (" + spec.h.describe() +
                         ", alpha=" + spec.alpha_q.get_str() + ", rho=" + spec.rho_q.get_str() +
                         ", S/N=" + fnum(num::to_d(p.sol.S) / static_cast<double>(p.N)) + ")";
                return false;
            }
        }
    }
    detail = "size balance improving in n; lambda=2 and lambda=0.5 limits within bounds";
    return true;
}

bool crit5_univariate_formula(std::string& detail) {
    double t0 = now_s();
    auto spec = base_spec();
    Evaluator<LD> ev(spec);
    auto gs = exact_g_univariate(spec, 800);
    double prev = 1e9;
    std::ostringstream devs;
    for (long n : {200L, 400L, 800L}) {
        auto est = asym::g_n_formula(ev, n, (LD)1e-12L);
        double ratio = num::to_d(expl((LD)est.log_value - logl(gs[static_cast<size_t>(n)])));
        double dev = std::fabs(ratio - 1.0);
        devs << " n=" << n << ":" << fnum(dev);
        if (!(dev < prev)) {
            detail = "|ratio-1| not strictly decreasing:" + devs.str();
            return false;
        }
        prev = dev;
    }
    double dt = now_s() - t0;
    detail = "|ratio-1| strictly decreasing:" + devs.str() + ", " + fnum(dt) + " s";
    return dt <= 120.0;
}

bool crit6_theorem_one(std::string& detail) {
    auto spec = base_spec();
    Evaluator<LD> ev(spec);
    // (a) three forms pairwise within 5% at n = 3000
    {
        long n = 3000;
        auto ns = saddle::solve_Nstar<LD>(spec, (LD)n, (LD)1e-12L);
        long N = static_cast<long>(0.5 * num::to_d(ns.N_star));
        auto sol = saddle::solve_bivariate(ev, n, N, (LD)1e-12L);
        LD v1 = asym::gnN_case1(ev, sol, asym::Formula::LLT_I, (LD)1e-12L).log_value;
        LD v2 = asym::gnN_case1(ev, sol, asym::Formula::Explicit_I, (LD)1e-12L).log_value;
        LD v3 = asym::gnN_case1(ev, sol, asym::Formula::Comb_I, (LD)1e-12L).log_value;
        double d12 = std::fabs(num::to_d(expl(v1 - v2)) - 1.0);
        double d13 = std::fabs(num::to_d(expl(v1 - v3)) - 1.0);
        double d23 = std::fabs(num::to_d(expl(v2 - v3)) - 1.0);
        if (d12 > 0.05 || d13 > 0.05 || d23 > 0.05) {
            detail = "pairwise deviations at n=3000: " + fnum(d12) + "/" + fnum(d13) + "/" +
                     fnum(d23) + " exceed 5%";
            return false;
        }
        detail = "forms pairwise within 5% at n=3000 (" + fnum(d12) + "/" + fnum(d13) + "/" +
                 fnum(d23) + ")";
    }
    // (b) LLT-I against the exact table improves along the grid
    double prev = 1e9;
    for (long n : {200L, 400L, 800L}) {
        auto ns = saddle::solve_Nstar<LD>(spec, (LD)n, (LD)1e-12L);
        long N = static_cast<long>(0.5 * num::to_d(ns.N_star));
        auto sol = saddle::solve_bivariate(ev, n, N, (LD)1e-12L);
        auto est = asym::gnN_case1(ev, sol, asym::Formula::LLT_I, (LD)1e-12L);
        auto c = series::build_C<LD>(spec, n);
        auto t = series::mset_exp_transform(c, n, N);
        double dev = std::fabs(num::to_d(expl((LD)est.log_value - logl(t.g(n, N)))) - 1.0);
        if (!(dev < prev)) {
            detail += "; exact-ratio trend broke at n=" + std::to_string(n);
            return false;
        }
        prev = dev;
    }
    detail += "; exact ratio improves on n in {200,400,800} (final dev " + fnum(prev) + ")";
    return true;
}

bool crit7_theorem_two(std::string& detail) {
    auto spec = base_spec();
    Evaluator<LD> ev(spec);
    {
        long n = 3000;
        auto ns = saddle::solve_Nstar<LD>(spec, (LD)n, (LD)1e-12L);
        long N = static_cast<long>(2.0 * num::to_d(ns.N_star));
        auto sol = saddle::solve_bivariate(ev, n, N, (LD)1e-12L);
        LD v1 = asym::gnN_case2(ev, sol, asym::Formula::LLT_II, (LD)1e-12L).log_value;
        LD v2 = asym::gnN_case2(ev, sol, asym::Formula::Comb_II, (LD)1e-12L).log_value;
        double d = std::fabs(num::to_d(expl(v1 - v2)) - 1.0);
        if (d > 0.10) {
            detail = "LLT-II vs Comb-II deviation " + fnum(d) + " exceeds 10% at n=3000";
            return false;
        }
        detail = "LLT-II vs Comb-II within 10% at n=3000 (" + fnum(d) + ")";
    }
    double prev = 1e9;
    for (long n : {400L, 800L, 1600L}) {
        auto ns = saddle::solve_Nstar<LD>(spec, (LD)n, (LD)1e-12L);
        long N = static_cast<long>(2.0 * num::to_d(ns.N_star));
        auto sol = saddle::solve_bivariate(ev, n, N, (LD)1e-12L);
        auto est = asym::gnN_case2(ev, sol, asym::Formula::LLT_II, (LD)1e-12L);
        auto c = series::build_C<LD>(spec, n);
        auto t = series::mset_exp_transform(c, n, N);
        double dev = std::fabs(num::to_d(expl((LD)est.log_value - logl(t.g(n, N)))) - 1.0);
        if (!(dev < prev)) {
            detail += "; exact-ratio trend broke at n=" + std::to_string(n);
            return false;
        }
        prev = dev;
    }
    detail += "; exact ratio improves on n in {400,800,1600} (final dev " + fnum(prev) + ")";
    return true;
}

bool crit8_phase_witness(std::string& detail) {
    auto spec = base_spec();
    Evaluator<LD> ev(spec);
    long n = 1600;
    auto ns = saddle::solve_Nstar<LD>(spec, (LD)n, (LD)1e-12L);
    long N_hi = static_cast<long>(2.0 * num::to_d(ns.N_star)) + 1;
    auto c = series::build_C<LD>(spec, n);
    auto t = series::mset_exp_transform(c, n, N_hi);
    std::ostringstream note;
    for (double lam : {0.5, 2.0}) {
        long N = static_cast<long>(lam * num::to_d(ns.N_star));
        auto sol = saddle::solve_bivariate(ev, n, N, (LD)1e-12L);
        LD exact_log = logl(t.g(n, N));
        auto err_of = [&](asym::Formula f) {
            try {
                auto e = f == asym::Formula::LLT_I
                             ? asym::gnN_case1(ev, sol, f, (LD)1e-12L, true)
                             : asym::gnN_case2(ev, sol, f, (LD)1e-12L, true);
                return std::fabs(num::to_d(expl((LD)e.log_value - exact_log)) - 1.0);
            } catch (const DomainError&) {
                return std::numeric_limits<double>::infinity();  // divergent constant
            }
        };
        double err1 = err_of(asym::Formula::LLT_I);
        double err2 = err_of(asym::Formula::LLT_II);
        bool ok = lam < 1 ? err1 < err2 : err2 < err1;
        note << " lambda=" << lam << ": matched=" << fnum(lam < 1 ? err1 : err2)
             << " mismatched=" << fnum(lam < 1 ? err2 : err1);
        if (!ok) {
            detail = "regime-matched formula not better at lambda=" + fnum(lam) + ":" + note.str();
            return false;
        }
    }
    detail = "matched formula strictly better at n=1600:" + note.str();
    return true;
}

bool crit9_boltzmann_law(std::string& detail) {
    double t0 = now_s();
    auto spec = base_spec();
    Evaluator<LD> ev(spec);
    const long box = 15;
    auto c = series::build_C<LD>(spec, box);
    auto table = series::mset_exp_transform(c, box, box);
    const long trials = 1000000;
    struct Point {
        double x0, y0;
    };
    std::ostringstream note;
    int point_idx = 0;
    for (Point pt : {Point{0.2, 0.5}, Point{0.3, 0.8}, Point{0.25, 1.2}}) {
        LD x0 = pt.x0, y0 = pt.y0;
        auto G = saddle::G_eval(ev, x0, y0, (LD)1e-16L);
        std::vector<double> probs;
        std::vector<std::pair<long, long>> cells;
        for (long nn = 0; nn <= box; ++nn)
            for (long NN = 0; NN <= box; ++NN) {
                if (table.g(nn, NN) == 0.0L) continue;
                probs.push_back(num::to_d(table.g(nn, NN) * powl(x0, nn) * powl(y0, NN) / G.value));
                cells.emplace_back(nn, NN);
            }
        std::map<std::pair<long, long>, size_t> index;
        for (size_t i = 0; i < cells.size(); ++i) index[cells[i]] = i;

        auto P = boltz::params_at(ev, x0, y0);
        std::vector<long> obs(probs.size(), 0);
        long double sum_size = 0, sum_count = 0, sq_size = 0, sq_count = 0;
        for (long tr = 0; tr < trials; ++tr) {
            boltz::Rng rng = boltz::Rng::substream(555 + point_idx, static_cast<std::uint64_t>(tr));
            auto s = boltz::sample_lambda(P, rng);
            sum_size += s.size;
            sum_count += s.count;
            sq_size += static_cast<long double>(s.size) * s.size;
            sq_count += static_cast<long double>(s.count) * s.count;
            auto it = index.find({s.size, s.count});
            if (it != index.end()) ++obs[it->second];
        }
        auto res = boltz::chi_square_gof(probs, obs, trials);
        if (res.p_value <= 0.001) {
            detail = "chi-square p=" + fnum(res.p_value) + " at point " +
                     std::to_string(point_idx);
            return false;
        }
        // moment identities
        long double want_size = 0, want_count = 0;
        LD xj = x0, yj = y0;
        for (long j = 1; j <= P.j_max; ++j) {
            auto d = ev.derivs(xj, 1, (LD)1e-20L);
            want_size += num::to_d(xj * yj * d.v[1]);
            want_count += num::to_d(yj * d.v[0]);
            xj *= x0;
            yj *= y0;
        }
        double mean_size = static_cast<double>(sum_size) / trials;
        double mean_count = static_cast<double>(sum_count) / trials;
        double var_size = static_cast<double>(sq_size) / trials - mean_size * mean_size;
        double var_count = static_cast<double>(sq_count) / trials - mean_count * mean_count;
        if (std::fabs(mean_size - static_cast<double>(want_size)) >
            3 * std::sqrt(var_size / trials)) {
            detail = "E[size] off at point " + std::to_string(point_idx);
            return false;
        }
        if (std::fabs(mean_count - static_cast<double>(want_count)) >
            3 * std::sqrt(var_count / trials)) {
            detail = "E[count] off at point " + std::to_string(point_idx);
            return false;
        }
        note << " p" << point_idx << "=" << fnum(res.p_value);
        ++point_idx;
    }
    double dt = now_s() - t0;
    detail = "3 points x 1e6 draws pass chi-square and moment checks (p-values:" + note.str() +
             "), " + fnum(dt) + " s";
    return dt <= 120.0;
}

bool crit10_estimator(std::string& detail) {
    auto spec = base_spec();
    Evaluator<LD> ev(spec);
    auto c = series::build_C<LD>(spec, 12);
    auto table = series::mset_exp_transform(c, 12, 12);
    long double exact_log = logl(table.g(12, 4));
    auto P = boltz::tune(ev, 12, std::optional<long>(4));
    auto r1 = boltz::estimate_gnN(P, 12, 4, 200000, 4242);
    if (r1.hits == 0) {
        detail = "no hits";
        return false;
    }
    double dev_se = std::fabs(r1.log_estimate - static_cast<double>(exact_log)) / r1.std_error;
    if (dev_se > 4.0) {
        detail = "estimate " + fnum(dev_se) + " SE away from the exact value";
        return false;
    }
    auto r2 = boltz::estimate_gnN(P, 12, 4, 400000, 4242);
    double shrink = r1.std_error / r2.std_error;
    if (shrink < std::sqrt(2.0) * 0.8 || shrink > std::sqrt(2.0) * 1.2) {
        detail = "SE shrink factor " + fnum(shrink) + " not within 20% of sqrt(2)";
        return false;
    }
    detail = "estimate within " + fnum(dev_se) + " SE; doubling trials shrinks SE by " +
             fnum(shrink);
    return true;
}

bool crit11_llt(std::string& detail) {
    auto spec = base_spec();
    Evaluator<LD> ev(spec);
    long n = 3200;
    auto ns = saddle::solve_Nstar<LD>(spec, (LD)n, (LD)1e-12L);
    long N = static_cast<long>(0.5 * num::to_d(ns.N_star));
    auto sol = saddle::solve_bivariate(ev, n, N, (LD)1e-12L);

    double prev = 1e9;
    std::ostringstream devs;
    for (long p : {200L, 800L, 3200L}) {
        auto mo = llt::tilted_moments(ev, sol.x, p);
        long s0 = std::lround(num::to_d(mo.mu_p));
        auto pmf = llt::exact_Lp_pmf(ev, sol.x, p, {s0});
        double ratio = pmf.prob.at(s0) / num::to_d(llt::llt_prediction(mo, (LD)0.0L));
        double dev = std::fabs(ratio - 1.0);
        devs << " p=" << p << ":" << fnum(dev);
        if (!(dev < prev)) {
            detail = "t=0 ratio trend broke:" + devs.str();
            return false;
        }
        prev = dev;
    }
    {
        auto mo = llt::tilted_moments(ev, sol.x, 3200);
        long s0 = std::lround(num::to_d(mo.mu_p));
        long s1 = std::lround(num::to_d(mo.mu_p) + num::to_d(mo.sigma_p));
        auto pmf = llt::exact_Lp_pmf(ev, sol.x, 3200, {s0, s1});
        double ratio = pmf.prob.at(s1) / pmf.prob.at(s0);
        if (std::fabs(ratio - std::exp(-0.5)) > 0.1 * std::exp(-0.5)) {
            detail = "pmf(mu+sigma)/pmf(mu) = " + fnum(ratio) + " not within 10% of exp(-1/2)";
            return false;
        }
    }
    {
        auto pmf = llt::exact_Lp_pmf(ev, sol.x, N, {n - N});
        double want = std::sqrt(1.0 / (2 * 3.14159265358979324)) *
                      std::sqrt(static_cast<double>(N)) / static_cast<double>(n);
        double dev = std::fabs(pmf.prob.at(n - N) / want - 1.0);
        if (dev > 0.1) {
            detail = "conditioned-sum probability off by " + fnum(dev);
            return false;
        }
    }
    detail = "t=0 ratios improve:" + devs.str() + "; sigma-step and conditioned-sum checks pass";
    return true;
}

bool crit12_appendix_checks(std::string& detail) {
    std::ostringstream note;
    bool pass = true;
    for (auto alpha : {Rational(1), Rational(2)}) {
        for (int hlog : {0, 1}) {
            ExpansiveSpec spec(alpha, Rational(1, 2),
                               hlog ? SlowlyVarying::log_power(1.0) : SlowlyVarying::one(), 1);
            auto rep = model::karamata_check(spec, {1000000});
            double dev = std::fabs(rep.karamata[0].second - 1.0);
            note << " karamata(alpha=" << alpha.get_str() << ",h=" << (hlog ? "log" : "1")
                 << ")=" << fnum(dev);
            if (dev > 0.01) {
                pass = false;
                note << "[FAIL>1%]";
            }
        }
    }
    for (int hlog : {0, 1}) {
        auto h = hlog ? SlowlyVarying::log_power(1.0) : SlowlyVarying::one();
        auto rows = model::subpoly_check(h, 0.1, {1e4, 1e5, 1e6});
        bool all = true;
        for (auto& [x, ok] : rows) all &= ok;
        note << " subpoly(h=" << (hlog ? "log" : "1") << ")=" << (all ? "ok" : "violated");
        if (!all) pass = false;
    }
    detail = note.str();
    if (!pass)
        detail += " | slow-variation error for h=log is Theta(1/ln x): ~7.2% (alpha=1) and ~3.6% "
                  "(alpha=2) at x=1e6, and ln(x) exceeds x^0.1 until x ~ 3.5e15; the stated 1% "
                  "and delta=0.1 bounds are unattainable for the log member at these x";
    return pass;
}

bool crit13_reproducibility(std::string& detail) {
    std::string dir = "/tmp/emset_accept13";
    std::system(("rm -rf " + dir + " && mkdir -p " + dir).c_str());
    auto write = [&](const std::string& p, const std::string& s) {
        std::ofstream os(p);
        os << s;
    };
    write(dir + "/sample.json", R"({"schema":"emset-config/1",
      "spec":{"alpha":"1","rho":"0.5","m":1,"h":{"kind":"constant","c":"1"}},
      "n":500,"N":20,"trials":20000})");
    write(dir + "/transform.json", R"({"schema":"emset-config/1",
      "spec":{"raw":["1","1","1","1","1","1","1","1","1","1"]},
      "n_max":20,"N_max":20})");
    auto run = [&](const std::string& args) {
        std::string cmd = std::string(EMSET_CLI_PATH) + " " + args + " >/dev/null 2>&1";
        return WEXITSTATUS(std::system(cmd.c_str()));
    };
    auto slurp = [](const std::string& p) {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream os;
        os << is.rdbuf();
        return os.str();
    };
    if (run("sample --config " + dir + "/sample.json --out " + dir + "/a.csv --seed 7 --threads 1"))
        return false;
    if (run("sample --config " + dir + "/sample.json --out " + dir + "/b.csv --seed 7 --threads 8"))
        return false;
    if (slurp(dir + "/a.csv") != slurp(dir + "/b.csv")) {
        detail = "sample streams differ across thread counts";
        return false;
    }
    if (run("transform --exact --config " + dir + "/transform.json --out " + dir +
            "/t1.csv --threads 1"))
        return false;
    if (run("transform --exact --config " + dir + "/transform.json --out " + dir +
            "/t2.csv --threads 8"))
        return false;
    if (slurp(dir + "/t1.csv") != slurp(dir + "/t2.csv") ||
        slurp(dir + "/t1.csv.product.csv") != slurp(dir + "/t2.csv.product.csv")) {
        detail = "exact transform outputs differ";
        return false;
    }
    if (slurp(dir + "/t1.csv").empty()) {
        detail = "empty transform output";
        return false;
    }
    detail = "sample streams and exact outputs byte-identical across 1 and 8 threads";
    return true;
}

struct Criterion {
    int id;
    const char* title;
    bool (*fn)(std::string&);
};

const Criterion kCriteria[] = {
    {1, "transform equivalence (exact, (60,60))", crit1_transform_equivalence},
    {2, "partition oracle", crit2_partition_oracle},
    {3, "saddle residuals on the parameter grid", crit3_saddle_residuals},
    {4, "regime asymptotics", crit4_regime_asymptotics},
    {5, "univariate counting formula trend", crit5_univariate_formula},
    {6, "subcritical forms (pairwise + exact trend)", crit6_theorem_one},
    {7, "supercritical forms (pairwise + exact trend)", crit7_theorem_two},
    {8, "phase-transition witness", crit8_phase_witness},
    {9, "cycle-model law (chi-square + moments)", crit9_boltzmann_law},
    {10, "coefficient estimator", crit10_estimator},
    {11, "triangular-array local limit", crit11_llt},
    {12, "slow-variation appendix checks", crit12_appendix_checks},
    {13, "reproducibility across seeds/threads", crit13_reproducibility},
};

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.push_back(std::atoi(argv[i]));
    int failures = 0;
    for (const auto& c : kCriteria) {
        if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), c.id) == wanted.end())
            continue;
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        std::printf("criterion %2d: %s - %s (%s)\n", c.id, ok ? "PASS" : "FAIL", c.title,
                    detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    return failures;
}
