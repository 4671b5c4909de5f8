#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "emset/asym.hpp"
#include "emset/eval.hpp"
#include "emset/series.hpp"
#include "emset/solve.hpp"

namespace emset::llt {

using saddle::Evaluator;

/// Mean and deviation of the centered p-fold component sum
/// L_p = sum_{i<=p} (C_i - m) under the tilt at x:
///   nu      = x C'(x) / C(x)
///   mu_p    = p (nu - m)
///   sigma_p^2 = p ((x^2 C'' + x C')/C - nu^2).
template <class T>
struct TiltedMoments {
    long p = 0;
    T x{};
    T nu{}, mu_p{}, sigma_p{}, chi{};
};

template <class T>
TiltedMoments<T> tilted_moments(const Evaluator<T>& ev, const T& x, long p, const T& tol = T(1e-16)) {
    using std::log;
    using std::sqrt;
    if (p < 1) throw DomainError("tilted_moments: p must be >= 1");
    auto d = ev.derivs(x, 2, tol);
    TiltedMoments<T> mo;
    mo.p = p;
    mo.x = x;
    mo.nu = x * d.v[1] / d.v[0];
    mo.mu_p = T(p) * (mo.nu - T(ev.m()));
    T var1 = (x * x * d.v[2] + x * d.v[1]) / d.v[0] - mo.nu * mo.nu;
    if (!(var1 > T(0))) throw PrecisionError("tilted_moments: nonpositive variance");
    mo.sigma_p = sqrt(T(p) * var1);
    mo.chi = ev.expansive() ? log(ev.rho() / x) : T(0);
    return mo;
}

/// Exact pmf of L_p at the requested lattice points, by powering the tilted
/// component pgf: Pr[L_p = s] = Pr[K_p = s + mp] = [t^(s+mp)] H(t)^p with
/// H(t) = C(x t)/C(x). The extended-exponent recurrence keeps the far tails
/// representable at any p.
struct LpPmf {
    std::map<long, double> prob;            // s -> Pr[L_p = s]
    std::map<long, long double> log_prob;   // s -> ln Pr (usable when prob underflows)
    double computed_mass = 0;               // sum of the computed range
    long s_max = 0;
    long terms = 0;  // component-law truncation length
};

template <class T>
LpPmf exact_Lp_pmf(const Evaluator<T>& ev, const T& x, long p, const std::vector<long>& s_values,
                   double comp_tail_eps = 1e-20) {
    using std::exp;
    using std::log;
    if (p < 1) throw DomainError("exact_Lp_pmf: p must be >= 1");
    const long m = ev.m();
    long s_max = 0;
    for (long s : s_values) {
        if (s < 0) throw DomainError("exact_Lp_pmf: L_p is nonnegative (support starts at 0)");
        s_max = std::max(s_max, s);
    }

    // Tilted component pmf on the stripped lattice k - m, truncated where the
    // certified geometric tail drops below comp_tail_eps.
    T Cx = ev.eval(x, 0, T(1e-25)).value;
    std::vector<double> f;
    if (ev.expansive()) {
        using std::log;
        const T q = x / ev.rho();
        const T logq = log(q);
        const double alpha = num::to_d(num::from_rational<T>(ev.spec().alpha_q));
        const double pospow = alpha > 1.0 ? alpha - 1.0 : 0.0;
        T qj = exp(T(m) * logq);
        long j = m;
        for (;;) {
            T pj = ev.weight(j) * qj / Cx;
            f.push_back(num::to_d(pj));
            if (j > m + 16 && (j & 15) == 0) {
                double r = num::to_d(q) * ev.spec().h.ratio_sup(j) *
                           std::pow(1.0 + 1.0 / static_cast<double>(j), pospow) * (1 + 1e-12);
                if (r < 1.0) {
                    double tail = num::to_d(pj) * r / (1.0 - r);
                    if (tail <= comp_tail_eps) break;
                }
            }
            if (j - m > 4'000'000)
                throw PrecisionError("exact_Lp_pmf: component law truncation too long");
            ++j;
            qj *= q;
            if ((j & 4095) == 0) qj = exp(T(j) * logq);
        }
    } else {
        const auto& w = ev.raw();
        for (long j = m; j <= w.n_max(); ++j)
            f.push_back(num::to_d(w[j] * num::pow_t(x, T(j)) / Cx));
    }
    if (f.empty() || f[0] <= 0.0) throw PrecisionError("exact_Lp_pmf: degenerate component law");

    // Entries of f beyond the highest requested index cannot reach the
    // output window; dropping them is exact for the returned coefficients.
    long len = s_max;
    if (static_cast<long>(f.size()) - 1 > len) f.resize(static_cast<size_t>(len) + 1);
    auto powed = series::series_pow_ext(f, p, len);

    LpPmf out;
    out.s_max = s_max;
    out.terms = static_cast<long>(f.size());
    long double mass = 0;
    for (const auto& xf : powed) mass += static_cast<long double>(xf.to_double());
    out.computed_mass = static_cast<double>(mass);
    for (long s : s_values) {
        const auto& xf = powed[static_cast<size_t>(s)];
        out.prob[s] = xf.to_double();
        out.log_prob[s] = xf.log();
    }
    return out;
}

/// Normal-limit prediction e^{-t^2/2} / (sqrt(2 pi) sigma_p).
template <class T>
T llt_prediction(const TiltedMoments<T>& mo, const T& t) {
    using std::exp;
    using std::sqrt;
    if (!(mo.sigma_p > T(0))) throw DomainError("llt_prediction: sigma_p must be positive");
    const T two_pi = T(2) * asym::pi_const<T>();
    return exp(-t * t / T(2)) / (sqrt(two_pi) * mo.sigma_p);
}

/// Same prediction through the chi_n form chi/sqrt(2 pi p alpha).
template <class T>
T llt_prediction_chi(const Evaluator<T>& ev, const TiltedMoments<T>& mo, const T& t) {
    using std::exp;
    using std::sqrt;
    const T alpha = num::from_rational<T>(ev.spec().alpha_q);
    const T two_pi = T(2) * asym::pi_const<T>();
    return exp(-t * t / T(2)) * mo.chi / (sqrt(two_pi) * sqrt(T(mo.p) * alpha));
}

/// One report row: the exact pmf at the lattice point nearest mu_p + t sigma_p
/// against the normal-limit prediction.
struct LltRow {
    long p = 0;
    double t = 0;
    long lattice_s = 0;
    double lattice_offset = 0;  // |mu_p + t sigma_p - lattice_s|, at most 0.5
    double exact = 0;
    double predicted = 0;
    double ratio = 0;
};

template <class T>
std::vector<LltRow> llt_check(const Evaluator<T>& ev, long n, long N,
                              const std::vector<long>& p_grid, const std::vector<double>& t_grid,
                              const T& tol = T(1e-12)) {
    auto sol = saddle::solve_bivariate(ev, n, N, tol);
    std::vector<LltRow> rows;
    for (long p : p_grid) {
        auto mo = tilted_moments(ev, sol.x, p);
        std::vector<long> s_values;
        std::vector<std::pair<double, long>> targets;
        for (double t : t_grid) {
            double target = num::to_d(mo.mu_p) + t * num::to_d(mo.sigma_p);
            long s = std::lround(target);
            if (s < 0) s = 0;
            targets.emplace_back(t, s);
            s_values.push_back(s);
        }
        auto pmf = exact_Lp_pmf(ev, sol.x, p, s_values);
        for (auto [t, s] : targets) {
            LltRow row;
            row.p = p;
            row.t = t;
            row.lattice_s = s;
            row.lattice_offset =
                std::fabs(num::to_d(mo.mu_p) + t * num::to_d(mo.sigma_p) - static_cast<double>(s));
            row.exact = pmf.prob.at(s);
            row.predicted = num::to_d(llt_prediction(mo, T(t)));
            row.ratio = row.exact / row.predicted;
            rows.push_back(row);
        }
    }
    return rows;
}

}  // namespace emset::llt
