#pragma once

#include <string>

#include <boost/math/constants/constants.hpp>

#include "emset/gseries.hpp"
#include "emset/numeric.hpp"
#include "emset/series.hpp"
#include "emset/solve.hpp"

namespace emset::asym {

using saddle::Evaluator;
using saddle::Regime;
using saddle::SaddleSolution;

enum class Formula { G_n_LLT, LLT_I, Explicit_I, Comb_I, LLT_II, Comb_II };

inline const char* formula_name(Formula f) {
    switch (f) {
        case Formula::G_n_LLT: return "G_n_LLT";
        case Formula::LLT_I: return "LLT_I";
        case Formula::Explicit_I: return "Explicit_I";
        case Formula::Comb_I: return "Comb_I";
        case Formula::LLT_II: return "LLT_II";
        case Formula::Comb_II: return "Comb_II";
    }
    return "?";
}

/// One evaluated counting formula. Values live in log space: x_n^{-n} alone
/// overflows every fixed-precision float long before the trend tests end.
template <class T>
struct AsymptoticEstimate {
    Formula formula{};
    long n = 0, N = 0;
    T log_value{};
    Regime regime = Regime::Window;
    T constant_tail{};  // truncation bound used for the G-constants
};

/// log N! as a plain sum of logs; the factorial must not import its own
/// asymptotic error into a test of asymptotics.
template <class T>
T log_factorial(long N) {
    using std::log;
    T s(0);
    for (long k = 2; k <= N; ++k) s += log(T(k));
    return s;
}

/// log [x^n] C(x)^N, extracted through series_pow on the x0-tilted vector:
/// [x^n] C(x)^N = C(x0)^N x0^{-n} [t^n] (C(x0 t)/C(x0))^N. Tilting at the
/// saddle keeps every stored coefficient inside the float range.
template <class T>
T log_coeff_pow(const Evaluator<T>& ev, const T& x0, long n, long N, const T& tol) {
    using std::log;
    if (N < 1) throw DomainError("log_coeff_pow: N must be >= 1");
    const long m = ev.m();
    if (n < m * N) throw DomainError("log_coeff_pow: coefficient is zero (n < mN)");
    T Cx = ev.eval(x0, 0, tol).value;
    series::CoeffVector<T> tilt(n);
    if (ev.expansive()) {
        const T q = x0 / ev.rho();
        T qj = q;
        for (long j = 1; j <= n; ++j) {
            if (j >= m) tilt[j] = ev.weight(j) * qj / Cx;
            qj *= q;
        }
    } else {
        const auto& f = ev.raw();
        T xj = x0;
        for (long j = 1; j <= n && j <= f.n_max(); ++j) {
            tilt[j] = f[j] * xj / Cx;
            xj *= x0;
        }
    }
    auto powed = series::series_pow(tilt, N, n);
    const T& coeff = powed[n];
    if (!(coeff > T(0))) throw PrecisionError("log_coeff_pow: nonpositive tilted coefficient");
    return T(N) * log(Cx) - T(n) * log(x0) + log(coeff);
}

/// log [x^idx] exp(C_{>m}(x)) via the same tilt: coefficients of
/// C_{>m}(x0 t) are c_{k+m} x0^k t^k.
template <class T>
T log_coeff_exp_gtm(const Evaluator<T>& ev, const T& x0, long idx, const T& tol) {
    using std::log;
    if (idx < 0) throw DomainError("log_coeff_exp_gtm: negative index");
    const long m = ev.m();
    series::CoeffVector<T> tilt(idx);
    if (ev.expansive()) {
        const T q = x0 / ev.rho();
        T scale = num::pow_t(x0, T(-m));
        T qj = num::pow_t(q, T(m + 1));
        for (long k = 1; k <= idx; ++k) {
            tilt[k] = ev.weight(k + m) * qj * scale;
            qj *= q;
        }
    } else {
        const auto& f = ev.raw();
        T xk = x0;
        for (long k = 1; k <= idx && k + m <= f.n_max(); ++k) {
            tilt[k] = f[k + m] * xk;
            xk *= x0;
        }
    }
    auto e = series::series_exp(tilt, idx);
    const T& coeff = e[idx];
    if (!(coeff > T(0))) throw PrecisionError("log_coeff_exp_gtm: nonpositive tilted coefficient");
    (void)tol;
    return log(coeff) - T(idx) * log(x0);
}

template <class T>
T pi_const() {
    if constexpr (std::is_same_v<T, BigReal>) {
        return boost::math::constants::pi<BigReal>();
    } else {
        return T(3.14159265358979323846264338327950288L);
    }
}

/// Counting formula for the y-free problem: with z_n C'(z_n) = n,
/// log g_n ~ log G^{>=2}(rho,1) + C(z_n) - log sqrt(2 pi z_n^2 C''(z_n))
///           - n log z_n.
template <class T>
AsymptoticEstimate<T> g_n_formula(const Evaluator<T>& ev, long n, const T& tol = T(1e-12)) {
    using std::log;
    if (!ev.expansive()) throw DomainError("g_n_formula: expansive spec required");
    T z = saddle::solve_univariate(ev, n, tol);
    auto d = ev.derivs(z, 2, tol);
    auto g2 = saddle::G_ge2(ev, ev.rho(), T(1), tol);
    const T two_pi = T(2) * pi_const<T>();
    AsymptoticEstimate<T> out;
    out.formula = Formula::G_n_LLT;
    out.n = n;
    out.N = -1;
    out.log_value =
        log(g2.value) + d.v[0] - log(two_pi * z * z * d.v[2]) / T(2) - T(n) * log(z);
    out.regime = Regime::CaseI;
    out.constant_tail = g2.tail_bound;
    return out;
}

/// Subcritical-regime forms. The regime gate may be overridden for
/// comparison sweeps that deliberately evaluate the mismatched formula;
/// such rows are marked by the caller.
template <class T>
AsymptoticEstimate<T> gnN_case1(const Evaluator<T>& ev, const SaddleSolution<T>& sol, Formula form,
                                const T& tol = T(1e-12), bool allow_mismatch = false) {
    using std::exp;
    using std::log;
    if (form != Formula::LLT_I && form != Formula::Explicit_I && form != Formula::Comb_I)
        throw DomainError("gnN_case1: not a subcritical form");
    if (sol.regime != Regime::CaseI && !allow_mismatch)
        throw DomainError("gnN_case1: saddle solution is not in the subcritical regime");
    const long n = sol.n, N = sol.N;
    const long m = ev.m();
    const T alpha = num::from_rational<T>(ev.spec().alpha_q);
    const T rho = ev.rho();
    const T cm = ev.c_m();
    const T two_pi = T(2) * pi_const<T>();

    auto g2 = saddle::G_ge2(ev, rho, sol.y, tol);
    AsymptoticEstimate<T> out;
    out.formula = form;
    out.n = n;
    out.N = N;
    out.regime = sol.regime;
    out.constant_tail = g2.tail_bound;

    switch (form) {
        case Formula::LLT_I: {
            auto d = ev.derivs(sol.x, 2, tol);
            T det = T(N) * sol.y * sol.x * sol.x * d.v[2] / (alpha + T(1));
            out.log_value = log(g2.value) + sol.y * d.v[0] - log(two_pi) - log(det) / T(2) -
                            T(n) * log(sol.x) - T(N) * log(sol.y);
            break;
        }
        case Formula::Explicit_I: {
            T rmy = num::pow_t(rho, T(m)) * sol.y;
            out.log_value = log(g2.value) + log(alpha) / T(2) - log(two_pi) -
                            cm * rmy / (T(1) - rmy) - log(T(n)) - T(n) * log(sol.x) -
                            T(N) * (log(sol.y) - T(1));
            break;
        }
        case Formula::Comb_I: {
            out.log_value = log(g2.value) - log_factorial<T>(N) +
                            log_coeff_pow(ev, sol.x, n, N, tol);
            break;
        }
        default: break;
    }
    return out;
}

/// Supercritical-regime forms.
template <class T>
AsymptoticEstimate<T> gnN_case2(const Evaluator<T>& ev, const SaddleSolution<T>& sol, Formula form,
                                const T& tol = T(1e-12), bool allow_mismatch = false) {
    using std::exp;
    using std::log;
    if (form != Formula::LLT_II && form != Formula::Comb_II)
        throw DomainError("gnN_case2: not a supercritical form");
    if (sol.regime != Regime::CaseII && !allow_mismatch)
        throw DomainError("gnN_case2: saddle solution is not in the supercritical regime");
    const long n = sol.n, N = sol.N;
    const long m = ev.m();
    if (n - m * N < 1) throw DomainError("gnN_case2: n - mN must be >= 1");
    const T rho = ev.rho();
    const T cm = ev.c_m();
    const T two_pi = T(2) * pi_const<T>();

    auto g2 = saddle::G_ge2_gtm(ev, tol);
    AsymptoticEstimate<T> out;
    out.formula = form;
    out.n = n;
    out.N = N;
    out.regime = sol.regime;
    out.constant_tail = g2.tail_bound;

    // Both forms carry the component-count prefactor ((1-a_n)N)^(c_m-1)
    // / Gamma(c_m); it comes out of the cycle-count law and cancels only
    // when c_m = 1.
    auto ns_n = saddle::solve_Nstar<T>(ev.spec(), T(n), tol);
    auto ns_rest = saddle::solve_Nstar<T>(ev.spec(), T(n - m * N), tol);
    T a_n = saddle::compute_a_n<T>(ev.spec(), n, N, ns_n, ns_rest);
    T gamma_cm = saddle::gamma_fn(cm);
    T prefactor = (cm - T(1)) * log((T(1) - a_n) * T(N)) - log(gamma_cm);

    if (form == Formula::LLT_II) {
        auto d = ev.derivs(sol.x, 2, tol);
        // C_{>m}(x) = (C(x) - c_m x^m)/x^m summed from index m+1: no
        // cancellation.
        T c_gtm = ev.eval(sol.x, 0, tol, m + 1).value / num::pow_t(sol.x, T(m));
        T det = two_pi * num::pow_t(rho, T(-m)) * sol.x * sol.x * d.v[2];
        out.log_value =
            log(g2.value) + prefactor + c_gtm - log(det) / T(2) - T(n - m * N) * log(sol.x);
    } else {
        out.log_value =
            log(g2.value) + prefactor + log_coeff_exp_gtm(ev, sol.x, n - m * N, tol);
    }
    return out;
}

}  // namespace emset::asym
