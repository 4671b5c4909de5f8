#pragma once

#include <functional>
#include <optional>
#include <string>

#include "emset/eval.hpp"
#include "emset/numeric.hpp"

#include <boost/math/special_functions/gamma.hpp>

namespace emset::saddle {

enum class Regime { CaseI, CaseII, Window };

inline const char* regime_name(Regime r) {
    switch (r) {
        case Regime::CaseI: return "CaseI";
        case Regime::CaseII: return "CaseII";
        case Regime::Window: return "Window";
    }
    return "?";
}

/// Solution of the two tuning equations
///   x y C'(x) + m c_m x^m y / (1 - x^m y) = n
///   y C(x)    +   c_m x^m y / (1 - x^m y) = N,   x^m y < 1.
template <class T>
struct SaddleSolution {
    long n = 0, N = 0;
    T x{}, y{};
    T chi{};  // ln(rho/x)
    T S{};    // x^m y / (1 - x^m y)
    T residual_size{}, residual_count{};
    Regime regime = Regime::Window;
    T lambda{}, n_star{};  // regime classification inputs, kept for reports
};

/// Root of u h(u)^(1/(alpha+1)) = v^(1/(alpha+1)) and the derived threshold.
template <class T>
struct NStarSolution {
    T v{}, u{}, g{};  // g = h(u)^(1/(alpha+1)), slowly varying in v
    T N_star{};
    T C0{};
};

template <class T>
T gamma_fn(const T& x) {
    if constexpr (std::is_same_v<T, BigReal>) {
        return boost::math::tgamma(x);
    } else if constexpr (std::is_same_v<T, long double>) {
        return std::tgammal(x);
    } else {
        return std::tgamma(x);
    }
}

namespace detail {

/// Bisection on a monotone increasing map over a bracketed sign change.
/// Returns the midpoint once the bracket is narrower than rel_tol * mid
/// (or the type's resolution). fn returns f(x) - target.
template <class T>
T bisect_increasing(const std::function<T(const T&)>& fn, T lo, T hi, const T& rel_tol,
                    const char* what) {
    T flo = fn(lo);
    T fhi = fn(hi);
    if (!(flo <= T(0) && fhi >= T(0)))
        throw DomainError(std::string(what) + ": no sign change in bracket (f(lo)=" +
                          std::to_string(num::to_d(flo)) + ", f(hi)=" +
                          std::to_string(num::to_d(fhi)) + ")");
    const T floor_w = num::machine_eps<T>() * T(4);
    for (int it = 0; it < 20000; ++it) {
        T mid = (lo + hi) / T(2);
        T w = hi - lo;
        if (w <= rel_tol * mid || w <= floor_w * mid) return mid;
        T fm = fn(mid);
        if (fm < T(0))
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / T(2);
}

}  // namespace detail

/// Unique z in (0, rho) with z C'(z) = n; the map is strictly increasing.
template <class T>
T solve_univariate(const Evaluator<T>& ev, long n, const T& tol = T(1e-12)) {
    if (n < 1) throw DomainError("solve_univariate: n must be >= 1");
    using std::exp;
    using std::log;
    const T tol_tail = tol * T(num::to_d(T(n))) / T(1000);

    auto zC1 = [&](const T& z) { return z * ev.eval(z, 1, tol_tail).value; };

    if (ev.expansive()) {
        const T rho = ev.rho();
        // chi-space bracket: s(chi) = zC'(z) is decreasing in chi. Both ends
        // expand adaptively; evaluations stay near the eventual root, where
        // the series is affordable.
        T chi_hi = T(1) / T(8);
        int guard = 0;
        while (zC1(rho * exp(-chi_hi)) > T(n)) {
            chi_hi *= T(2);
            if (++guard > 120) throw DomainError("solve_univariate: bracket failed (n too small)");
        }
        T chi_lo = chi_hi / T(2);
        guard = 0;
        while (zC1(rho * exp(-chi_lo)) < T(n)) {
            chi_lo /= T(2);
            if (chi_lo < T(1e-14) || ++guard > 120)
                throw DomainError("solve_univariate: n out of reach at the precision floor");
        }
        std::function<T(const T&)> f = [&](const T& chi) { return T(n) - zC1(rho * exp(-chi)); };
        T chi = detail::bisect_increasing<T>(f, chi_lo, chi_hi, tol / T(1000), "solve_univariate");
        T z = rho * exp(-chi);
        T resid = zC1(z) - T(n);
        if (!(resid <= tol * T(n) && -resid <= tol * T(n)))
            throw PrecisionError("solve_univariate: residual above tolerance");
        return z;
    }
    // Raw polynomial: zC'(z) increasing on (0, inf).
    T z_lo = T(1e-30);
    T z_hi = T(1);
    while (zC1(z_hi) < T(n)) {
        z_hi *= T(2);
        if (z_hi > T(1e30)) throw DomainError("solve_univariate: bracket failed");
    }
    std::function<T(const T&)> f = [&](const T& z) { return zC1(z) - T(n); };
    T z = detail::bisect_increasing<T>(f, z_lo, z_hi, tol / T(1000), "solve_univariate");
    T resid = zC1(z) - T(n);
    if (!(resid <= tol * T(n) && -resid <= tol * T(n)))
        throw PrecisionError("solve_univariate: residual above tolerance");
    return z;
}

template <class T>
NStarSolution<T> solve_Nstar(const model::ExpansiveSpec& spec, const T& v, const T& tol = T(1e-12)) {
    using std::exp;
    using std::log;
    if (!(v > T(1))) throw DomainError("solve_Nstar: v must exceed 1");
    const T alpha = num::from_rational<T>(spec.alpha_q);
    const T expo = T(1) / (alpha + T(1));
    const T target = num::pow_t(v, expo);

    auto G = [&](const T& u) { return u * num::pow_t(spec.h.template eval<T>(u), expo); };

    T lo = target, hi = target;
    int guard = 0;
    while (G(lo) > target) {
        lo /= T(2);
        if (lo < T(1)) {
            lo = T(1);
            if (G(lo) > target) throw DomainError("solve_Nstar: no root in [1, v]");
            break;
        }
        if (++guard > 200) throw DomainError("solve_Nstar: bracket failed");
    }
    guard = 0;
    while (G(hi) < target) {
        hi *= T(2);
        if (hi > v) {
            hi = v;
            if (G(hi) < target) throw DomainError("solve_Nstar: no root in [1, v]");
            break;
        }
        if (++guard > 200) throw DomainError("solve_Nstar: bracket failed");
    }
    std::function<T(const T&)> f = [&](const T& u) { return G(u) - target; };
    T u = detail::bisect_increasing<T>(f, lo, hi, tol / T(100), "solve_Nstar");
    T resid = G(u) - target;
    if (!(resid <= tol * target && -resid <= tol * target))
        throw PrecisionError("solve_Nstar: residual above tolerance");

    NStarSolution<T> out;
    out.v = v;
    out.u = u;
    out.g = num::pow_t(spec.h.template eval<T>(u), expo);
    const T rho = num::from_rational<T>(spec.rho_q);
    const T ap1 = alpha + T(1);
    const T inner = num::pow_t(rho, T(-static_cast<long>(spec.m))) * gamma_fn(ap1);
    out.C0 = num::pow_t(inner, expo) / alpha;
    const T aexp = alpha * expo;
    out.N_star = out.C0 * out.g * num::pow_t(v, aexp);
    return out;
}

/// Regime thresholds: the scaling window (0.95, 1.05) around N* is reported
/// as Window; asymptotic formulas are refused there.
template <class T>
Regime classify_regime(const T& lambda) {
    if (lambda < T(19) / T(20)) return Regime::CaseI;
    if (lambda > T(21) / T(20)) return Regime::CaseII;
    return Regime::Window;
}

/// Solves the tuning system by the one-variable reduction: with
/// a(x) = (n - mN) / (xC'(x)/C(x) - m) and b(x) = x^m a(x)/C(x), the map
/// f(x) = a(x) + c_m b(x)/(1-b(x)) is strictly decreasing where b < 1;
/// bisection runs in chi = ln(rho/x), where f is increasing.
template <class T>
SaddleSolution<T> solve_bivariate(const Evaluator<T>& ev, long n, long N, const T& tol = T(1e-12)) {
    if (!ev.expansive()) throw DomainError("solve_bivariate: expansive spec required");
    if (n < 1 || N < 1) throw DomainError("solve_bivariate: n and N must be >= 1");
    const long m = ev.m();
    if (n - m * N < 1)
        throw DomainError("solve_bivariate: n - mN must be >= 1 (no feasible tuning)");

    using std::exp;
    using std::log;
    const T rho = ev.rho();
    const T cm = ev.c_m();
    const T tol_tail = tol / T(1000);
    const T huge = T(4) * T(N) + T(1e6);

    struct Parts {
        T x, C, C1, a, b;
        bool valid;
    };
    auto parts_at = [&](const T& chi) -> Parts {
        T x = rho * exp(-chi);
        auto d = ev.derivs(x, 1, tol_tail * T(n));
        T R = x * d.v[1] / d.v[0];
        T den = R - T(m);
        if (!(den > T(0))) return {x, d.v[0], d.v[1], T(0), T(0), false};
        T a = T(n - m * N) / den;
        T b = num::pow_t(x, T(m)) * a / d.v[0];
        return {x, d.v[0], d.v[1], a, b, true};
    };
    auto fval = [&](const T& chi) -> T {
        Parts p = parts_at(chi);
        if (!p.valid) return huge;  // x C'/C <= m: far left, treat as above N
        if (!(p.b < T(1))) return huge;
        return p.a + cm * p.b / (T(1) - p.b);
    };

    // Bracket in chi: f -> 0 as chi -> 0+ and f -> inf toward the b=1 point.
    // Both ends expand adaptively from a moderate start so evaluations stay
    // near the root.
    T chi_hi = T(1) / T(8);
    int guard = 0;
    while (fval(chi_hi) <= T(N)) {
        chi_hi *= T(2);
        if (++guard > 120)
            throw DomainError("solve_bivariate: no sign change in bracket (f stays below N; f(" +
                              std::to_string(num::to_d(chi_hi)) + ")=" +
                              std::to_string(num::to_d(fval(chi_hi))) + ")");
    }
    T chi_lo = chi_hi / T(2);
    guard = 0;
    while (!(fval(chi_lo) < T(N))) {
        chi_lo /= T(2);
        if (chi_lo < T(1e-14) || ++guard > 120)
            throw DomainError("solve_bivariate: no sign change in bracket (f stays above N down "
                              "to the precision floor)");
    }
    std::function<T(const T&)> f = [&](const T& chi) { return fval(chi) - T(N); };
    T chi = detail::bisect_increasing<T>(f, chi_lo, chi_hi, tol / T(1000), "solve_bivariate");

    Parts p = parts_at(chi);
    if (!p.valid || !(p.b < T(1)))
        throw PrecisionError("solve_bivariate: converged outside the feasible region");

    SaddleSolution<T> sol;
    sol.n = n;
    sol.N = N;
    sol.chi = chi;
    sol.x = p.x;
    sol.y = p.a / p.C;
    sol.S = p.b / (T(1) - p.b);
    sol.residual_count = p.a + cm * sol.S - T(N);
    sol.residual_size = sol.x * sol.y * p.C1 + T(m) * cm * sol.S - T(n);
    T rs = sol.residual_size < T(0) ? -sol.residual_size : sol.residual_size;
    T rc = sol.residual_count < T(0) ? -sol.residual_count : sol.residual_count;
    if (!(rs <= tol * T(n)) || !(rc <= tol * T(N)))
        throw PrecisionError("solve_bivariate: residuals above tolerance");

    auto ns = solve_Nstar<T>(ev.spec(), T(n), tol);
    sol.n_star = ns.N_star;
    sol.lambda = T(N) / ns.N_star;
    sol.regime = classify_regime(sol.lambda);
    return sol;
}

/// a_n = lambda^{-1} (g(n-mN)/g(n)) ((n-mN)/n)^(alpha/(alpha+1)).
template <class T>
T compute_a_n(const model::ExpansiveSpec& spec, long n, long N, const NStarSolution<T>& ns_at_n,
              const NStarSolution<T>& ns_at_rest) {
    const long m = spec.m;
    if (n - m * N < 1) throw DomainError("compute_a_n: n - mN must be >= 1");
    const T alpha = num::from_rational<T>(spec.alpha_q);
    T lambda = T(N) / ns_at_n.N_star;
    T frac = T(n - m * N) / T(n);
    T expo = alpha / (alpha + T(1));
    return (T(1) / lambda) * (ns_at_rest.g / ns_at_n.g) * num::pow_t(frac, expo);
}

/// Diagnostic ratios behind the regime asymptotics: both approach 1 on
/// n-grids within their regime.
template <class T>
struct ChiCheckReport {
    T ratio_size_balance{};  // x y C'(x) / (n - mN)
    T ratio_chi{};           // chi / case-specific prediction
    T a_n{};
};

template <class T>
ChiCheckReport<T> chi_asymptotic_check(const Evaluator<T>& ev, const SaddleSolution<T>& sol,
                                       const T& tol = T(1e-12)) {
    const long m = ev.m();
    const T alpha = num::from_rational<T>(ev.spec().alpha_q);
    auto d = ev.derivs(sol.x, 1, tol);
    ChiCheckReport<T> rep;
    rep.ratio_size_balance = sol.x * sol.y * d.v[1] / T(sol.n - m * sol.N);
    auto ns_n = solve_Nstar<T>(ev.spec(), T(sol.n), tol);
    auto ns_rest = solve_Nstar<T>(ev.spec(), T(sol.n - m * sol.N), tol);
    rep.a_n = compute_a_n<T>(ev.spec(), sol.n, sol.N, ns_n, ns_rest);
    if (sol.regime == Regime::CaseII) {
        T pred = alpha * rep.a_n * T(sol.N) / T(sol.n - m * sol.N);
        rep.ratio_chi = sol.chi / pred;
    } else {
        T pred = alpha * T(sol.N) / T(sol.n);
        rep.ratio_chi = sol.chi / pred;
    }
    return rep;
}

}  // namespace emset::saddle
