#pragma once

#include "emset/eval.hpp"
#include "emset/numeric.hpp"

namespace emset::saddle {

namespace detail {

/// Constant A with C(z) <= c_m z^m (1 + A z) for all 0 < z <= a.
/// A = (C(a) - c_m a^m) a^{-m-1} / c_m; the numerator is evaluated from
/// index m+1 upward so no cancellation occurs.
template <class T>
T linear_excess_constant(const Evaluator<T>& ev, const T& a, const T& tol) {
    if (ev.expansive() && !(a < ev.rho())) throw DomainError("excess constant: a >= rho");
    const long m = ev.m();
    T tail = ev.eval(a, 0, tol, m + 1).value;
    return tail / (num::pow_t(a, T(m + 1)) * ev.c_m());
}

}  // namespace detail

/// Sum of C(x^j) y^j / j over j >= j0 with a certified geometric tail:
/// each summand is at most c_m (x^m y)^j (1 + A x^j) / j. Requires
/// x^m y < 1; for j0 = 1 additionally x < rho strictly (x = rho is fine
/// from j0 = 2 on since then x^j <= rho^2).
template <class T>
SeriesValue<T> cycle_sum(const Evaluator<T>& ev, const T& x, const T& y, int j0, const T& tol) {
    if (!(x > T(0))) throw DomainError("cycle_sum: x must be positive");
    if (y < T(0)) throw DomainError("cycle_sum: y must be nonnegative");
    const long m = ev.m();
    const T sigma = num::pow_t(x, T(m)) * y;
    if (!(sigma < T(1))) throw DomainError("cycle_sum: x^m y >= 1, series diverges");
    if (ev.expansive()) {
        if (j0 <= 1 && !(x < ev.rho())) throw DomainError("cycle_sum: x >= rho with j=1 term");
        if (!(x <= ev.rho())) throw DomainError("cycle_sum: x > rho");
    } else if (!(x < T(1))) {
        throw DomainError("cycle_sum: raw weights need x < 1");
    }

    SeriesValue<T> out;
    if (y == T(0)) return out;

    // The excess constant must cover every evaluation point x^j, j >= j0.
    const T a = (ev.expansive() && !(x < ev.rho())) ? x * x : x;
    const T A = detail::linear_excess_constant(ev, a, tol);
    const T cm = ev.c_m();
    const T xs = sigma * x;

    T sum(0);
    T xj = num::pow_t(x, T(j0));
    T yj = num::pow_t(y, T(j0));
    T sig_pow = num::pow_t(sigma, T(j0));
    long j = j0;
    for (;; ++j) {
        sum += ev.eval(xj, 0, tol).value * yj / T(j);
        sig_pow *= sigma;  // sigma^(j+1)
        T tail = cm / T(j + 1) *
                 (sig_pow / (T(1) - sigma) + A * sig_pow * num::pow_t(x, T(j + 1)) / (T(1) - xs));
        out.tail_bound = tail;
        if (tail <= tol || tail <= num::machine_eps<T>() * T(16) * (sum > T(0) ? sum : T(1))) break;
        if (j > 4'000'000) throw PrecisionError("cycle_sum: tail failed to certify");
        xj *= x;
        yj *= y;
    }
    out.value = sum;
    out.terms_used = j - j0 + 1;
    return out;
}

/// G^{>=2}(x, y) = exp(sum_{j>=2} C(x^j) y^j / j).
template <class T>
SeriesValue<T> G_ge2(const Evaluator<T>& ev, const T& x, const T& y, const T& tol) {
    using std::exp;
    auto s = cycle_sum(ev, x, y, 2, tol);
    SeriesValue<T> out;
    out.value = exp(s.value);
    out.tail_bound = out.value * (exp(s.tail_bound) - T(1));
    out.terms_used = s.terms_used;
    return out;
}

/// G_{>m}^{>=2}(rho) = exp(sum_{j>=2} (C(rho^j) - c_m rho^{jm})/(j rho^{jm})).
/// For raw weights concentrated at m the numerator vanishes and the value
/// is exactly 1.
template <class T>
SeriesValue<T> G_ge2_gtm(const Evaluator<T>& ev, const T& tol) {
    using std::exp;
    SeriesValue<T> out;
    if (!ev.expansive()) {
        const auto& f = ev.raw();
        for (long k = ev.m() + 1; k <= f.n_max(); ++k)
            if (!(f[k] == T(0)))
                throw DomainError("G_ge2_gtm: expansive spec required unless weights stop at m");
        out.value = T(1);
        return out;
    }
    const T rho = ev.rho();
    const long m = ev.m();
    const T cm = ev.c_m();
    const T rho2 = rho * rho;
    const T A = detail::linear_excess_constant(ev, rho2, tol);

    T sum(0);
    T rj = rho * rho;
    long j = 2;
    for (;; ++j) {
        T numer = ev.eval(rj, 0, tol, m + 1).value;  // C(rho^j) - c_m rho^{jm}
        sum += numer / (T(j) * num::pow_t(rj, T(m)));
        // summand_j' <= c_m A rho^{j'} / j' beyond j
        T tail = cm * A * num::pow_t(rho, T(j + 1)) / (T(j + 1) * (T(1) - rho));
        if (tail <= tol || tail <= num::machine_eps<T>() * T(16) * (sum > T(0) ? sum : T(1))) {
            out.value = exp(sum);
            out.tail_bound = out.value * (exp(tail) - T(1));
            out.terms_used = j - 1;
            return out;
        }
        if (j > 4'000'000) throw PrecisionError("G_ge2_gtm: tail failed to certify");
        rj *= rho;
    }
}

/// G(x0, y0) = exp(sum_{j>=1} C(x0^j) y0^j / j); needs x0 < rho strictly.
template <class T>
SeriesValue<T> G_eval(const Evaluator<T>& ev, const T& x0, const T& y0, const T& tol) {
    using std::exp;
    auto s = cycle_sum(ev, x0, y0, 1, tol);
    SeriesValue<T> out;
    out.value = exp(s.value);
    out.tail_bound = out.value * (exp(s.tail_bound) - T(1));
    out.terms_used = s.terms_used;
    return out;
}

}  // namespace emset::saddle
