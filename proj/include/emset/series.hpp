#pragma once

#include <vector>

#include "emset/ext_float.hpp"
#include "emset/model.hpp"
#include "emset/numeric.hpp"

namespace emset::series {

/// Truncated power series; coeffs[k] is the coefficient of x^k.
template <class T>
struct CoeffVector {
    std::vector<T> c;

    CoeffVector() = default;
    explicit CoeffVector(long n_max) : c(static_cast<size_t>(n_max) + 1, T(0)) {}

    long n_max() const { return static_cast<long>(c.size()) - 1; }
    const T& operator[](long k) const { return c[static_cast<size_t>(k)]; }
    T& operator[](long k) { return c[static_cast<size_t>(k)]; }

    /// Index of the first nonzero coefficient, or -1 for the zero series.
    long valuation() const {
        for (long k = 0; k <= n_max(); ++k)
            if (!(c[static_cast<size_t>(k)] == T(0))) return k;
        return -1;
    }
};

template <class T>
CoeffVector<T> from_raw(std::vector<T> weights_from_c1) {
    CoeffVector<T> v(static_cast<long>(weights_from_c1.size()));
    for (size_t i = 0; i < weights_from_c1.size(); ++i) v.c[i + 1] = weights_from_c1[i];
    return v;
}

/// Coefficients of C(x) for an expansive spec; index 0 is zero.
template <class T>
CoeffVector<T> build_C(const model::ExpansiveSpec& spec, long n_max) {
    if (n_max < static_cast<long>(spec.m)) throw DomainError("build_C: n_max below m");
    CoeffVector<T> v(n_max);
    for (long k = 1; k <= n_max; ++k) v[k] = spec.coeff<T>(k);
    return v;
}

/// Coefficients of C_{>m}(x) = (C(x) - c_m x^m)/x^m: entry k holds c_{k+m}
/// for k >= 1, entry 0 is zero (the size shift drops the minimal part).
template <class T>
CoeffVector<T> build_C_gtm(const model::ExpansiveSpec& spec, long n_max) {
    if (n_max < 1) throw DomainError("build_C_gtm: n_max must be >= 1");
    CoeffVector<T> v(n_max);
    for (long k = 1; k <= n_max; ++k) v[k] = spec.coeff<T>(k + spec.m);
    return v;
}

/// F^N truncated at n_max. Uses the log-derivative recurrence
/// F G' = N F' G on the valuation-stripped part; matches plain convolution.
template <class T>
CoeffVector<T> series_pow(const CoeffVector<T>& f, long N, long n_max) {
    if (N < 0) throw DomainError("series_pow: negative power");
    CoeffVector<T> g(n_max);
    if (N == 0) {
        g[0] = T(1);
        return g;
    }
    long v = f.valuation();
    if (v < 0) return g;  // 0^N, N >= 1
    if (v > 0 && N > n_max / v) return g;  // result entirely above truncation
    long shift = v * N;
    long len = n_max - shift;  // highest stripped-index needed
    const T& f0 = f[v];
    std::vector<T> gs(static_cast<size_t>(len) + 1, T(0));
    if constexpr (num::is_exact_v<T>) {
        gs[0] = num::rational_pow(f0, N);
    } else {
        using std::pow;
        gs[0] = pow(f0, T(N));
    }
    long klim = f.n_max() - v;  // stripped length of f
    for (long n = 1; n <= len; ++n) {
        T acc(0);
        long kmax = n < klim ? n : klim;
        for (long k = 1; k <= kmax; ++k) {
            const T& fk = f[v + k];
            if (fk == T(0)) continue;
            T w(static_cast<long>(N + 1) * k - n);
            acc += w * fk * gs[static_cast<size_t>(n - k)];
        }
        gs[static_cast<size_t>(n)] = acc / (T(n) * f0);
    }
    for (long n = 0; n <= len; ++n) g[shift + n] = gs[static_cast<size_t>(n)];
    return g;
}

/// series_pow for nonnegative double data with an extended-exponent result.
/// Same log-derivative recurrence; the XFloat carrier absorbs the huge
/// dynamic range of pmf-scale coefficient vectors raised to large powers.
/// f[0] must be positive; the caller strips any valuation beforehand.
inline std::vector<num::XFloat> series_pow_ext(const std::vector<double>& f, long N, long len) {
    using num::XAcc;
    using num::XFloat;
    if (f.empty() || f[0] <= 0.0) throw DomainError("series_pow_ext: f[0] must be positive");
    std::vector<XFloat> g(static_cast<size_t>(len) + 1);
    g[0] = XFloat::from_log(static_cast<long double>(N) * logl(static_cast<long double>(f[0])));
    const long klim = static_cast<long>(f.size()) - 1;
    for (long n = 1; n <= len; ++n) {
        XAcc acc;
        long kmax = n < klim ? n : klim;
        for (long k = 1; k <= kmax; ++k) {
            double fk = f[static_cast<size_t>(k)];
            if (fk == 0.0) continue;
            double w = static_cast<double>((N + 1) * k - n) * fk;
            acc.add(w, g[static_cast<size_t>(n - k)]);
        }
        g[static_cast<size_t>(n)] = acc.value() * (1.0 / (static_cast<double>(n) * f[0]));
    }
    return g;
}

/// exp(F) truncated at n_max; requires F(0) = 0.
template <class T>
CoeffVector<T> series_exp(const CoeffVector<T>& f, long n_max) {
    if (f.n_max() >= 0 && !(f[0] == T(0))) throw DomainError("series_exp: constant term must vanish");
    CoeffVector<T> g(n_max);
    g[0] = T(1);
    long klim = f.n_max();
    for (long n = 1; n <= n_max; ++n) {
        T acc(0);
        long kmax = n < klim ? n : klim;
        for (long k = 1; k <= kmax; ++k) {
            const T& fk = f[k];
            if (fk == T(0)) continue;
            acc += T(k) * fk * g[n - k];
        }
        g[n] = acc / T(n);
    }
    return g;
}

}  // namespace emset::series
