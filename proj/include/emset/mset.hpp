#pragma once

#include <vector>

#include "emset/numeric.hpp"
#include "emset/series.hpp"

namespace emset::series {

inline constexpr long kTableCellGuard = 10'000'000;

/// Dense table of bivariate coefficients; g(n, N) is the coefficient of
/// x^n y^N. Requests beyond the cell guard are rejected, not spilled.
template <class T>
struct BivariateTable {
    long n_max = 0;
    long N_max = 0;
    std::vector<T> cells;  // row-major: (n, N) at n * (N_max+1) + N

    BivariateTable() = default;
    BivariateTable(long n_max_, long N_max_) : n_max(n_max_), N_max(N_max_) {
        if (n_max < 0 || N_max < 0) throw DomainError("BivariateTable: negative truncation");
        long cellcount = (n_max + 1) * (N_max + 1);
        if (cellcount > kTableCellGuard)
            throw SizeError("BivariateTable: " + std::to_string(cellcount) +
                            " cells exceed the dense-storage guard");
        cells.assign(static_cast<size_t>(cellcount), T(0));
    }

    const T& g(long n, long N) const { return cells[static_cast<size_t>(n * (N_max + 1) + N)]; }
    T& g(long n, long N) { return cells[static_cast<size_t>(n * (N_max + 1) + N)]; }

    std::vector<T> row_sums() const {
        std::vector<T> s(static_cast<size_t>(n_max) + 1, T(0));
        for (long n = 0; n <= n_max; ++n)
            for (long N = 0; N <= N_max; ++N) s[static_cast<size_t>(n)] += g(n, N);
        return s;
    }

    bool operator==(const BivariateTable& o) const {
        return n_max == o.n_max && N_max == o.N_max && cells == o.cells;
    }
};

/// Exponential route: coefficients of exp(sum_j C(x^j) y^j / j) truncated to
/// (n_max, N_max). The j-sum stops at min(N_max, n_max/m): higher j cannot
/// reach the truncation window since C starts at x^m.
template <class T>
BivariateTable<T> mset_exp_transform(const CoeffVector<T>& c, long n_max, long N_max) {
    if (c.n_max() >= 0 && !(c[0] == T(0)))
        throw DomainError("mset_exp_transform: c[0] must vanish");
    BivariateTable<T> out(n_max, N_max);
    out.g(0, 0) = T(1);

    long m = c.valuation();
    long j_hi = N_max;
    if (m > 0 && n_max / m < j_hi) j_hi = n_max / m;
    if (m < 0) j_hi = 0;  // zero series: identity table

    // a[j][i]: coefficient of x^i in C(x^j)/j, nonzero only at i = j*k.
    std::vector<std::vector<T>> a(static_cast<size_t>(j_hi) + 1);
    for (long j = 1; j <= j_hi; ++j) {
        auto& aj = a[static_cast<size_t>(j)];
        aj.assign(static_cast<size_t>(n_max) + 1, T(0));
        for (long k = 1; k * j <= n_max && k <= c.n_max(); ++k)
            aj[static_cast<size_t>(k * j)] = c[k] / T(j);
    }

    // exp recurrence in y: N * G_N = sum_{j<=N} j * A_j * G_{N-j}.
    for (long N = 1; N <= N_max; ++N) {
        for (long j = 1; j <= (N < j_hi ? N : j_hi); ++j) {
            const auto& aj = a[static_cast<size_t>(j)];
            for (long i = j * (m > 0 ? m : 1); i <= n_max; i += j) {
                const T& av = aj[static_cast<size_t>(i)];
                if (av == T(0)) continue;
                T w = T(j) * av;
                for (long n = i; n <= n_max; ++n) {
                    const T& prev = out.g(n - i, N - j);
                    if (prev == T(0)) continue;
                    out.g(n, N) += w * prev;
                }
            }
        }
        for (long n = 0; n <= n_max; ++n) out.g(n, N) /= T(N);
    }
    return out;
}

/// Product route: multiplies out prod_k (1 - x^k y)^(-c_k) using
/// (1 - x^k y)^(-c) = sum_d binom(c+d-1, d) x^(kd) y^d with the rising
/// factorial form of the generalized binomial (real or rational c).
template <class T>
BivariateTable<T> mset_product_transform(const CoeffVector<T>& c, long n_max, long N_max) {
    if (c.n_max() >= 0 && !(c[0] == T(0)))
        throw DomainError("mset_product_transform: c[0] must vanish");
    BivariateTable<T> out(n_max, N_max);
    out.g(0, 0) = T(1);

    for (long k = 1; k <= n_max && k <= c.n_max(); ++k) {
        const T& ck = c[k];
        if (ck == T(0)) continue;
        long d_hi = n_max / k;
        if (N_max < d_hi) d_hi = N_max;
        // binom(ck + d - 1, d) by the rising-factorial product.
        std::vector<T> fac(static_cast<size_t>(d_hi) + 1, T(1));
        for (long d = 1; d <= d_hi; ++d)
            fac[static_cast<size_t>(d)] = fac[static_cast<size_t>(d - 1)] * (ck + T(d - 1)) / T(d);
        // Multiply the accumulator by the factor, in place, descending in
        // (n, N) so lower cells are still the pre-multiplication values.
        for (long n = n_max; n >= 0; --n) {
            for (long N = N_max; N >= 0; --N) {
                T acc = out.g(n, N);
                for (long d = 1; d <= d_hi; ++d) {
                    long nn = n - k * d, NN = N - d;
                    if (nn < 0 || NN < 0) break;
                    const T& prev = out.g(nn, NN);
                    if (prev == T(0)) continue;
                    acc += fac[static_cast<size_t>(d)] * prev;
                }
                out.g(n, N) = acc;
            }
        }
    }
    return out;
}

}  // namespace emset::series
