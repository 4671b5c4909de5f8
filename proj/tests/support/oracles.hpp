#pragma once

// Independent brute-force oracles for the test suites. Everything here is
// deliberately naive: direct enumeration and direct convolution, no shared
// code paths with the library algorithms under test.

#include <functional>
#include <vector>

#include "emset/numeric.hpp"
#include "emset/rng.hpp"

namespace oracle {

/// Enumerates all integer partitions of n (parts descending) and invokes
/// the callback with each.
inline void enumerate_partitions(long n, const std::function<void(const std::vector<long>&)>& cb) {
    std::vector<long> parts;
    std::function<void(long, long)> rec = [&](long rest, long max_part) {
        if (rest == 0) {
            cb(parts);
            return;
        }
        for (long p = std::min(rest, max_part); p >= 1; --p) {
            parts.push_back(p);
            rec(rest - p, p);
            parts.pop_back();
        }
    };
    rec(n, n);
}

inline long count_partitions(long n) {
    long c = 0;
    enumerate_partitions(n, [&](const std::vector<long>&) { ++c; });
    return c;
}

/// Partitions of n grouped by number of parts; index N holds the count with
/// exactly N parts.
inline std::vector<long> partitions_by_count(long n) {
    std::vector<long> by(static_cast<size_t>(n) + 1, 0);
    enumerate_partitions(n, [&](const std::vector<long>& parts) {
        ++by[parts.size()];
    });
    return by;
}

template <class T>
std::vector<T> naive_conv(const std::vector<T>& a, const std::vector<T>& b, long n_max) {
    std::vector<T> out(static_cast<size_t>(n_max) + 1, T(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == T(0)) continue;
        for (size_t j = 0; j < b.size() && i + j <= static_cast<size_t>(n_max); ++j)
            out[i + j] += a[i] * b[j];
    }
    return out;
}

template <class T>
std::vector<T> naive_pow(const std::vector<T>& f, long N, long n_max) {
    std::vector<T> acc(static_cast<size_t>(n_max) + 1, T(0));
    acc[0] = T(1);
    for (long i = 0; i < N; ++i) acc = naive_conv(acc, f, n_max);
    return acc;
}

/// exp(f) as the truncated sum of f^k / k!.
template <class T>
std::vector<T> naive_exp(const std::vector<T>& f, long n_max) {
    std::vector<T> out(static_cast<size_t>(n_max) + 1, T(0));
    out[0] = T(1);
    std::vector<T> fk(static_cast<size_t>(n_max) + 1, T(0));
    fk[0] = T(1);
    T kfact(1);
    for (long k = 1; k <= n_max; ++k) {
        fk = naive_conv(fk, f, n_max);
        kfact *= T(k);
        for (long i = 0; i <= n_max; ++i) out[static_cast<size_t>(i)] += fk[static_cast<size_t>(i)] / kfact;
    }
    return out;
}

/// Random nonnegative rational weight vector with entries in [0, 5]
/// (sixteenths), deterministic in the seed.
inline std::vector<emset::Rational> random_weights(std::uint64_t seed, size_t len) {
    emset::boltz::Rng rng(seed);
    std::vector<emset::Rational> w;
    for (size_t i = 0; i < len; ++i) {
        long k = static_cast<long>(rng.next_u64() % 81);  // 0..80 sixteenths
        w.emplace_back(k, 16);
        w.back().canonicalize();
    }
    return w;
}

}  // namespace oracle
