#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace emset::boltz {

/// SplitMix64; used to expand seeds and to derive independent substreams.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

/// xoshiro256** seeded through SplitMix64. Identical seeds give identical
/// streams on every platform; substreams are derived, never split in place.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        SplitMix64 sm(seed);
        for (auto& w : s_) w = sm.next();
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    /// Independent stream for a worker/trial index.
    static Rng substream(std::uint64_t seed, std::uint64_t index) {
        SplitMix64 sm(seed ^ (0xd1342543de82ef95ULL * (index + 1)));
        return Rng(sm.next());
    }

    std::uint64_t next_u64() {
        auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
        std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform in (0,1); never returns 0.
    double uniform_pos() {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        return u;
    }

  private:
    std::uint64_t s_[4]{};
};

/// Identifies the generator and seed of a run; same state => same stream.
struct RngState {
    std::uint64_t seed = 0;
    std::string algorithm = "splitmix64/xoshiro256**";
};

namespace detail {

// Bottom-up inversion; exact, cost O(lambda). Used for small means.
inline long poisson_inversion(double lambda, Rng& rng) {
    double p = std::exp(-lambda);
    double u = rng.uniform();
    long k = 0;
    double cum = p;
    while (u >= cum) {
        ++k;
        p *= lambda / static_cast<double>(k);
        cum += p;
        if (k > 2000) break;  // cum has saturated; probability ~0 path
    }
    return k;
}

// Transformed-rejection sampler (Hoermann's PTRS form). The acceptance test
// compares against the exact log-pmf, so the output law is the true Poisson.
inline long poisson_ptrs(double lambda, Rng& rng) {
    const double smu = std::sqrt(lambda);
    const double log_lambda = std::log(lambda);
    const double b = 0.931 + 2.53 * smu;
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double vr = 0.9277 - 3.6224 / (b - 2.0);

    for (;;) {
        double u = rng.uniform() - 0.5;
        double v = rng.uniform_pos();
        double us = 0.5 - std::fabs(u);
        double kf = std::floor((2.0 * a / us + b) * u + lambda + 0.43);
        if (us >= 0.07 && v <= vr) return static_cast<long>(kf);
        if (kf < 0.0 || (us < 0.013 && v > us)) continue;
        long k = static_cast<long>(kf);
        double lhs = std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b);
        double rhs = kf * log_lambda - lambda - std::lgamma(kf + 1.0);
        if (lhs <= rhs) return k;
    }
}

}  // namespace detail

/// Exact Poisson sampling: inversion below mean 30, transformed rejection
/// above. No normal approximation anywhere.
inline long poisson(double lambda, Rng& rng) {
    if (lambda <= 0.0) return 0;
    if (lambda < 30.0) return detail::poisson_inversion(lambda, rng);
    return detail::poisson_ptrs(lambda, rng);
}

}  // namespace emset::boltz
