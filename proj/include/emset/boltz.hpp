#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "emset/gseries.hpp"
#include "emset/rng.hpp"
#include "emset/solve.hpp"

namespace emset::boltz {

using saddle::Evaluator;

/// Size-tilted component law Pr[k] = c_k x0^k / C(x0), sampled by inversion
/// over a cumulative table; a dominated geometric rejection covers the
/// (mass <= cut_eps) region beyond the table.
class ComponentLaw {
  public:
    template <class T>
    ComponentLaw(const Evaluator<T>& ev, const T& x0, double cut_eps = 1e-15) {
        using std::exp;
        using std::log;
        m_ = ev.m();
        T Cx = ev.eval(x0, 0, T(1e-30)).value;
        log_c_norm_ = static_cast<double>(num::to_d(log(Cx)));
        if (ev.expansive()) {
            expansive_ = true;
            log_q_ = num::to_d(log(x0 / ev.rho()));
            // cumulative table to tail mass <= cut_eps
            long double cum = 0.0L;
            long j = m_;
            const long double target = 1.0L - static_cast<long double>(cut_eps);
            for (;;) {
                long double pj = expl(static_cast<long double>(
                    num::to_d(log(ev.weight(j)) + T(j) * log(x0 / ev.rho()) - log(Cx))));
                cum += pj;
                cdf_.push_back(static_cast<double>(cum));
                logw_.push_back(num::to_d(log(ev.weight(j))));
                if (cum >= target && j > m_) break;
                if (j - m_ > 4'000'000) throw PrecisionError("ComponentLaw: table too long");
                ++j;
            }
            K_ = j;
            // certified ratio bound for the tail envelope
            double alpha = num::to_d(num::from_rational<double>(ev.spec().alpha_q));
            double pospow = alpha > 1.0 ? alpha - 1.0 : 0.0;
            ratio_hat_ = std::exp(log_q_) * ev.spec().h.ratio_sup(K_) *
                         std::pow(1.0 + 1.0 / static_cast<double>(K_), pospow) * (1.0 + 1e-12);
            if (ratio_hat_ >= 1.0) throw PrecisionError("ComponentLaw: tail ratio not < 1");
            log_pK_ = logw_.back() + static_cast<double>(K_) * log_q_ - log_c_norm_;
            h_ = ev.spec().h;
            am1_ = num::to_d(num::from_rational<double>(ev.spec().alpha_q)) - 1.0;
        } else {
            expansive_ = false;
            const auto& f = ev.raw();
            long double cum = 0.0L;
            for (long j = m_; j <= f.n_max(); ++j) {
                long double pj =
                    static_cast<long double>(num::to_d(f[j] * num::pow_t(x0, T(j)) / Cx));
                cum += pj;
                cdf_.push_back(static_cast<double>(cum));
            }
            K_ = f.n_max();
            ratio_hat_ = 0.0;
        }
    }

    long m() const { return m_; }

    long sample(Rng& rng) const {
        double u = rng.uniform();
        // table inversion; cdf_ is short for strongly tilted laws
        if (u < cdf_.back()) {
            size_t lo = 0, hi = cdf_.size() - 1;
            while (lo < hi) {
                size_t mid = (lo + hi) / 2;
                if (u < cdf_[mid])
                    hi = mid;
                else
                    lo = mid + 1;
            }
            return m_ + static_cast<long>(lo);
        }
        if (!expansive_) return K_;  // cdf covers the full polynomial support
        return sample_tail(rng);
    }

    /// Dominated rejection beyond the table: proposal Geometric(1-r) offsets
    /// from K+1, acceptance p_k / (p_K r^(k-K)). Exposed for direct testing;
    /// reached stochastically only with probability <= cut_eps.
    long sample_tail(Rng& rng) const {
        for (int it = 0; it < 100000; ++it) {
            // k = K + 1 + Geom: Pr[offset g] = (1-r) r^g
            double u = rng.uniform_pos();
            long g = static_cast<long>(std::floor(std::log(u) / std::log(ratio_hat_)));
            long k = K_ + 1 + g;
            double log_pk = logw(k) + static_cast<double>(k) * log_q_ - log_c_norm_;
            double log_env = log_pK_ + static_cast<double>(k - K_) * std::log(ratio_hat_);
            double acc = std::exp(log_pk - log_env);
            if (rng.uniform() < acc) return k;
        }
        throw PrecisionError("ComponentLaw: tail rejection failed to accept");
    }

  private:
    double logw(long j) const {
        // ln h(j) + (alpha-1) ln j, recomputed for tail samples
        double lj = std::log(static_cast<double>(j));
        double lh = std::log(num::to_d(h_.eval<long double>(static_cast<long double>(j))));
        return lh + alpha_m1_cached(lj);
    }
    double alpha_m1_cached(double lj) const { return am1_ * lj; }


    bool expansive_ = false;
    long m_ = 1;
    long K_ = 1;
    double log_q_ = 0.0;
    double log_c_norm_ = 0.0;
    double log_pK_ = 0.0;
    double ratio_hat_ = 0.0;
    double am1_ = 0.0;
    std::vector<double> cdf_;
    std::vector<double> logw_;
    model::SlowlyVarying h_ = model::SlowlyVarying::one();
};

/// Poisson cycle parameters for the two-parameter model at (x0, y0):
/// lambda_j = C(x0^j) y0^j / j for j <= j_max, with a certified bound on the
/// mass beyond j_max. Cycle lengths past j_head (where lambda is tiny) are
/// drawn through one aggregated Poisson plus a categorical split.
struct BoltzmannParams {
    double x0 = 0, y0 = 0;
    long j_max = 0;
    std::vector<double> lambda;  // 1-based: lambda[j-1] for j = 1..j_max
    double tail_mass = 0;
    double lambda_total = 0;

    long j_head = 0;
    double lambda_rest = 0;
    std::vector<double> rest_cdf;  // over j in (j_head, j_max]

    std::vector<ComponentLaw> comp;  // per j = 1..j_max
    double log_G = 0;                // ln G(x0, y0)
};

/// One draw of the cycle construction: size = sum_j j * sum_i C_{j,i},
/// count = sum_j j * P_j.
struct SampleOutcome {
    long size = 0;
    long count = 0;
    std::map<long, std::pair<long, std::vector<long>>> per_j;  // j -> (P_j, sizes)
};

namespace detail {

template <class T>
BoltzmannParams build_params(const Evaluator<T>& ev, const T& x0, const T& y0, double eps) {
    using std::exp;
    using std::log;
    if (!(x0 > T(0))) throw DomainError("boltzmann params: x0 must be positive");
    if (y0 < T(0)) throw DomainError("boltzmann params: y0 must be nonnegative");
    const long m = ev.m();
    const T sigma = num::pow_t(x0, T(m)) * y0;
    if (!(sigma < T(1))) throw DomainError("boltzmann params: x0^m y0 >= 1");
    if (ev.expansive() && !(x0 < ev.rho())) throw DomainError("boltzmann params: x0 >= rho");

    BoltzmannParams P;
    P.x0 = num::to_d(x0);
    P.y0 = num::to_d(y0);
    P.log_G = num::to_d(log(saddle::G_eval(ev, x0, y0, T(1e-16)).value));

    if (y0 == T(0)) {
        P.j_max = 0;
        return P;
    }

    if (!ev.expansive() && !(x0 < T(1)))
        throw DomainError("boltzmann params: raw weights need x0 < 1");
    const T cm = ev.c_m();
    const T A = saddle::detail::linear_excess_constant(ev, x0, T(1e-16));
    // lambda_j and the j_max cut: tail sum_{j>J} C(x0^j) y0^j / j bounded as
    // in the cycle sums.
    T xj = x0, yj = y0, sig_pow = sigma;
    const T xs = sigma * x0;
    long j = 1;
    for (;;) {
        T lam = ev.eval(xj, 0, T(1e-18)).value * yj / T(j);
        P.lambda.push_back(num::to_d(lam));
        sig_pow *= sigma;
        T tail = cm / T(j + 1) *
                 (sig_pow / (T(1) - sigma) + A * sig_pow * num::pow_t(x0, T(j + 1)) / (T(1) - xs));
        if (num::to_d(tail) <= eps) {
            P.tail_mass = num::to_d(tail);
            break;
        }
        if (j > 2'000'000) throw PrecisionError("boltzmann params: j_max not reached");
        ++j;
        xj *= x0;
        yj *= y0;
    }
    P.j_max = static_cast<long>(P.lambda.size());
    for (double l : P.lambda) P.lambda_total += l;

    // split: j <= j_head sampled per-j; the rest aggregated
    P.j_head = 1;
    for (long jj = 1; jj <= P.j_max; ++jj)
        if (P.lambda[static_cast<size_t>(jj - 1)] >= 1e-3) P.j_head = jj;
    double rest = 0;
    for (long jj = P.j_head + 1; jj <= P.j_max; ++jj)
        rest += P.lambda[static_cast<size_t>(jj - 1)];
    P.lambda_rest = rest;
    if (P.j_head < P.j_max) {
        double cum = 0;
        for (long jj = P.j_head + 1; jj <= P.j_max; ++jj) {
            cum += P.lambda[static_cast<size_t>(jj - 1)] / rest;
            P.rest_cdf.push_back(cum);
        }
    }

    // per-j component laws
    T xpow = x0;
    for (long jj = 1; jj <= P.j_max; ++jj) {
        P.comp.emplace_back(ev, xpow);
        xpow *= x0;
    }
    return P;
}

}  // namespace detail

/// Tunes (x0, y0) to the saddle at (n, N), or the one-parameter saddle with
/// y0 = 1 when N is absent, then precomputes the sampling tables.
template <class T>
BoltzmannParams tune(const Evaluator<T>& ev, long n, std::optional<long> N, double eps = 1e-12) {
    if (N.has_value()) {
        auto sol = saddle::solve_bivariate(ev, n, *N);
        return detail::build_params(ev, sol.x, sol.y, eps);
    }
    T z = saddle::solve_univariate(ev, n);
    return detail::build_params(ev, z, T(1), eps);
}

/// Parameter point chosen directly (distribution-law test grids).
template <class T>
BoltzmannParams params_at(const Evaluator<T>& ev, const T& x0, const T& y0, double eps = 1e-12) {
    return detail::build_params(ev, x0, y0, eps);
}

/// One component draw from the tilted law at x0.
template <class T>
long sample_gamma_C(const Evaluator<T>& ev, const T& x0, Rng& rng) {
    ComponentLaw law(ev, x0);
    return law.sample(rng);
}

/// One draw of the cycle construction at the prepared parameters.
inline SampleOutcome sample_lambda(const BoltzmannParams& P, Rng& rng, bool record_detail = false) {
    SampleOutcome out;
    auto add_cycles = [&](long j, long Pj) {
        if (Pj <= 0) return;
        std::vector<long>* sizes = nullptr;
        if (record_detail) {
            auto& slot = out.per_j[j];
            slot.first += Pj;
            sizes = &slot.second;
        }
        for (long i = 0; i < Pj; ++i) {
            long comp_size = P.comp[static_cast<size_t>(j - 1)].sample(rng);
            out.size += j * comp_size;
            out.count += j;
            if (sizes) sizes->push_back(comp_size);
        }
    };
    for (long j = 1; j <= P.j_head; ++j)
        add_cycles(j, poisson(P.lambda[static_cast<size_t>(j - 1)], rng));
    if (P.lambda_rest > 0) {
        long M = poisson(P.lambda_rest, rng);
        for (long i = 0; i < M; ++i) {
            double u = rng.uniform();
            size_t lo = 0, hi = P.rest_cdf.size() - 1;
            while (lo < hi) {
                size_t mid = (lo + hi) / 2;
                if (u < P.rest_cdf[mid])
                    hi = mid;
                else
                    lo = mid + 1;
            }
            add_cycles(P.j_head + 1 + static_cast<long>(lo), 1);
        }
    }
    return out;
}

/// Monte-Carlo estimate of the coefficient g_{n,N} through the identity
/// g_{n,N} = x0^{-n} y0^{-N} G(x0,y0) Pr[size = n, count = N]. Returns the
/// log estimate with a delta-method standard error; zero hits yield an
/// infinite standard error.
struct EstimateResult {
    double log_estimate = 0;
    double std_error = 0;
    long hits = 0;
    long trials = 0;
};

inline EstimateResult estimate_gnN(const BoltzmannParams& P, long n, long N, long trials,
                                   std::uint64_t seed, int threads = 1) {
    auto worker_hits = [&](long lo, long hi) {
        long h = 0;
        for (long t = lo; t < hi; ++t) {
            Rng rng = Rng::substream(seed, static_cast<std::uint64_t>(t));
            auto s = sample_lambda(P, rng);
            if (s.size == n && s.count == N) ++h;
        }
        return h;
    };
    long hits = 0;
    if (threads <= 1) {
        hits = worker_hits(0, trials);
    } else {
        std::vector<std::thread> pool;
        std::vector<long> part(static_cast<size_t>(threads), 0);
        long chunk = (trials + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
            long lo = w * chunk, hi = std::min<long>(trials, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back([&, w, lo, hi] { part[static_cast<size_t>(w)] = worker_hits(lo, hi); });
        }
        for (auto& th : pool) th.join();
        for (long p : part) hits += p;
    }

    EstimateResult r;
    r.hits = hits;
    r.trials = trials;
    if (hits == 0) {
        r.log_estimate = -std::numeric_limits<double>::infinity();
        r.std_error = std::numeric_limits<double>::infinity();
        return r;
    }
    double phat = static_cast<double>(hits) / static_cast<double>(trials);
    r.log_estimate = -static_cast<double>(n) * std::log(P.x0) -
                     static_cast<double>(N) * std::log(P.y0) + P.log_G + std::log(phat);
    r.std_error = std::sqrt((1.0 - phat) / (phat * static_cast<double>(trials)));
    return r;
}

}  // namespace emset::boltz
