#pragma once

#include <array>
#include <optional>
#include <vector>

#include "emset/model.hpp"
#include "emset/numeric.hpp"
#include "emset/series.hpp"

namespace emset::saddle {

/// A certified partial evaluation: |true - value| <= tail_bound.
template <class T>
struct SeriesValue {
    T value{};
    T tail_bound{};
    long terms_used = 0;
};

template <class T>
struct CDerivs {
    std::array<T, 4> v{};     // C, C', C'', C'''
    std::array<T, 4> tail{};  // certified remainder bounds per order
    long terms_used = 0;
};

/// Evaluates C and its derivatives at real points, for an expansive spec
/// (infinite series with geometric tail certificates) or a raw polynomial.
/// Terms are formed as w_j (x/rho)^j with w_j = h(j) j^(alpha-1), which
/// keeps every intermediate inside the working range even when c_j itself
/// would overflow. Instances grow a weight cache lazily; use one instance
/// per thread.
template <class T>
class Evaluator {
  public:
    explicit Evaluator(model::ExpansiveSpec spec, long max_terms = 4'000'000)
        : spec_(std::move(spec)), max_terms_(max_terms) {
        static_assert(!num::is_exact_v<T>, "expansive evaluation is a float-mode operation");
        rho_ = num::from_rational<T>(spec_->rho_q);
        alpha_ = num::from_rational<T>(spec_->alpha_q);
        cm_ = spec_->template coeff<T>(spec_->m);
    }

    explicit Evaluator(series::CoeffVector<T> raw) : raw_(std::move(raw)) {
        long v = raw_->valuation();
        if (v < 1) throw DomainError("raw weights must have c[0]=0 and a nonzero entry");
        m_raw_ = v;
    }

    bool expansive() const { return spec_.has_value(); }
    const model::ExpansiveSpec& spec() const { return *spec_; }
    const series::CoeffVector<T>& raw() const { return *raw_; }
    long m() const { return expansive() ? spec_->m : m_raw_; }
    const T& rho() const {
        if (!expansive()) throw DomainError("raw weights have no finite radius");
        return rho_;
    }
    T c_m() const { return expansive() ? cm_ : (*raw_)[m_raw_]; }

    /// C^(k)(x) for k = 0..kmax in one pass with certified tails. With
    /// start_index > 0 only terms j >= start_index are summed (evaluates
    /// tail numerators like C(x) - c_m x^m without cancellation). The
    /// absolute tolerance applies per order; types coarser than the
    /// tolerance stop at their own relative floor instead.
    CDerivs<T> derivs(const T& x, int kmax, const T& tol_abs, long start_index = 0) const {
        if (kmax < 0 || kmax > 3) throw DomainError("derivs: k must be in 0..3");
        if (!(x > T(0))) throw DomainError("derivs: x must be positive");
        if (!expansive()) return derivs_raw(x, kmax, start_index);
        if (!(x < rho_)) throw DomainError("derivs: x >= rho, series diverges");

        using std::exp;
        using std::log;
        CDerivs<T> out;
        const long j0 = std::max<long>({static_cast<long>(spec_->m), start_index, 1});
        const T q = x / rho_;
        const T logq = log(q);
        const double alpha_d = num::to_d(alpha_);
        const double pospow = alpha_d > 1.0 ? alpha_d - 1.0 : 0.0;
        const T rel_floor = num::machine_eps<T>() * T(64);

        std::array<T, 4> sums{};
        std::array<T, 4> last{};
        T qpow = exp(T(j0) * logq);
        long j = j0;
        for (;;) {
            const T& wj = weight(j);
            T t = wj * qpow;
            sums[0] += t;
            last[0] = t;
            for (int k = 1; k <= kmax; ++k) {
                t *= T(j - k + 1);
                sums[static_cast<size_t>(k)] += t;
                last[static_cast<size_t>(k)] = t;
            }
            if (j - j0 >= 16 && ((j & 63) == 0 || j - j0 >= max_terms_)) {
                double hr = spec_->h.ratio_sup(j) *
                            std::pow(1.0 + 1.0 / static_cast<double>(j), pospow) *
                            (1.0 + 1e-12);
                bool done = true;
                for (int k = 0; k <= kmax && done; ++k) {
                    double fall_ratio =
                        k == 0 ? 1.0
                               : static_cast<double>(j + 1) / static_cast<double>(j + 1 - k);
                    T r = q * T(hr * fall_ratio);
                    if (!(r < T(1))) {
                        done = false;
                        break;
                    }
                    T tail = last[static_cast<size_t>(k)] * r / (T(1) - r);
                    out.tail[static_cast<size_t>(k)] = tail;
                    if (!(tail <= tol_abs || tail <= rel_floor * sums[static_cast<size_t>(k)]))
                        done = false;
                }
                if (done) break;
                if (j - j0 >= max_terms_)
                    throw PrecisionError("derivs: tail failed to certify within " +
                                         std::to_string(max_terms_) + " terms");
            }
            ++j;
            qpow *= q;
            if ((j & 4095) == 0) qpow = exp(T(j) * logq);  // kill multiplicative drift
        }
        out.terms_used = j - j0 + 1;
        T xk(1);
        for (int k = 0; k <= kmax; ++k) {
            out.v[static_cast<size_t>(k)] = sums[static_cast<size_t>(k)] / xk;
            out.tail[static_cast<size_t>(k)] = out.tail[static_cast<size_t>(k)] / xk;
            xk *= x;
        }
        return out;
    }

    SeriesValue<T> eval(const T& x, int k, const T& tol_abs, long start_index = 0) const {
        auto d = derivs(x, k, tol_abs, start_index);
        return {d.v[static_cast<size_t>(k)], d.tail[static_cast<size_t>(k)], d.terms_used};
    }

    /// Weight w_j = h(j) j^(alpha-1); c_j x^j == w_j (x/rho)^j.
    const T& weight(long j) const {
        if (j >= static_cast<long>(w_.size())) grow_weights(j);
        return w_[static_cast<size_t>(j)];
    }

  private:
    CDerivs<T> derivs_raw(const T& x, int kmax, long start_index) const {
        CDerivs<T> out;
        const auto& f = *raw_;
        const T invx = T(1) / x;
        for (long j = std::max<long>(1, start_index); j <= f.n_max(); ++j) {
            if (f[j] == T(0)) continue;
            T base = f[j] * num::pow_t(x, T(j));
            out.v[0] += base;
            T fall(1);
            for (int k = 1; k <= kmax; ++k) {
                fall *= T(j - k + 1);
                base *= invx;
                out.v[static_cast<size_t>(k)] += base * fall;
            }
        }
        out.terms_used = f.n_max();
        return out;
    }

    void grow_weights(long j) const {
        size_t need = static_cast<size_t>(j) + 1;
        size_t cap = w_.empty() ? 1024 : w_.size();
        while (cap < need) cap *= 2;
        size_t old = w_.size();
        w_.resize(cap);
        using std::exp;
        using std::log;
        T am1 = alpha_ - T(1);
        for (size_t i = old; i < cap; ++i) {
            if (i < static_cast<size_t>(spec_->m)) {
                w_[i] = T(0);
                continue;
            }
            T x(static_cast<long>(i));
            w_[i] = spec_->h.template eval<T>(x) * exp(am1 * log(x));
        }
    }

    std::optional<model::ExpansiveSpec> spec_;
    std::optional<series::CoeffVector<T>> raw_;
    long m_raw_ = 0;
    long max_terms_ = 0;
    T rho_{}, alpha_{}, cm_{};
    mutable std::vector<T> w_;
};

}  // namespace emset::saddle
