#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "emset/numeric.hpp"
#include "emset/sv.hpp"

namespace emset::model {

/// Weight model c_n = h(n) n^(alpha-1) rho^(-n) for n >= m, zero below m.
/// alpha and rho are kept as exact rationals (config literals are decimal
/// strings); float evaluations convert on demand.
struct ExpansiveSpec {
    Rational alpha_q;
    Rational rho_q;
    SlowlyVarying h;
    unsigned m = 1;

    ExpansiveSpec(const Rational& alpha, const Rational& rho, SlowlyVarying h_, unsigned m_)
        : alpha_q(alpha), rho_q(rho), h(std::move(h_)), m(m_) {
        if (alpha_q <= 0) throw ConfigError("ExpansiveSpec: alpha must be > 0");
        if (rho_q <= 0 || rho_q >= 1) throw ConfigError("ExpansiveSpec: rho must be in (0,1)");
        if (m < 1) throw ConfigError("ExpansiveSpec: m must be >= 1");
    }

    double alpha() const { return num::to_d(alpha_q); }
    double rho() const { return num::to_d(rho_q); }

    /// Exact arithmetic needs integral alpha and a logarithm-free h.
    bool exact_eligible() const { return num::is_integer(alpha_q) && h.exact_eligible(); }

    /// c_m, the smallest nonzero weight.
    template <class T>
    T c_m() const {
        return coeff<T>(m);
    }

    template <class T>
    T coeff(long n) const {
        if (n < 1) throw DomainError("coeff_c: n must be >= 1");
        if (n < static_cast<long>(m)) return T(0);
        if constexpr (num::is_exact_v<T>) {
            if (!exact_eligible())
                throw PrecisionError("exact mode requires integral alpha and rational h");
            long a = alpha_q.get_num().get_si();
            Rational r = h.eval_exact(n);
            mpz_class np;
            mpz_ui_pow_ui(np.get_mpz_t(), static_cast<unsigned long>(n),
                          static_cast<unsigned long>(a - 1));
            r *= Rational(np);
            r *= num::rational_pow(rho_q, -n);
            return r;
        } else {
            using std::exp;
            using std::log;
            T x(static_cast<double>(n));
            T am1 = num::from_rational<T>(alpha_q) - T(1);
            T lr = log(num::from_rational<T>(rho_q));
            T v = h.eval(x) * exp(am1 * log(x) - T(static_cast<double>(n)) * lr);
            if (!num::finite(v))
                throw PrecisionError("coeff_c: overflow of the working precision at n=" +
                                     std::to_string(n));
            return v;
        }
    }
};

/// Outcome rows of the slow-variation sanity checks.
struct SVCheckReport {
    std::vector<std::pair<double, double>> grid;      // (x, ratio deviation)
    std::vector<std::pair<double, double>> karamata;  // (x, partial-sum ratio)
    std::vector<std::pair<double, bool>> subpoly;     // (x, bound holds)
};

template <class T>
T coeff_c(const ExpansiveSpec& spec, long n) {
    return spec.coeff<T>(n);
}

/// Partial sums of h(s) s^(alpha-1) against the Karamata closed form
/// h(x) x^alpha / alpha. The ratio approaches 1 along an increasing grid.
inline SVCheckReport karamata_check(const ExpansiveSpec& spec, const std::vector<long>& x_grid) {
    SVCheckReport rep;
    long prev = 0;
    for (long x : x_grid) {
        if (x < static_cast<long>(spec.m) + 1) throw DomainError("karamata_check: grid entry below m+1");
        if (x <= prev) throw DomainError("karamata_check: grid must be increasing");
        prev = x;
    }
    double alpha = spec.alpha();
    long double sum = 0.0L;
    long s = spec.m;
    for (long x : x_grid) {
        for (; s < x; ++s) {
            long double hs = spec.h.eval<long double>(static_cast<long double>(s));
            sum += hs * powl(static_cast<long double>(s), static_cast<long double>(alpha) - 1.0L);
        }
        long double hx = spec.h.eval<long double>(static_cast<long double>(x));
        long double closed = hx * powl(static_cast<long double>(x), static_cast<long double>(alpha)) /
                             static_cast<long double>(alpha);
        rep.karamata.emplace_back(static_cast<double>(x), static_cast<double>(sum / closed));
    }
    return rep;
}

/// Two-sided sub-polynomial bound x^(-delta) <= h(x) <= x^delta per grid point.
inline std::vector<std::pair<double, bool>> subpoly_check(const SlowlyVarying& h, double delta,
                                                          const std::vector<double>& x_grid) {
    if (delta <= 0) throw DomainError("subpoly_check: delta must be positive");
    if (x_grid.size() < 2) throw DomainError("subpoly_check: need at least 2 grid points");
    std::vector<std::pair<double, bool>> out;
    double prev = 0;
    for (double x : x_grid) {
        if (x <= prev) throw DomainError("subpoly_check: grid must be increasing");
        prev = x;
        double hx = num::to_d(h.eval<long double>(static_cast<long double>(x)));
        bool ok = std::pow(x, -delta) <= hx && hx <= std::pow(x, delta);
        out.emplace_back(x, ok);
    }
    return out;
}

/// Ratio-deviation rows |h(lambda x)/h(x) - 1| for the SV definition check.
inline std::vector<std::pair<double, double>> sv_ratio_deviation(const SlowlyVarying& h, double lambda,
                                                                 const std::vector<double>& x_grid) {
    std::vector<std::pair<double, double>> out;
    for (double x : x_grid) {
        long double a = h.eval<long double>(static_cast<long double>(lambda * x));
        long double b = h.eval<long double>(static_cast<long double>(x));
        out.emplace_back(x, static_cast<double>(fabsl(a / b - 1.0L)));
    }
    return out;
}

}  // namespace emset::model
