#pragma once

#include <memory>
#include <string>
#include <vector>

#include "emset/numeric.hpp"

namespace emset::model {

/// Closed family of slowly varying functions: positive constants, real
/// powers of the logarithm, and finite products of those. The logarithm is
/// clamped as ln(max(x, e)) so every member is positive and continuous on
/// [1, inf).
class SlowlyVarying {
  public:
    enum class Kind { Constant, LogPower, Product };

    static SlowlyVarying constant(const Rational& c) {
        if (c <= 0) throw ConfigError("SlowlyVarying: constant must be positive");
        SlowlyVarying h;
        h.kind_ = Kind::Constant;
        h.param_q_ = c;
        h.param_ = num::to_d(c);
        return h;
    }
    static SlowlyVarying one() { return constant(Rational(1)); }
    static SlowlyVarying log_power(double beta) {
        SlowlyVarying h;
        h.kind_ = Kind::LogPower;
        h.param_ = beta;
        return h;
    }
    static SlowlyVarying product(std::vector<SlowlyVarying> fs) {
        SlowlyVarying h;
        h.kind_ = Kind::Product;
        h.factors_ = std::move(fs);
        return h;
    }

    Kind kind() const { return kind_; }
    double param() const { return param_; }
    const Rational& param_q() const { return param_q_; }
    const std::vector<SlowlyVarying>& factors() const { return factors_; }

    /// True when eval(n) is an exact rational for every integer n, i.e. the
    /// function is free of logarithms.
    bool exact_eligible() const {
        switch (kind_) {
            case Kind::Constant: return true;
            case Kind::LogPower: return false;
            case Kind::Product:
                for (const auto& f : factors_)
                    if (!f.exact_eligible()) return false;
                return true;
        }
        return false;
    }

    Rational eval_exact(long /*n*/) const {
        if (!exact_eligible()) throw PrecisionError("SlowlyVarying: not exact-evaluable");
        if (kind_ == Kind::Constant) return param_q_;
        Rational r(1);
        for (const auto& f : factors_) r *= f.param_q();
        return r;
    }

    template <class T>
    T eval(const T& x) const {
        if constexpr (num::is_exact_v<T>) {
            if (!exact_eligible()) throw PrecisionError("SlowlyVarying: not exact-evaluable");
            if (kind_ == Kind::Constant) return param_q_;
            T r(1);
            for (const auto& f : factors_) r *= f.template eval<T>(x);
            return r;
        } else {
            using std::exp;
            using std::log;
            switch (kind_) {
                case Kind::Constant: return num::from_rational<T>(param_q_);
                case Kind::LogPower: {
                    T e = exp(T(1));
                    T lx = log(x < e ? e : x);
                    return num::pow_t<T>(lx, T(param_));
                }
                case Kind::Product: {
                    T r(1);
                    for (const auto& f : factors_) r *= f.template eval<T>(x);
                    return r;
                }
            }
            return T(1);
        }
    }

    /// Certified upper bound on sup_{j >= J} h(j+1)/h(j); >= 1 and -> 1.
    double ratio_sup(long J) const {
        switch (kind_) {
            case Kind::Constant: return 1.0;
            case Kind::LogPower: {
                if (param_ <= 0.0) return 1.0;  // decreasing ratio for beta <= 0
                double lj = std::log(std::max(static_cast<double>(J), 2.72));
                // (ln(j+1)/ln j)^beta <= (1 + 1/(j ln j))^beta for j >= 3
                return std::pow(1.0 + 1.0 / (static_cast<double>(J) * lj), param_);
            }
            case Kind::Product: {
                double r = 1.0;
                for (const auto& f : factors_) r *= f.ratio_sup(J);
                return r;
            }
        }
        return 1.0;
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::Constant: return "const(" + param_q_.get_str() + ")";
            case Kind::LogPower: return "log^" + std::to_string(param_);
            case Kind::Product: {
                std::string s = "product(";
                for (size_t i = 0; i < factors_.size(); ++i) {
                    if (i) s += "*";
                    s += factors_[i].describe();
                }
                return s + ")";
            }
        }
        return "?";
    }

  private:
    Kind kind_ = Kind::Constant;
    double param_ = 1.0;
    Rational param_q_ = Rational(1);
    std::vector<SlowlyVarying> factors_;
};

}  // namespace emset::model
