#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace emset::num {

/// Nonnegative float with a 64-bit binary exponent: value = m * 2^e with
/// m in [0.5, 1). Covers probability masses far outside the double range;
/// used by the power-series recurrences on pmf-scale data.
struct XFloat {
    double m = 0.0;
    std::int64_t e = 0;

    static XFloat zero() { return {}; }

    static XFloat from_double(double d) {
        XFloat x;
        if (d == 0.0) return x;
        int ee;
        x.m = std::frexp(d, &ee);
        x.e = ee;
        return x;
    }

    static XFloat from_log(long double ln_value) {
        // value = exp(ln_value) = m * 2^e
        constexpr long double LN2 = 0.6931471805599453094L;
        XFloat x;
        long double k = floorl(ln_value / LN2);
        x.e = static_cast<std::int64_t>(k) + 1;
        x.m = static_cast<double>(expl(ln_value - static_cast<long double>(x.e) * LN2));
        return x;
    }

    bool is_zero() const { return m == 0.0; }

    long double log() const {
        constexpr long double LN2 = 0.6931471805599453094L;
        if (m == 0.0) return -std::numeric_limits<long double>::infinity();
        return logl(static_cast<long double>(m)) + static_cast<long double>(e) * LN2;
    }

    double to_double() const {
        if (m == 0.0) return 0.0;
        if (e > 1023) return std::numeric_limits<double>::infinity();
        if (e < -1050) return 0.0;
        return std::ldexp(m, static_cast<int>(e));
    }

    XFloat operator*(double d) const {
        if (m == 0.0 || d == 0.0) return {};
        XFloat r;
        int ee;
        r.m = std::frexp(m * d, &ee);
        r.e = e + ee;
        return r;
    }

    XFloat operator*(const XFloat& o) const {
        if (m == 0.0 || o.m == 0.0) return {};
        XFloat r;
        int ee;
        r.m = std::frexp(m * o.m, &ee);
        r.e = e + o.e + ee;
        return r;
    }

    XFloat& operator+=(const XFloat& o) {
        if (o.m == 0.0) return *this;
        if (m == 0.0) {
            *this = o;
            return *this;
        }
        std::int64_t d = e - o.e;
        if (d >= 80) return *this;  // o is below 2^-80 relative: negligible
        if (d <= -80) {
            *this = o;
            return *this;
        }
        double sum = m + std::ldexp(o.m, static_cast<int>(-d));
        int ee;
        m = std::frexp(sum, &ee);
        e += ee;
        if (m == 0.0) e = 0;
        return *this;
    }

    bool operator<(const XFloat& o) const {
        if (m == 0.0) return o.m != 0.0;
        if (o.m == 0.0) return false;
        if (e != o.e) return e < o.e;
        return m < o.m;
    }
};

/// Signed accumulator over XFloat magnitudes; the pow recurrence mixes signs.
struct XAcc {
    XFloat pos, neg;
    void add(double coeff, const XFloat& mag) {
        if (coeff >= 0)
            pos += mag * coeff;
        else
            neg += mag * (-coeff);
    }
    /// pos - neg, clamped at zero (entries are mathematically nonnegative).
    XFloat value() const {
        if (neg.is_zero()) return pos;
        if (pos.is_zero() || !(neg < pos)) return XFloat::zero();
        // Subtract at aligned exponents.
        std::int64_t d = pos.e - neg.e;
        if (d >= 80) return pos;
        double diff = pos.m - std::ldexp(neg.m, static_cast<int>(-d));
        if (diff <= 0.0) return XFloat::zero();
        XFloat r;
        int ee;
        r.m = std::frexp(diff, &ee);
        r.e = pos.e + ee;
        return r;
    }
};

}  // namespace emset::num
