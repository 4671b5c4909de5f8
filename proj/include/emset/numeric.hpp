#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

namespace emset {

using BigReal = boost::multiprecision::mpfr_float;
using Rational = mpq_class;

// Error taxonomy shared by the library and the CLI exit codes.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace num {

template <class T>
inline constexpr bool is_exact_v = false;
template <>
inline constexpr bool is_exact_v<Rational> = true;

/// Mantissa bits -> decimal digits for the dynamic-precision float mode.
inline unsigned digits10_for_bits(unsigned bits) {
    double d = static_cast<double>(bits) * 0.30102999566398120;
    unsigned r = static_cast<unsigned>(d);
    return r < 8 ? 8 : r;
}

inline void set_float_precision_bits(unsigned bits) {
    BigReal::default_precision(digits10_for_bits(bits));
}

inline double to_d(double x) { return x; }
inline double to_d(long double x) { return static_cast<double>(x); }
inline double to_d(const BigReal& x) { return x.convert_to<double>(); }
inline double to_d(const Rational& x) { return x.get_d(); }

template <class T>
inline T from_rational(const Rational& q) {
    if constexpr (std::is_same_v<T, Rational>) {
        return q;
    } else if constexpr (std::is_same_v<T, BigReal>) {
        return BigReal(q.get_num().get_str()) / BigReal(q.get_den().get_str());
    } else {
        // Convert numerator and denominator separately; strtold rounds
        // correctly and keeps the extended exponent range.
        long double n = strtold(q.get_num().get_str().c_str(), nullptr);
        long double d = strtold(q.get_den().get_str().c_str(), nullptr);
        return static_cast<T>(n / d);
    }
}

/// q^e with integer e (e may be negative) staying inside the ring.
inline Rational rational_pow(const Rational& q, long e) {
    if (e == 0) return Rational(1);
    mpz_class num = q.get_num(), den = q.get_den();
    unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), a);
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), a);
    Rational r(pn, pd);
    r.canonicalize();
    if (e < 0) {
        if (r == 0) throw DomainError("rational_pow: zero to a negative power");
        return Rational(1) / r;
    }
    return r;
}

/// Parses "p/q", integers and plain decimal strings ("0.25", "-3.5e2") into
/// an exact rational. Decimal literals are exactly representable.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ConfigError("empty numeric literal");
    if (s.find('/') != std::string::npos) {
        Rational q;
        if (q.set_str(s, 10) != 0) throw ConfigError("bad rational literal: " + s);
        q.canonicalize();
        return q;
    }
    std::string t = s;
    long exp10 = 0;
    auto epos = t.find_first_of("eE");
    if (epos != std::string::npos) {
        exp10 = std::stol(t.substr(epos + 1));
        t = t.substr(0, epos);
    }
    auto dot = t.find('.');
    if (dot != std::string::npos) {
        exp10 -= static_cast<long>(t.size() - dot - 1);
        t.erase(dot, 1);
    }
    if (t.empty() || t == "-" || t == "+") throw ConfigError("bad numeric literal: " + s);
    mpz_class m;
    if (m.set_str(t, 10) != 0) throw ConfigError("bad numeric literal: " + s);
    Rational q(m);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
    if (exp10 >= 0)
        q *= Rational(p10);
    else
        q /= Rational(p10);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

template <class T>
inline bool finite(const T& x) {
    if constexpr (std::is_same_v<T, BigReal>) {
        return boost::multiprecision::isfinite(x);
    } else {
        return std::isfinite(x);
    }
}

template <class T>
inline T pow_t(const T& base, const T& e) {
    using std::pow;
    return pow(base, e);
}

template <class T>
inline T machine_eps() {
    if constexpr (std::is_same_v<T, BigReal>) {
        return boost::multiprecision::pow(BigReal(10), -static_cast<int>(BigReal::default_precision()) + 1);
    } else {
        return std::numeric_limits<T>::epsilon();
    }
}

}  // namespace num
}  // namespace emset
