#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <stdexcept>
#include <type_traits>

#include <gmpxx.h>

namespace mtm {

// Exact arithmetic scalar used by the verification paths. Arbitrary
// precision, always kept in canonical form by gmpxx.
using Rational = mpq_class;
using BigInt = mpz_class;

enum class NumericMode { exact, floating };

namespace num {

inline Rational ratio(std::int64_t n, std::int64_t d) {
    if (d == 0) throw std::invalid_argument("ratio: zero denominator");
    Rational r(static_cast<long>(n), static_cast<long>(d));
    r.canonicalize();
    return r;
}

template <class S> struct traits;

template <> struct traits<double> {
    static constexpr bool exact = false;
    static double from_ratio(std::int64_t n, std::int64_t d) {
        return static_cast<double>(n) / static_cast<double>(d);
    }
    static double from_rational(const Rational& q) { return q.get_d(); }
    static double to_double(double x) { return x; }
    static std::string str(double x) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", x);
        return buf;
    }
};

template <> struct traits<Rational> {
    static constexpr bool exact = true;
    static Rational from_ratio(std::int64_t n, std::int64_t d) { return ratio(n, d); }
    static Rational from_rational(const Rational& q) { return q; }
    static double to_double(const Rational& x) { return x.get_d(); }
    static std::string str(const Rational& x) { return x.get_str(); }
};

template <class S> bool is_zero(const S& x) { return x == S(0); }
inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline double abs_val(double x) { return x < 0 ? -x : x; }
inline Rational abs_val(const Rational& x) { return Rational(abs(x)); }

// Parses "p/q", "p" or a decimal literal into an exact rational.
Rational parse_rational(const std::string& text);

inline Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt p(text.substr(0, slash));
            BigInt q(text.substr(slash + 1));
            if (sgn(q) == 0) throw std::invalid_argument("zero denominator");
            Rational r(p, q);
            r.canonicalize();
            return r;
        }
        auto dot = text.find('.');
        if (dot == std::string::npos) {
            Rational r{BigInt(text)};
            return r;
        }
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t frac_len = text.size() - dot - 1;
        BigInt p(digits);
        BigInt q(1);
        for (std::size_t i = 0; i < frac_len; ++i) q *= 10;
        Rational r(p, q);
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse rational: " + text);
    }
}

}  // namespace num
}  // namespace mtm
