#pragma once

#include <boost/integer/mod_inverse.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace padicframe {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

/// p^k for k >= 0.
inline Integer ipow(std::int64_t base, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("ipow: negative exponent");
    return boost::multiprecision::pow(Integer(base), static_cast<unsigned>(k));
}

/// p^k as a rational, any sign of k.
inline Rational rpow(std::int64_t base, std::int64_t k) {
    if (k >= 0) return Rational(ipow(base, k));
    return Rational(Integer(1), ipow(base, -k));
}

/// x^k for k >= 0.
inline Rational rational_pow(const Rational& x, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("rational_pow: negative exponent");
    const auto e = static_cast<unsigned>(k);
    return Rational(boost::multiprecision::pow(numerator_of(x), e), boost::multiprecision::pow(denominator_of(x), e));
}

/// Checked p^k in 64 bits; throws instead of wrapping.
inline std::int64_t ipow64(std::int64_t base, std::int64_t k) {
    if (k < 0) throw std::invalid_argument("ipow64: negative exponent");
    std::int64_t r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        if (r > std::numeric_limits<std::int64_t>::max() / base)
            throw std::overflow_error("ipow64: " + std::to_string(base) + "^" + std::to_string(k) +
                                      " does not fit in 64 bits");
        r *= base;
    }
    return r;
}

/// Strips every factor p from n and returns how many were removed. n must be nonzero.
inline std::int64_t remove_factor(Integer& n, std::int64_t p) {
    std::int64_t count = 0;
    const Integer bp(p);
    Integer q, r;
    for (;;) {
        boost::multiprecision::divide_qr(n, bp, q, r);
        if (r != 0) return count;
        n.swap(q);
        ++count;
    }
}

/// Least nonnegative residue of a modulo m (m > 0).
inline Integer mod_floor(const Integer& a, const Integer& m) {
    Integer r = a % m;
    if (r < 0) r += m;
    return r;
}

/// Inverse of a modulo m; a must be coprime to m.
inline Integer inverse_mod(const Integer& a, const Integer& m) {
    if (m == 1) return 0;
    const Integer inv = boost::integer::mod_inverse(mod_floor(a, m), m);
    if (inv == 0) throw std::domain_error("inverse_mod: value is not invertible");
    return inv;
}

inline std::int64_t to_int64(const Integer& v) {
    if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer does not fit in 64 bits: " + v.str());
    return v.convert_to<std::int64_t>();
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Formats as "a" or "a/b" (b > 0, reduced).
inline std::string to_string(const Rational& x) {
    const Integer den = denominator_of(x);
    if (den == 1) return numerator_of(x).str();
    return numerator_of(x).str() + "/" + den.str();
}

/// Parses "a", "-a", "a/b" or "-a/b" with decimal digits only; b must be nonzero.
inline Rational parse_rational(std::string_view text) {
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("malformed rational literal \"" + std::string(text) + "\"");
    };
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && s.front() == '-') {
        negative = true;
        s.remove_prefix(1);
    }
    const auto slash = s.find('/');
    const std::string_view num = s.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
    auto all_digits = [](std::string_view d) {
        if (d.empty()) return false;
        for (char c : d)
            if (c < '0' || c > '9') return false;
        return true;
    };
    if (!all_digits(num)) return fail();
    if (slash != std::string_view::npos && !all_digits(den)) return fail();
    Integer n{std::string(num)};
    Integer d = slash == std::string_view::npos ? Integer(1) : Integer{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in rational literal \"" + std::string(text) + "\"");
    if (negative) n = -n;
    return Rational(n, d);
}

}  // namespace padicframe
