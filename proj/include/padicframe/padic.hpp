#pragma once

#include "padicframe/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace padicframe {

/// Raised for inputs outside an operation's p-adic domain.
class PadicError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A prime p, checked by trial division at construction.
class PrimeContext {
public:
    explicit PrimeContext(std::int64_t p) : p_(p) {
        if (p < 2) throw PadicError("prime must be at least 2, got " + std::to_string(p));
        for (std::int64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw PadicError(std::to_string(p) + " is not prime");
    }

    std::int64_t p() const noexcept { return p_; }

    /// p^k for any integer k.
    Rational scale(std::int64_t k) const { return rpow(p_, k); }

    friend bool operator==(const PrimeContext&, const PrimeContext&) = default;

private:
    std::int64_t p_;
};

/// Exponent of p in a rational; +infinity for zero.
class Valuation {
public:
    static Valuation infinity() { return Valuation(); }
    explicit Valuation(std::int64_t v) : value_(v) {}

    bool is_infinite() const noexcept { return !value_.has_value(); }
    std::int64_t value() const {
        if (!value_) throw PadicError("valuation of zero is +infinity");
        return *value_;
    }

    friend bool operator==(const Valuation&, const Valuation&) = default;
    friend std::strong_ordering operator<=>(const Valuation& x, const Valuation& y) {
        if (x.is_infinite() || y.is_infinite()) return x.is_infinite() <=> y.is_infinite();
        return *x.value_ <=> *y.value_;
    }

private:
    Valuation() = default;
    std::optional<std::int64_t> value_;
};

namespace detail {

inline std::int64_t valuation(const Rational& x, std::int64_t p) {
    Integer num = numerator_of(x);
    Integer den = denominator_of(x);
    return remove_factor(num, p) - remove_factor(den, p);
}

inline bool has_p_power_denominator(const Rational& x, std::int64_t p) {
    Integer den = denominator_of(x);
    remove_factor(den, p);
    return den == 1;
}

/// Canonical representative of x modulo p^k Z_p: the value sum_{l<k} n_l p^l with digits in
/// [0, p). Works for any rational; a denominator prime to p only affects the digits.
inline Rational residue(const Rational& x, std::int64_t p, std::int64_t k) {
    if (x == 0) return Rational(0);
    const Integer num = numerator_of(x);
    Integer unit_den = denominator_of(x);
    const std::int64_t e = remove_factor(unit_den, p);
    const std::int64_t width = e + k;
    if (width <= 0) return Rational(0);
    const Integer mod = ipow(p, width);
    Integer r = unit_den == 1 ? mod_floor(num, mod) : mod_floor(num * inverse_mod(unit_den, mod), mod);
    return Rational(r, ipow(p, e));
}

/// Residue of a p-adic integer modulo p^k as an integer in [0, p^k).
inline Integer integer_residue(const Rational& x, std::int64_t p, std::int64_t k) {
    const Rational r = residue(x, p, k);
    if (denominator_of(r) != 1) throw PadicError("not a p-adic integer");
    return numerator_of(r);
}

}  // namespace detail

/// An exact rational read in Q_p.
class PadicScalar {
public:
    PadicScalar(Rational value, PrimeContext ctx) : value_(std::move(value)), ctx_(ctx) {}
    PadicScalar(std::int64_t value, PrimeContext ctx) : value_(value), ctx_(ctx) {}

    const Rational& value() const noexcept { return value_; }
    const PrimeContext& context() const noexcept { return ctx_; }
    std::int64_t p() const noexcept { return ctx_.p(); }
    bool is_zero() const { return value_ == 0; }

    friend bool operator==(const PadicScalar& x, const PadicScalar& y) {
        return x.ctx_ == y.ctx_ && x.value_ == y.value_;
    }

    PadicScalar operator-() const { return PadicScalar(-value_, ctx_); }
    friend PadicScalar operator+(const PadicScalar& x, const PadicScalar& y) {
        return PadicScalar(x.value_ + y.value_, common(x, y));
    }
    friend PadicScalar operator-(const PadicScalar& x, const PadicScalar& y) {
        return PadicScalar(x.value_ - y.value_, common(x, y));
    }
    friend PadicScalar operator*(const PadicScalar& x, const PadicScalar& y) {
        return PadicScalar(x.value_ * y.value_, common(x, y));
    }
    friend PadicScalar operator/(const PadicScalar& x, const PadicScalar& y) {
        const PrimeContext ctx = common(x, y);
        if (y.is_zero()) throw PadicError("division by zero");
        return PadicScalar(x.value_ / y.value_, ctx);
    }

private:
    static PrimeContext common(const PadicScalar& x, const PadicScalar& y) {
        if (!(x.ctx_ == y.ctx_)) throw PadicError("mismatched primes");
        return x.ctx_;
    }

    Rational value_;
    PrimeContext ctx_;
};

/// Element of the transversal of Q_p / p^k Z_p: sum_{l=-delta}^{k-1} n_l p^l, n_l in [0, p).
struct CosetRepresentative {
    Rational value;
    std::int64_t modulus_exponent = 0;

    friend bool operator==(const CosetRepresentative&, const CosetRepresentative&) = default;
};

/// Base-p digits of a transversal element, lowest exponent first.
struct DigitExpansion {
    std::int64_t lowest_exponent = 0;
    std::vector<std::int64_t> digits;
};

inline Valuation valuation(const PadicScalar& x) {
    if (x.is_zero()) return Valuation::infinity();
    return Valuation(detail::valuation(x.value(), x.p()));
}

/// |x|_p = p^{-v(x)}, and 0 for x = 0.
inline Rational norm(const PadicScalar& x) {
    if (x.is_zero()) return Rational(0);
    return rpow(x.p(), -detail::valuation(x.value(), x.p()));
}

/// x * |x|_p, the unit with x = p^{v(x)} * unit_part(x).
inline PadicScalar unit_part(const PadicScalar& x) {
    if (x.is_zero()) throw PadicError("zero has no unit part");
    return PadicScalar(x.value() * norm(x), x.context());
}

inline bool has_p_power_denominator(const PadicScalar& x) {
    return detail::has_p_power_denominator(x.value(), x.p());
}

/// Residue of x in Q_p / p^k Z_p for any rational x. The digit-expansion operations below are
/// the strict counterparts that insist on a p-power denominator.
inline CosetRepresentative residue_mod(const PadicScalar& x, std::int64_t k) {
    return {detail::residue(x.value(), x.p(), k), k};
}

inline CosetRepresentative coset_representative(const PadicScalar& x, std::int64_t k) {
    if (!has_p_power_denominator(x)) throw PadicError("not p-integral denominator");
    return residue_mod(x, k);
}

/// {x}: the representative of x in Q_p / Z_p.
inline CosetRepresentative fractional_part(const PadicScalar& x) { return coset_representative(x, 0); }

/// Digit n_0 of a p-adic integer, i.e. its image in Z_p / p Z_p.
inline std::int64_t mod_p(const PadicScalar& x) {
    if (!x.is_zero() && detail::valuation(x.value(), x.p()) < 0) throw PadicError("not a p-adic integer");
    return to_int64(detail::integer_residue(x.value(), x.p(), 1));
}

/// y in [0, p^k) with x * y = 1 mod p^k, for a p-adic unit x.
inline Integer invert_mod_pk(const PadicScalar& x, std::int64_t k) {
    if (x.is_zero() || detail::valuation(x.value(), x.p()) != 0) throw PadicError("not a p-adic unit");
    if (k < 0) throw PadicError("invert_mod_pk: negative exponent");
    const Integer mod = ipow(x.p(), k);
    const Integer num = numerator_of(x.value());
    const Integer den = denominator_of(x.value());
    return mod_floor(den * inverse_mod(num, mod), mod);
}

inline DigitExpansion digit_expansion(const CosetRepresentative& r, const PrimeContext& ctx) {
    DigitExpansion out;
    if (r.value == 0) {
        out.lowest_exponent = r.modulus_exponent;
        return out;
    }
    const std::int64_t p = ctx.p();
    Integer num = numerator_of(r.value);
    Integer den = denominator_of(r.value);
    const std::int64_t e = remove_factor(den, p);
    if (den != 1 || num < 0) throw PadicError("not a transversal element");
    out.lowest_exponent = -e;
    const Integer bp(p);
    for (std::int64_t l = -e; l < r.modulus_exponent; ++l) {
        out.digits.push_back((num % bp).convert_to<std::int64_t>());
        num /= bp;
    }
    if (num != 0) throw PadicError("not a transversal element");
    return out;
}

}  // namespace padicframe
