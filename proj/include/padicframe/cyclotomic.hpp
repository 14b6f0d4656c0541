#pragma once

#include "padicframe/padic.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace padicframe {

/// Element of Q(zeta_p), zeta_p = exp(2 pi i / p), in the power basis 1, zeta, ..., zeta^{p-2}.
///
/// Products are formed in Q[x]/(x^p - 1) and folded back with
/// zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}). For p = 2 the basis is {1} and zeta = -1.
class CycloNumber {
public:
    explicit CycloNumber(std::int64_t p) : p_(p), coeffs_(basis_size(p)) {
        if (p < 2) throw PadicError("cyclotomic prime must be at least 2");
    }
    CycloNumber(std::int64_t p, const Rational& r) : CycloNumber(p) { coeffs_[0] = r; }

    /// zeta^m, m taken mod p.
    static CycloNumber root_of_unity(std::int64_t m, std::int64_t p) {
        std::vector<Rational> w(static_cast<std::size_t>(p));
        w[static_cast<std::size_t>(reduce_exponent(m, p))] = 1;
        return fold(p, std::move(w));
    }

    /// Builds sum_k w_k zeta^k from p coefficients (the redundant basis 1, ..., zeta^{p-1}).
    static CycloNumber from_redundant(std::int64_t p, std::vector<Rational> w) {
        if (w.size() != static_cast<std::size_t>(p)) throw PadicError("expected p redundant coefficients");
        return fold(p, std::move(w));
    }

    /// Builds sum_k c_k zeta^k from the canonical coefficient list (length p - 1, or 1 for p = 2).
    static CycloNumber from_coefficients(std::int64_t p, std::vector<Rational> coeffs) {
        CycloNumber x(p);
        if (coeffs.size() != x.coeffs_.size()) throw PadicError("wrong number of cyclotomic coefficients");
        x.coeffs_ = std::move(coeffs);
        return x;
    }

    std::int64_t prime() const noexcept { return p_; }
    const std::vector<Rational>& coefficients() const noexcept { return coeffs_; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }
    bool is_rational() const {
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            if (coeffs_[k] != 0) return false;
        return true;
    }
    /// Constant coefficient; meaningful as "the value" only when is_rational().
    const Rational& constant() const { return coeffs_[0]; }

    friend bool operator==(const CycloNumber&, const CycloNumber&) = default;

    CycloNumber operator-() const {
        CycloNumber r(*this);
        for (auto& c : r.coeffs_) c = -c;
        return r;
    }
    CycloNumber& operator+=(const CycloNumber& y) {
        check(y);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += y.coeffs_[k];
        return *this;
    }
    CycloNumber& operator-=(const CycloNumber& y) {
        check(y);
        for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= y.coeffs_[k];
        return *this;
    }
    CycloNumber& operator*=(const Rational& r) {
        for (auto& c : coeffs_) c *= r;
        return *this;
    }
    friend CycloNumber operator+(CycloNumber x, const CycloNumber& y) { return x += y; }
    friend CycloNumber operator-(CycloNumber x, const CycloNumber& y) { return x -= y; }
    friend CycloNumber operator*(CycloNumber x, const Rational& r) { return x *= r; }
    friend CycloNumber operator*(const Rational& r, CycloNumber x) { return x *= r; }

    friend CycloNumber operator*(const CycloNumber& x, const CycloNumber& y) {
        x.check(y);
        const std::int64_t p = x.p_;
        std::vector<Rational> w(static_cast<std::size_t>(p));
        const std::size_t n = x.coeffs_.size();
        for (std::size_t i = 0; i < n; ++i) {
            if (x.coeffs_[i] == 0) continue;
            for (std::size_t k = 0; k < n; ++k) {
                if (y.coeffs_[k] == 0) continue;
                w[(i + k) % static_cast<std::size_t>(p)] += x.coeffs_[i] * y.coeffs_[k];
            }
        }
        return fold(p, std::move(w));
    }
    CycloNumber& operator*=(const CycloNumber& y) { return *this = *this * y; }

    /// Image under the Galois automorphism zeta -> zeta^t, t prime to p.
    CycloNumber galois(std::int64_t t) const {
        std::vector<Rational> w(static_cast<std::size_t>(p_));
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            w[static_cast<std::size_t>(reduce_exponent(t * static_cast<std::int64_t>(k), p_))] += coeffs_[k];
        return fold(p_, std::move(w));
    }

    /// Multiplication by zeta^m (a rotation of the redundant basis).
    CycloNumber times_zeta(std::int64_t m) const {
        const std::int64_t s = reduce_exponent(m, p_);
        if (s == 0) return *this;
        std::vector<Rational> w(static_cast<std::size_t>(p_));
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            w[static_cast<std::size_t>((static_cast<std::int64_t>(k) + s) % p_)] = coeffs_[k];
        return fold(p_, std::move(w));
    }

private:
    static std::size_t basis_size(std::int64_t p) { return p <= 2 ? 1 : static_cast<std::size_t>(p - 1); }

    static std::int64_t reduce_exponent(std::int64_t m, std::int64_t p) {
        const std::int64_t r = m % p;
        return r < 0 ? r + p : r;
    }

    /// w has p entries (coefficients of 1..zeta^{p-1}); fold the top one back.
    static CycloNumber fold(std::int64_t p, std::vector<Rational> w) {
        CycloNumber out(p);
        const Rational top = w.back();
        for (std::size_t k = 0; k < out.coeffs_.size(); ++k) out.coeffs_[k] = w[k] - top;
        return out;
    }

    void check(const CycloNumber& y) const {
        if (p_ != y.p_) throw PadicError("mismatched primes");
    }

    std::int64_t p_;
    std::vector<Rational> coeffs_;
};

inline CycloNumber root_of_unity(std::int64_t m, std::int64_t p) { return CycloNumber::root_of_unity(m, p); }

/// Complex conjugation, zeta -> zeta^{p-1}.
inline CycloNumber conjugate(const CycloNumber& x) { return x.galois(x.prime() - 1); }

/// x * conj(x); lies in the real subfield.
inline CycloNumber norm_sq(const CycloNumber& x) { return x * conjugate(x); }

/// Field norm down to Q: the product of all Galois conjugates.
inline Rational field_norm(const CycloNumber& x) {
    CycloNumber prod = x;
    for (std::int64_t t = 2; t < x.prime(); ++t) prod *= x.galois(t);
    if (!prod.is_rational()) throw std::logic_error("field norm is not rational");
    return prod.constant();
}

inline CycloNumber inverse(const CycloNumber& x) {
    if (x.is_zero()) throw PadicError("zero has no inverse");
    CycloNumber others(x.prime(), Rational(1));
    for (std::int64_t t = 2; t < x.prime(); ++t) others *= x.galois(t);
    const CycloNumber n = x * others;
    if (!n.is_rational()) throw std::logic_error("field norm is not rational");
    return others * (Rational(1) / n.constant());
}

inline CycloNumber operator/(const CycloNumber& x, const CycloNumber& y) { return x * inverse(y); }

inline std::complex<double> to_complex_float(const CycloNumber& x) {
    const std::int64_t p = x.prime();
    std::complex<double> sum{0.0, 0.0};
    const auto& c = x.coefficients();
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] == 0) continue;
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(p);
        sum += to_double(c[k]) * std::polar(1.0, angle);
    }
    return sum;
}

/// What the wavelet and frame code needs from a coefficient type. Exact coefficients live in
/// Q(zeta_p); float coefficients are std::complex<double> and compare with a tolerance.
template <class Coeff>
struct CoefficientTraits;

template <>
struct CoefficientTraits<CycloNumber> {
    static constexpr bool exact = true;

    static CycloNumber zero(std::int64_t p) { return CycloNumber(p); }
    static CycloNumber from_integer(std::int64_t v, std::int64_t p) { return CycloNumber(p, Rational(v)); }
    static bool is_zero(const CycloNumber& c) { return c.is_zero(); }
    static CycloNumber conj(const CycloNumber& c) { return conjugate(c); }
    static CycloNumber times_zeta(const CycloNumber& c, std::int64_t m, std::int64_t) { return c.times_zeta(m); }
    /// sum_k counts[k] zeta^k, counts indexed 0..p-1.
    static CycloNumber zeta_sum(const std::vector<Integer>& counts, std::int64_t p) {
        std::vector<Rational> w(static_cast<std::size_t>(p));
        for (std::size_t k = 0; k < counts.size(); ++k) w[k] = Rational(counts[k]);
        return CycloNumber::from_redundant(p, std::move(w));
    }
    static std::complex<double> to_complex(const CycloNumber& c) { return to_complex_float(c); }
    static bool same(const CycloNumber& x, const CycloNumber& y) { return x == y; }
};

template <>
struct CoefficientTraits<std::complex<double>> {
    using C = std::complex<double>;
    static constexpr bool exact = false;
    static constexpr double tolerance = 1e-9;

    static C zero(std::int64_t) { return {0.0, 0.0}; }
    static C from_integer(std::int64_t v, std::int64_t) { return {static_cast<double>(v), 0.0}; }
    static bool is_zero(const C& c) { return c == C{0.0, 0.0}; }
    static C conj(const C& c) { return std::conj(c); }
    static C zeta(std::int64_t m, std::int64_t p) {
        return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(m % p) / static_cast<double>(p));
    }
    static C times_zeta(const C& c, std::int64_t m, std::int64_t p) { return c * zeta(m, p); }
    static C zeta_sum(const std::vector<Integer>& counts, std::int64_t p) {
        C s{0.0, 0.0};
        for (std::size_t k = 0; k < counts.size(); ++k)
            if (counts[k] != 0) s += counts[k].convert_to<double>() * zeta(static_cast<std::int64_t>(k), p);
        return s;
    }
    static std::complex<double> to_complex(const C& c) { return c; }
    static bool same(const C& x, const C& y) {
        return std::abs(x - y) <= tolerance * std::max(1.0, std::max(std::abs(x), std::abs(y)));
    }
};

}  // namespace padicframe
