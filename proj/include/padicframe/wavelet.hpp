#pragma once

#include "padicframe/cyclotomic.hpp"
#include "padicframe/padic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

namespace padicframe {

/// Label (gamma, n, j) of the basis wavelet
///   psi_{gamma n j}(x) = p^{-gamma/2} chi(p^{-1} j (p^gamma x - n)) Omega(|p^gamma x - n|_p),
/// with n a canonical element of Q_p / Z_p and 1 <= j <= p - 1.
struct WaveletIndex {
    std::int64_t gamma = 0;
    Rational n;
    std::int64_t j = 1;

    friend bool operator==(const WaveletIndex&, const WaveletIndex&) = default;
    friend bool operator<(const WaveletIndex& x, const WaveletIndex& y) {
        if (x.gamma != y.gamma) return x.gamma < y.gamma;
        if (x.n != y.n) return x.n < y.n;
        return x.j < y.j;
    }
};

/// Checks the canonical-form invariants; throws PadicError naming the violated one.
inline WaveletIndex make_wavelet_index(const PrimeContext& ctx, std::int64_t gamma, const Rational& n,
                                       std::int64_t j) {
    if (j < 1 || j >= ctx.p())
        throw PadicError("wavelet index j = " + std::to_string(j) + " outside 1.." + std::to_string(ctx.p() - 1));
    if (!detail::has_p_power_denominator(n, ctx.p()))
        throw PadicError("wavelet translation " + to_string(n) + " is not p-integral denominator");
    if (n < 0 || n >= 1)
        throw PadicError("wavelet translation " + to_string(n) + " is not a canonical element of Q_p/Z_p");
    return WaveletIndex{gamma, n, j};
}

inline CosetRepresentative translation_of(const WaveletIndex& idx) { return {idx.n, 0}; }

/// -v(n): the number of digits of n behind the point (0 for n = 0).
inline std::int64_t translation_depth(const Rational& n, std::int64_t p) {
    return n == 0 ? 0 : -detail::valuation(n, p);
}

/// Finite wavelet expansion f = sum C_idx psi_idx (an element of D_0). Zero coefficients are
/// never stored.
template <class Coeff>
class BasicTestFunction {
public:
    using Traits = CoefficientTraits<Coeff>;
    using TermMap = std::map<WaveletIndex, Coeff>;

    explicit BasicTestFunction(PrimeContext ctx) : ctx_(ctx) {}

    const PrimeContext& context() const noexcept { return ctx_; }
    std::int64_t p() const noexcept { return ctx_.p(); }
    const TermMap& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    /// Adds c * psi_idx, merging with an existing term.
    void add_term(const WaveletIndex& idx, const Coeff& c) {
        if (idx.j < 1 || idx.j >= p()) throw PadicError("wavelet index j outside 1..p-1");
        auto it = terms_.find(idx);
        if (it == terms_.end()) {
            if (!Traits::is_zero(c)) terms_.emplace(idx, c);
            return;
        }
        it->second = it->second + c;
        if (Traits::is_zero(it->second)) terms_.erase(it);
    }

    Coeff coefficient(const WaveletIndex& idx) const {
        auto it = terms_.find(idx);
        return it == terms_.end() ? Traits::zero(p()) : it->second;
    }

    std::int64_t min_scale() const { return nonempty().begin()->first.gamma; }
    std::int64_t max_scale() const { return nonempty().rbegin()->first.gamma; }

    friend bool operator==(const BasicTestFunction& f, const BasicTestFunction& g) {
        if (!(f.ctx_ == g.ctx_) || f.terms_.size() != g.terms_.size()) return false;
        auto it = g.terms_.begin();
        for (const auto& [idx, c] : f.terms_) {
            if (!(idx == it->first) || !Traits::same(c, it->second)) return false;
            ++it;
        }
        return true;
    }

private:
    const TermMap& nonempty() const {
        if (terms_.empty()) throw PadicError("empty test function has no scales");
        return terms_;
    }

    PrimeContext ctx_;
    TermMap terms_;
};

using TestFunction = BasicTestFunction<CycloNumber>;
using FloatTestFunction = BasicTestFunction<std::complex<double>>;

/// c * psi_idx.
template <class Coeff = CycloNumber>
BasicTestFunction<Coeff> single_wavelet(const PrimeContext& ctx, const WaveletIndex& idx,
                                        const Coeff& c) {
    BasicTestFunction<Coeff> f(ctx);
    f.add_term(idx, c);
    return f;
}

/// The mother wavelet psi = psi_{0,0,1} with coefficient 1.
inline TestFunction mother_wavelet(const PrimeContext& ctx) {
    return single_wavelet(ctx, WaveletIndex{0, Rational(0), 1}, CycloNumber(ctx.p(), Rational(1)));
}

inline FloatTestFunction to_float(const TestFunction& f) {
    FloatTestFunction out(f.context());
    for (const auto& [idx, c] : f.terms()) out.add_term(idx, to_complex_float(c));
    return out;
}

/// Pointwise value of psi_idx at a rational point. The indicator and the character argument are
/// exact; only the final exp and p^{-gamma/2} are floating point.
inline std::complex<double> wavelet_eval(const PrimeContext& ctx, const WaveletIndex& idx, const Rational& x) {
    const std::int64_t p = ctx.p();
    const Rational y = ctx.scale(idx.gamma) * x - idx.n;
    if (y != 0 && detail::valuation(y, p) < 0) return {0.0, 0.0};
    const Rational arg = detail::residue(Rational(idx.j) * y / Rational(p), p, 0);
    const double amplitude = std::pow(static_cast<double>(p), -0.5 * static_cast<double>(idx.gamma));
    return std::polar(amplitude, 2.0 * std::numbers::pi * to_double(arg));
}

template <class Coeff>
std::complex<double> evaluate(const BasicTestFunction<Coeff>& f, const Rational& x) {
    std::complex<double> sum{0.0, 0.0};
    for (const auto& [idx, c] : f.terms())
        sum += CoefficientTraits<Coeff>::to_complex(c) * wavelet_eval(f.context(), idx, x);
    return sum;
}

/// A function sampled on the coset lattice {N / p^L : 0 <= N < p^{K+L}}, i.e. one representative
/// of each coset of p^K Z_p inside the ball |x|_p <= p^L.
class SampledFunction {
public:
    SampledFunction(PrimeContext ctx, std::int64_t resolution, std::int64_t support)
        : ctx_(ctx), resolution_(resolution), support_(support) {
        if (resolution + support < 0) throw PadicError("empty sampling lattice");
        values_.assign(static_cast<std::size_t>(ipow64(ctx.p(), resolution + support)), {0.0, 0.0});
    }

    const PrimeContext& context() const noexcept { return ctx_; }
    std::int64_t resolution() const noexcept { return resolution_; }
    std::int64_t support() const noexcept { return support_; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Lattice point number i.
    Rational point(std::size_t i) const { return Rational(Integer(i), ipow(ctx_.p(), support_)); }

    const std::complex<double>& operator[](std::size_t i) const { return values_[i]; }
    std::complex<double>& operator[](std::size_t i) { return values_[i]; }

    /// Value on the coset of x (x any rational in the ball; 0 outside it).
    std::complex<double> at(const Rational& x) const {
        const std::int64_t p = ctx_.p();
        if (x != 0 && detail::valuation(x, p) < -support_) return {0.0, 0.0};
        const Rational r = detail::residue(x, p, resolution_) * ctx_.scale(support_);
        return values_[static_cast<std::size_t>(to_int64(numerator_of(r)))];
    }

    const std::vector<std::complex<double>>& values() const noexcept { return values_; }

private:
    PrimeContext ctx_;
    std::int64_t resolution_;
    std::int64_t support_;
    std::vector<std::complex<double>> values_;
};

/// Smallest K for which every term of f is constant on cosets of p^K Z_p.
template <class Coeff>
std::int64_t required_resolution(const BasicTestFunction<Coeff>& f) {
    std::int64_t k = std::numeric_limits<std::int64_t>::min();
    for (const auto& [idx, c] : f.terms()) k = std::max(k, 1 - idx.gamma);
    return f.empty() ? 0 : k;
}

/// Smallest L for which the ball |x|_p <= p^L contains the support of every term of f.
template <class Coeff>
std::int64_t required_support(const BasicTestFunction<Coeff>& f) {
    std::int64_t l = std::numeric_limits<std::int64_t>::min();
    for (const auto& [idx, c] : f.terms()) l = std::max(l, idx.gamma + translation_depth(idx.n, f.p()));
    return f.empty() ? 0 : l;
}

/// Default oracle lattice: one level finer than required, support from the terms.
template <class Coeff>
std::pair<std::int64_t, std::int64_t> default_lattice(const BasicTestFunction<Coeff>& f) {
    return {required_resolution(f) + 1, required_support(f)};
}

template <class Coeff>
SampledFunction sample(const BasicTestFunction<Coeff>& f, std::int64_t resolution, std::int64_t support) {
    if (!f.empty()) {
        const std::int64_t need_k = required_resolution(f);
        const std::int64_t need_l = required_support(f);
        if (resolution < need_k)
            throw PadicError("sampling resolution K = " + std::to_string(resolution) + " is below the required " +
                             std::to_string(need_k));
        if (support < need_l)
            throw PadicError("sampling support L = " + std::to_string(support) + " is below the required " +
                             std::to_string(need_l));
    }
    SampledFunction out(f.context(), resolution, support);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = evaluate(f, out.point(i));
    return out;
}

/// <f, g> = sum over shared indices of C_f * conj(C_g): linear in f, conjugate-linear in g.
template <class Coeff>
Coeff inner_product_symbolic(const BasicTestFunction<Coeff>& f, const BasicTestFunction<Coeff>& g) {
    using Traits = CoefficientTraits<Coeff>;
    if (!(f.context() == g.context())) throw PadicError("mismatched primes");
    Coeff sum = Traits::zero(f.p());
    auto it = f.terms().begin();
    auto jt = g.terms().begin();
    while (it != f.terms().end() && jt != g.terms().end()) {
        if (it->first < jt->first) {
            ++it;
        } else if (jt->first < it->first) {
            ++jt;
        } else {
            sum = sum + it->second * Traits::conj(jt->second);
            ++it;
            ++jt;
        }
    }
    return sum;
}

/// Haar-measure sum: each coset of p^K Z_p has volume p^{-K}.
inline std::complex<double> inner_product_oracle(const SampledFunction& f, const SampledFunction& g) {
    if (!(f.context() == g.context()) || f.resolution() != g.resolution() || f.support() != g.support())
        throw PadicError("sampling lattices differ");
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * std::conj(g[i]);
    return sum * std::pow(static_cast<double>(f.context().p()), -static_cast<double>(f.resolution()));
}

/// ||f||^2 = sum |C|^2.
template <class Coeff>
Coeff norm_sq(const BasicTestFunction<Coeff>& f) {
    using Traits = CoefficientTraits<Coeff>;
    Coeff sum = Traits::zero(f.p());
    for (const auto& [idx, c] : f.terms()) sum = sum + c * Traits::conj(c);
    return sum;
}

}  // namespace padicframe
