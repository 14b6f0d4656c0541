#pragma once

#include "padicframe/wavelet.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace padicframe {

/// G(a, b) f(x) = |a|_p^{-1/2} f((x - b) / a), a != 0.
class AffineElement {
public:
    AffineElement(PrimeContext ctx, Rational a, Rational b) : ctx_(ctx), a_(std::move(a)), b_(std::move(b)) {
        if (a_ == 0) throw PadicError("affine element needs a != 0");
    }

    static AffineElement identity(PrimeContext ctx) { return AffineElement(ctx, Rational(1), Rational(0)); }

    const PrimeContext& context() const noexcept { return ctx_; }
    std::int64_t p() const noexcept { return ctx_.p(); }
    const Rational& a() const noexcept { return a_; }
    const Rational& b() const noexcept { return b_; }
    PadicScalar a_scalar() const { return PadicScalar(a_, ctx_); }
    PadicScalar b_scalar() const { return PadicScalar(b_, ctx_); }

    friend bool operator==(const AffineElement&, const AffineElement&) = default;

private:
    PrimeContext ctx_;
    Rational a_;
    Rational b_;
};

/// G(a,b) G(a',b') = G(aa', b + ab').
inline AffineElement compose(const AffineElement& g1, const AffineElement& g2) {
    if (!(g1.context() == g2.context())) throw PadicError("mismatched primes");
    return AffineElement(g1.context(), g1.a() * g2.a(), g1.b() + g1.a() * g2.b());
}

inline AffineElement inverse(const AffineElement& g) {
    const Rational inv = Rational(1) / g.a();
    return AffineElement(g.context(), inv, -g.b() * inv);
}

/// G(a,b)^k = G(a^k, b [k]_a) with [k]_a = (1 - a^k) / (1 - a), and [k]_1 = k.
inline AffineElement power(const AffineElement& g, std::int64_t k) {
    if (k < 0) return power(inverse(g), -k);
    const Rational ak = rational_pow(g.a(), k);
    const Rational bracket = g.a() == 1 ? Rational(k) : (Rational(1) - ak) / (Rational(1) - g.a());
    return AffineElement(g.context(), ak, g.b() * bracket);
}

/// zeta^phase * psi_index.
struct PhasedWavelet {
    WaveletIndex index;
    std::int64_t phase = 0;

    friend bool operator==(const PhasedWavelet&, const PhasedWavelet&) = default;
};

namespace detail {

/// |x|_p <= p^k.
inline bool norm_at_most(const Rational& x, std::int64_t p, std::int64_t k) {
    return x == 0 || valuation(x, p) >= -k;
}

/// G(a, b) psi for the mother wavelet psi = psi_{0,0,1}.
inline PhasedWavelet act_on_mother(const Rational& a, const Rational& b, std::int64_t p) {
    const std::int64_t v = valuation(a, p);
    const Rational unit = a * rpow(p, -v);
    const std::int64_t j = to_int64(integer_residue(Rational(1) / unit, p, 1));
    const Rational c = rpow(p, -v) * b;
    const Rational n = residue(c, p, 0);
    const std::int64_t m = to_int64(integer_residue(Rational(j) * (n - c), p, 1));
    return {WaveletIndex{-v, n, j}, m};
}

}  // namespace detail

/// The element (p^{-gamma} / j, p^{-gamma} n) that carries psi to psi_{gamma n j} with no phase.
inline AffineElement wavelet_representative(const PrimeContext& ctx, const WaveletIndex& idx) {
    const Rational s = ctx.scale(-idx.gamma);
    return AffineElement(ctx, s / Rational(idx.j), s * idx.n);
}

/// G(g) psi_idx = zeta^m psi_{idx'}, found by composing g with the representative of idx and
/// classifying the composite's action on psi.
inline PhasedWavelet act_on_wavelet(const AffineElement& g, const WaveletIndex& idx) {
    const AffineElement h = compose(g, wavelet_representative(g.context(), idx));
    return detail::act_on_mother(h.a(), h.b(), g.p());
}

template <class Coeff>
BasicTestFunction<Coeff> act_on_function(const AffineElement& g, const BasicTestFunction<Coeff>& f) {
    using Traits = CoefficientTraits<Coeff>;
    if (!(g.context() == f.context())) throw PadicError("mismatched primes");
    BasicTestFunction<Coeff> out(f.context());
    for (const auto& [idx, c] : f.terms()) {
        const PhasedWavelet w = act_on_wavelet(g, idx);
        out.add_term(w.index, Traits::times_zeta(c, w.phase, f.p()));
    }
    return out;
}

/// Stabilizer of the ball {x : |p^gamma x - n|_p <= 1}.
inline bool ball_stabilizer_membership(const AffineElement& g, std::int64_t gamma, const Rational& n) {
    const std::int64_t p = g.p();
    if (detail::valuation(g.a(), p) != 0) return false;
    return detail::norm_at_most(g.b() - rpow(p, -gamma) * n * (Rational(1) - g.a()), p, gamma);
}

inline bool wavelet_stabilizer_membership(const AffineElement& g, const WaveletIndex& idx) {
    const std::int64_t p = g.p();
    const Rational one_minus_a = Rational(1) - g.a();
    return detail::norm_at_most(one_minus_a, p, -1) &&
           detail::norm_at_most(rpow(p, idx.gamma) * g.b() - idx.n * one_minus_a, p, -1);
}

/// G_f = {(a, b) : |1 - a|_p <= p^{-gamma_A}, |b - p^{-gamma_0} n_0 (1 - a)|_p <= p^{gamma_0 - 1}}.
struct StabilizerSpec {
    PrimeContext ctx{2};
    std::int64_t gamma_A = 1;
    std::int64_t gamma_0 = 0;
    Rational n_0;

    /// p^{-gamma_0} n_0, the centre of the b-ball per unit of (1 - a).
    Rational anchor() const { return ctx.scale(-gamma_0) * n_0; }

    friend bool operator==(const StabilizerSpec&, const StabilizerSpec&) = default;
};

template <class Coeff>
StabilizerSpec stabilizer_spec(const BasicTestFunction<Coeff>& f) {
    if (f.empty()) throw PadicError("stabilizer of the empty function is the whole group");
    const std::int64_t p = f.p();
    std::vector<std::pair<std::int64_t, Rational>> centres;
    for (const auto& [idx, c] : f.terms())
        if (centres.empty() || centres.back().first != idx.gamma || centres.back().second != idx.n)
            centres.emplace_back(idx.gamma, idx.n);

    std::int64_t gamma_A = 1;
    for (std::size_t i = 0; i < centres.size(); ++i) {
        for (std::size_t k = i + 1; k < centres.size(); ++k) {
            const Rational delta = rpow(p, -centres[i].first) * centres[i].second -
                                   rpow(p, -centres[k].first) * centres[k].second;
            if (delta == 0) continue;
            const std::int64_t top = std::max(centres[i].first, centres[k].first);
            gamma_A = std::max(gamma_A, 1 - top - detail::valuation(delta, p));
        }
    }

    const std::int64_t gamma_0 = f.min_scale();
    std::optional<Rational> n_0;
    for (const auto& [g, n] : centres) {
        if (g != gamma_0) break;
        if (!n_0 || translation_depth(n, p) < translation_depth(*n_0, p) ||
            (translation_depth(n, p) == translation_depth(*n_0, p) && n < *n_0))
            n_0 = n;
    }
    return StabilizerSpec{f.context(), gamma_A, gamma_0, *n_0};
}

inline bool in_stabilizer(const AffineElement& g, const StabilizerSpec& spec) {
    const std::int64_t p = g.p();
    if (!(g.context() == spec.ctx)) throw PadicError("mismatched primes");
    const Rational one_minus_a = Rational(1) - g.a();
    return detail::norm_at_most(one_minus_a, p, -spec.gamma_A) &&
           detail::norm_at_most(g.b() - spec.anchor() * one_minus_a, p, spec.gamma_0 - 1);
}

struct GenericityVerdict {
    bool generic_up_to_depth = false;
    std::int64_t depth = 0;
    /// Elements fixing f that the closed-form stabilizer does not predict.
    std::vector<AffineElement> witnesses;
    /// Predicted elements that fail to fix f; any entry means the closed form is wrong for f.
    std::vector<AffineElement> contradictions;
    std::int64_t invariant_classes = 0;
    std::int64_t predicted_classes = 0;
};

/// Smallest depth for which invariance and the predicted set are functions of a mod p^depth.
template <class Coeff>
std::int64_t minimal_genericity_depth(const BasicTestFunction<Coeff>& f, const StabilizerSpec& spec) {
    std::int64_t depth = spec.gamma_A + 1;
    for (const auto& [idx, c] : f.terms()) depth = std::max(depth, translation_depth(idx.n, f.p()) + 1);
    return depth;
}

/// Units mod p^depth as symmetric representatives in (-p^depth / 2, p^depth / 2].
inline std::vector<Integer> symmetric_units(std::int64_t p, std::int64_t depth) {
    const Integer mod = ipow(p, depth);
    std::vector<Integer> out;
    for (Integer r = 1; r < mod; ++r) {
        if (r % p == 0) continue;
        out.push_back(2 * r > mod ? r - mod : r);
    }
    std::sort(out.begin(), out.end(), [](const Integer& x, const Integer& y) {
        const Integer ax = abs(x), ay = abs(y);
        return ax != ay ? ax < ay : x < y;
    });
    return out;
}

/// Compares the invariance set of f with the closed-form stabilizer on the quotient
/// a in (Z/p^depth)^x, b in Q_p / p^{1 - gamma_0} Z_p. Non-unit a shifts every scale and never
/// fixes f. For each a the candidate b classes are solved from where the minimal-scale term must
/// land, then confirmed by exact action.
template <class Coeff>
GenericityVerdict genericity_check(const BasicTestFunction<Coeff>& f, std::optional<std::int64_t> depth = {}) {
    using Traits = CoefficientTraits<Coeff>;
    const StabilizerSpec spec = stabilizer_spec(f);
    const std::int64_t p = f.p();
    const std::int64_t need = minimal_genericity_depth(f, spec);
    const std::int64_t d = depth.value_or(need);
    if (d < need)
        throw PadicError("genericity depth " + std::to_string(d) + " is below the required " + std::to_string(need));

    GenericityVerdict verdict;
    verdict.depth = d;
    const std::int64_t g0 = spec.gamma_0;
    const std::int64_t width = 1 - g0;
    const auto& [first_idx, first_c] = *f.terms().begin();

    for (const Integer& ai : symmetric_units(p, d)) {
        const Rational a(ai);
        std::set<Rational> candidates;
        for (const auto& [idx, c] : f.terms()) {
            if (idx.gamma != g0) break;
            const std::int64_t jinv = to_int64(inverse_mod(Integer(idx.j), Integer(p)));
            for (std::int64_t m = 0; m < p; ++m) {
                if (!Traits::same(Traits::times_zeta(first_c, m, p), c)) continue;
                const Rational target = idx.n - Rational(m * jinv) - a * first_idx.n;
                candidates.insert(detail::residue(rpow(p, -g0) * target, p, width));
            }
        }
        std::set<Rational> invariant;
        for (const Rational& b : candidates) {
            const AffineElement g(f.context(), a, b);
            if (act_on_function(g, f) == f) invariant.insert(b);
        }
        std::optional<Rational> predicted;
        if (detail::norm_at_most(Rational(1) - a, p, -spec.gamma_A))
            predicted = detail::residue(spec.anchor() * (Rational(1) - a), p, width);

        verdict.invariant_classes += static_cast<std::int64_t>(invariant.size());
        if (predicted) {
            ++verdict.predicted_classes;
            const AffineElement g(f.context(), a, *predicted);
            if (!invariant.contains(*predicted) && !(act_on_function(g, f) == f))
                verdict.contradictions.push_back(g);
        }
        for (const Rational& b : invariant)
            if (!predicted || b != *predicted) verdict.witnesses.emplace_back(f.context(), a, b);
    }
    verdict.generic_up_to_depth = verdict.witnesses.empty() && verdict.contradictions.empty();
    return verdict;
}

/// sum_i coeffs[i] G(a, 0)^i psi_{-1, 1/p, j}. With a^{p-1} = 1 mod p^2 and a != 1 mod p, each
/// G(a, 0)^i maps the base wavelet to a distinct wavelet of the same ball, and equal coefficients
/// over a full cycle give a function fixed by G(a, 0) although no summand is.
template <class Coeff>
BasicTestFunction<Coeff> make_exotic_function(const PrimeContext& ctx, std::int64_t a, std::int64_t j,
                                              const std::vector<Coeff>& coeffs) {
    using Traits = CoefficientTraits<Coeff>;
    const std::int64_t p = ctx.p();
    const Integer p2 = ipow(p, 2);
    if (mod_floor(Integer(a) - 1, Integer(p)) == 0) throw PadicError("exotic construction needs a != 1 mod p");
    if (mod_floor(boost::multiprecision::pow(Integer(a), static_cast<unsigned>(p - 1)) - 1, p2) != 0)
        throw PadicError("exotic construction needs a^{p-1} = 1 mod p^2");
    const AffineElement step(ctx, Rational(a), Rational(0));
    PhasedWavelet w{make_wavelet_index(ctx, -1, Rational(1, p), j), 0};
    BasicTestFunction<Coeff> f(ctx);
    for (const Coeff& c : coeffs) {
        f.add_term(w.index, Traits::times_zeta(c, w.phase, p));
        const PhasedWavelet next = act_on_wavelet(step, w.index);
        w = {next.index, w.phase + next.phase};
    }
    return f;
}

}  // namespace padicframe
