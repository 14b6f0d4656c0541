#pragma once

#include "padicframe/affine.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace padicframe {

/// Orbit label: f^{(gamma n J)} = G(p^gamma J, p^gamma J n) f with J a unit in [1, p^{gamma_A})
/// and n canonical in Q_p / p^{1 - gamma_0} Z_p.
struct OrbitIndex {
    std::int64_t gamma = 0;
    Rational n;
    std::int64_t J = 1;

    friend bool operator==(const OrbitIndex&, const OrbitIndex&) = default;
    friend bool operator<(const OrbitIndex& x, const OrbitIndex& y) {
        if (x.gamma != y.gamma) return x.gamma < y.gamma;
        if (x.J != y.J) return x.J < y.J;
        return x.n < y.n;
    }
};

/// scaled: G(p^gamma J, p^gamma J n), the canonical form.
/// plain:  G(p^gamma J, p^gamma n), the alternative used by the wavelet-frame reparametrization.
enum class OrbitConvention { scaled, plain };

inline void validate_orbit_index(const StabilizerSpec& spec, const OrbitIndex& idx) {
    const std::int64_t p = spec.ctx.p();
    const std::int64_t top = ipow64(p, spec.gamma_A);
    if (idx.J < 1 || idx.J >= top || idx.J % p == 0)
        throw PadicError("orbit index J = " + std::to_string(idx.J) + " is not a unit below p^gamma_A");
    if (!detail::has_p_power_denominator(idx.n, p) || detail::residue(idx.n, p, 1 - spec.gamma_0) != idx.n)
        throw PadicError("orbit index n = " + to_string(idx.n) + " is not canonical mod p^{1 - gamma_0}");
}

inline AffineElement group_element(const StabilizerSpec& spec, const OrbitIndex& idx,
                                   OrbitConvention convention = OrbitConvention::scaled) {
    validate_orbit_index(spec, idx);
    const Rational a = spec.ctx.scale(idx.gamma) * Rational(idx.J);
    const Rational b = convention == OrbitConvention::scaled ? a * idx.n : spec.ctx.scale(idx.gamma) * idx.n;
    return AffineElement(spec.ctx, a, b);
}

template <class Coeff>
BasicTestFunction<Coeff> orbit_element(const BasicTestFunction<Coeff>& f, const StabilizerSpec& spec,
                                       const OrbitIndex& idx,
                                       OrbitConvention convention = OrbitConvention::scaled) {
    return act_on_function(group_element(spec, idx, convention), f);
}

/// The label of the coset g G_f. Writing a = p^gamma J a_0 with J the unit part of a reduced
/// mod p^{gamma_A}, the b-coordinate is b / (p^gamma J) - p^{-gamma_0} n_0 (1 - a_0) modulo
/// p^{1 - gamma_0}, times J in the plain convention.
inline OrbitIndex orbit_index_of(const AffineElement& g, const StabilizerSpec& spec,
                                 OrbitConvention convention = OrbitConvention::scaled) {
    if (!(g.context() == spec.ctx)) throw PadicError("mismatched primes");
    const std::int64_t p = g.p();
    const std::int64_t gamma = detail::valuation(g.a(), p);
    const Rational unit = g.a() * rpow(p, -gamma);
    const std::int64_t J = to_int64(detail::integer_residue(unit, p, spec.gamma_A));
    const Rational a1 = rpow(p, gamma) * Rational(J);
    const Rational a0 = g.a() / a1;
    Rational shift = g.b() / a1 - spec.anchor() * (Rational(1) - a0);
    if (convention == OrbitConvention::plain) shift *= J;
    return OrbitIndex{gamma, detail::residue(shift, p, 1 - spec.gamma_0), J};
}

/// G(p^gamma J, p^gamma J n) psi_idx in closed form.
inline PhasedWavelet orbit_image(std::int64_t p, std::int64_t gamma, std::int64_t J, const Rational& n,
                                 const WaveletIndex& idx) {
    const std::int64_t j = to_int64(mod_floor(Integer(idx.j) * inverse_mod(Integer(J), Integer(p)), Integer(p)));
    const Rational c = Rational(J) * (rpow(p, idx.gamma) * n + idx.n);
    const Rational shifted = detail::residue(c, p, 0);
    const std::int64_t m = to_int64(detail::integer_residue(Rational(j) * (shifted - c), p, 1));
    return {WaveletIndex{idx.gamma - gamma, shifted, j}, m};
}

namespace detail {

/// One way an orbit element can carry term i of f onto term beta of g.
template <class Coeff>
struct Match {
    const WaveletIndex* f_idx;
    const WaveletIndex* g_idx;
    std::size_t f_pos;
    std::size_t g_pos;
    std::int64_t gamma;
    std::int64_t J_mod_p;
    Coeff weight;
};

template <class Coeff>
std::vector<Match<Coeff>> matches(const BasicTestFunction<Coeff>& f, const BasicTestFunction<Coeff>& g) {
    using Traits = CoefficientTraits<Coeff>;
    const std::int64_t p = f.p();
    std::vector<Match<Coeff>> out;
    std::size_t i = 0;
    for (const auto& [fi, cf] : f.terms()) {
        std::size_t k = 0;
        for (const auto& [gk, cg] : g.terms()) {
            const Integer J = mod_floor(Integer(fi.j) * inverse_mod(Integer(gk.j), Integer(p)), Integer(p));
            out.push_back({&fi, &gk, i, k, fi.gamma - gk.gamma, to_int64(J), cg * Traits::conj(cf)});
            ++k;
        }
        ++i;
    }
    return out;
}

/// Lifts of r mod p to units in [1, p^k).
inline std::vector<std::int64_t> unit_lifts(std::int64_t r, std::int64_t p, std::int64_t k) {
    std::vector<std::int64_t> out;
    const std::int64_t top = ipow64(p, k);
    for (std::int64_t J = r; J < top; J += p) out.push_back(J);
    return out;
}

/// The class mod p^{-gamma_i} of translations n for which G(p^gamma J, p^gamma J n) psi_{f_idx}
/// is a multiple of psi_{g_idx} (gamma and J already consistent).
inline Rational matching_translation(std::int64_t p, std::int64_t J, const WaveletIndex& f_idx,
                                     const WaveletIndex& g_idx) {
    return residue(rpow(p, -f_idx.gamma) * (g_idx.n / Rational(J) - f_idx.n), p, -f_idx.gamma);
}

}  // namespace detail

/// Every orbit label whose element can have a nonzero inner product with g: for each pair of
/// terms, the labels that map the f-term onto the g-term.
template <class Coeff>
std::set<OrbitIndex> relevant_orbit_indices(const BasicTestFunction<Coeff>& f, const StabilizerSpec& spec,
                                            const BasicTestFunction<Coeff>& g) {
    const std::int64_t p = f.p();
    std::set<OrbitIndex> out;
    for (const auto& mt : detail::matches(f, g)) {
        const std::int64_t gi = mt.f_idx->gamma;
        const std::int64_t width = 1 - spec.gamma_0;
        const std::int64_t count = ipow64(p, width + gi);
        for (std::int64_t J : detail::unit_lifts(mt.J_mod_p, p, spec.gamma_A)) {
            const Rational base = detail::matching_translation(p, J, *mt.f_idx, *mt.g_idx);
            for (std::int64_t t = 0; t < count; ++t)
                out.insert(OrbitIndex{mt.gamma, detail::residue(base + rpow(p, -gi) * Rational(t), p, width), J});
        }
    }
    return out;
}

/// A = sum_i |C_i|^2 p^{gamma_A - gamma_0 + gamma_i}.
template <class Coeff>
Coeff frame_bound(const BasicTestFunction<Coeff>& f, const StabilizerSpec& spec) {
    using Traits = CoefficientTraits<Coeff>;
    if (f.empty()) throw PadicError("frame bound of the empty function");
    Coeff sum = Traits::zero(f.p());
    for (const auto& [idx, c] : f.terms()) {
        const Integer w = ipow(f.p(), spec.gamma_A - spec.gamma_0 + idx.gamma);
        sum = sum + c * Traits::conj(c) * Traits::from_integer(to_int64(w), f.p());
    }
    return sum;
}

template <class Coeff>
struct FrameResidual {
    Coeff lhs;
    Coeff expected;
    Coeff residual;
    bool zero = false;
};

template <class Coeff>
bool residual_is_zero(const Coeff& residual, const Coeff& scale) {
    using Traits = CoefficientTraits<Coeff>;
    if constexpr (Traits::exact) {
        (void)scale;
        return Traits::is_zero(residual);
    } else {
        return std::abs(residual) <= Traits::tolerance * std::max(1.0, std::abs(scale));
    }
}

/// sum over the orbit of |<g, f^{(gamma n J)}>|^2, minus A ||g||^2.
///
/// Expanding |sum_a w_a zeta^{-m_a}|^2 turns the orbit sum into a sum over pairs of matches
/// (f-term onto g-term). For a pair, the orbit labels carrying both are enumerated at the finer
/// of the two scales: n mod p^{1 - gamma_fine}, each class standing for p^{gamma_fine - gamma_0}
/// labels mod p^{1 - gamma_0}.
template <class Coeff>
FrameResidual<Coeff> verify_tight_frame(const BasicTestFunction<Coeff>& f, const StabilizerSpec& spec,
                                        const BasicTestFunction<Coeff>& g) {
    using Traits = CoefficientTraits<Coeff>;
    if (!(f.context() == g.context())) throw PadicError("mismatched primes");
    const std::int64_t p = f.p();
    const auto ms = detail::matches(f, g);

    // For each match and J lift: phase of the image per class of n mod p^{1 - gamma_i}.
    struct Image {
        std::map<Rational, std::int64_t> phase_by_class;
        std::vector<std::pair<Rational, std::int64_t>> classes;
    };
    auto images_for = [&](const detail::Match<Coeff>& mt, std::int64_t J) {
        Image img;
        const std::int64_t gi = mt.f_idx->gamma;
        const Rational base = detail::matching_translation(p, J, *mt.f_idx, *mt.g_idx);
        for (std::int64_t t = 0; t < p; ++t) {
            const Rational n = detail::residue(base + rpow(p, -gi) * Rational(t), p, 1 - gi);
            const PhasedWavelet w = orbit_image(p, mt.gamma, J, n, *mt.f_idx);
            if (!(w.index == *mt.g_idx)) throw std::logic_error("matching translation does not match");
            img.phase_by_class.emplace(n, w.phase);
            img.classes.emplace_back(n, w.phase);
        }
        return img;
    };

    Coeff lhs = Traits::zero(p);
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::size_t>> groups;
    for (std::size_t a = 0; a < ms.size(); ++a) groups[{ms[a].gamma, ms[a].J_mod_p}].push_back(a);

    for (const auto& [key, members] : groups) {
        for (std::int64_t J : detail::unit_lifts(key.second, p, spec.gamma_A)) {
            std::vector<Image> imgs;
            imgs.reserve(members.size());
            for (std::size_t a : members) imgs.push_back(images_for(ms[a], J));
            for (std::size_t x = 0; x < members.size(); ++x) {
                for (std::size_t y = 0; y < members.size(); ++y) {
                    const auto& ma = ms[members[x]];
                    const auto& mb = ms[members[y]];
                    if (x != y && (ma.f_pos == mb.f_pos || ma.g_pos == mb.g_pos)) continue;
                    // enumerate at the finer scale, look the coarser one up
                    const bool a_fine = ma.f_idx->gamma <= mb.f_idx->gamma;
                    const Image& fine = a_fine ? imgs[x] : imgs[y];
                    const Image& coarse = a_fine ? imgs[y] : imgs[x];
                    const std::int64_t g_fine = std::min(ma.f_idx->gamma, mb.f_idx->gamma);
                    const std::int64_t g_coarse = std::max(ma.f_idx->gamma, mb.f_idx->gamma);
                    std::vector<Integer> counts(static_cast<std::size_t>(p));
                    const Integer mult = ipow(p, g_fine - spec.gamma_0);
                    bool any = false;
                    for (const auto& [n, phase_fine] : fine.classes) {
                        auto it = coarse.phase_by_class.find(detail::residue(n, p, 1 - g_coarse));
                        if (it == coarse.phase_by_class.end()) continue;
                        const std::int64_t m_a = a_fine ? phase_fine : it->second;
                        const std::int64_t m_b = a_fine ? it->second : phase_fine;
                        counts[static_cast<std::size_t>(mod_floor(Integer(m_b - m_a), Integer(p)))] += mult;
                        any = true;
                    }
                    if (!any) continue;
                    lhs = lhs + ma.weight * Traits::conj(mb.weight) * Traits::zeta_sum(counts, p);
                }
            }
        }
    }

    const Coeff expected = frame_bound(f, spec) * norm_sq(g);
    const Coeff residual = lhs - expected;
    return FrameResidual<Coeff>{lhs, expected, residual, residual_is_zero(residual, expected)};
}

/// The same orbit sum, done the slow way: build every relevant orbit element and take inner
/// products term by term.
template <class Coeff>
Coeff orbit_sum_by_enumeration(const BasicTestFunction<Coeff>& f, const StabilizerSpec& spec,
                               const BasicTestFunction<Coeff>& g) {
    using Traits = CoefficientTraits<Coeff>;
    Coeff sum = Traits::zero(f.p());
    for (const OrbitIndex& idx : relevant_orbit_indices(f, spec, g)) {
        const Coeff ip = inner_product_symbolic(g, orbit_element(f, spec, idx));
        sum = sum + ip * Traits::conj(ip);
    }
    return sum;
}

/// Number of (gamma = 0, J = 1 mod p, n mod p^{1 - gamma_0}) with
/// |J p^{gamma1} n - (1 - J) n_1|_p <= 1, counted by enumerating n over p^{-R} Z_p for an R
/// large enough to hold every solution.
inline Integer phase_fix_multiplicity(std::int64_t gamma1, const Rational& n1, const StabilizerSpec& spec) {
    const std::int64_t p = spec.ctx.p();
    const std::int64_t R = std::max({gamma1, translation_depth(n1, p), spec.gamma_0 - 1, std::int64_t{0}}) + 1;
    const std::int64_t range = ipow64(p, R + 1 - spec.gamma_0);
    const Rational step = rpow(p, -R);
    const Rational scale = rpow(p, gamma1);
    Integer count = 0;
    for (std::int64_t J : detail::unit_lifts(1 % p, p, spec.gamma_A)) {
        const Rational tail = (Rational(1) - Rational(J)) * n1;
        for (std::int64_t N = 0; N < range; ++N) {
            const Rational n = step * Rational(N);
            if (detail::norm_at_most(Rational(J) * scale * n - tail, p, 0)) ++count;
        }
    }
    return count;
}

/// Closed form of phase_fix_multiplicity.
inline Integer expected_phase_fix_multiplicity(std::int64_t gamma1, const StabilizerSpec& spec) {
    return ipow(spec.ctx.p(), spec.gamma_A - spec.gamma_0 + gamma1);
}

/// One generator f^{(J, m)}(x) = f((x - m) / J) = G(J, m) f of the wavelet-frame form.
template <class Coeff>
struct FrameGenerator {
    std::int64_t J = 1;
    Rational m;
    BasicTestFunction<Coeff> function;
};

template <class Coeff>
struct WaveletFrameFamily {
    /// 1: translations mod p^{1 - gamma_0} are absorbed into the generators;
    /// 2: the orbit is a union of copies of a wavelet frame.
    int case_number = 1;
    std::vector<FrameGenerator<Coeff>> generators;
    Integer multiplicity = 1;
};

/// Rewrites the orbit as G(p^gamma, p^gamma n) f^{(J_1)}, n in Q_p / Z_p. When gamma_0 <= 1 the
/// generators are indexed by J_1 = (J, m) with m in Z_p / p^{1 - gamma_0} Z_p; otherwise they
/// are f(x / J) and each wavelet-frame element appears p^{gamma_0 - 1} times.
template <class Coeff>
WaveletFrameFamily<Coeff> reparametrize_wavelet_frame(const BasicTestFunction<Coeff>& f,
                                                      const StabilizerSpec& spec) {
    if (!genericity_check(f).generic_up_to_depth) throw PadicError("reparametrization needs a generic function");
    const std::int64_t p = f.p();
    WaveletFrameFamily<Coeff> out;
    const std::int64_t units = ipow64(p, spec.gamma_A);
    const bool first_case = spec.gamma_0 <= 1;
    out.case_number = first_case ? 1 : 2;
    const std::int64_t shifts = first_case ? ipow64(p, 1 - spec.gamma_0) : 1;
    if (!first_case) out.multiplicity = ipow(p, spec.gamma_0 - 1);
    for (std::int64_t J = 1; J < units; ++J) {
        if (J % p == 0) continue;
        for (std::int64_t m = 0; m < shifts; ++m) {
            const AffineElement g(f.context(), Rational(J), Rational(m));
            out.generators.push_back({J, Rational(m), act_on_function(g, f)});
        }
    }
    return out;
}

/// Summary of a frame verification run.
template <class Coeff>
struct FrameReport {
    Coeff frame_bound;
    bool exact = true;
    std::int64_t g_count = 0;
    bool all_zero_residuals = true;
    std::vector<Coeff> residuals;
    struct MultiplicityCheck {
        std::int64_t gamma1 = 0;
        Integer counted;
        Integer expected;
        bool ok() const { return counted == expected; }
    };
    std::vector<MultiplicityCheck> multiplicity_checks;
};

}  // namespace padicframe
