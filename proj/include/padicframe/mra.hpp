#pragma once

#include "padicframe/frame.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace padicframe {

/// Exact Gram matrix of the shifted scaling functions Omega(|x - n|_p). Two unit balls either
/// coincide (|n - m|_p <= 1) or are disjoint, and Z_p has measure 1.
inline std::vector<std::vector<Rational>> scaling_shift_gram(const PrimeContext& ctx,
                                                             const std::vector<Rational>& shifts) {
    const std::int64_t p = ctx.p();
    std::vector<std::vector<Rational>> gram(shifts.size(), std::vector<Rational>(shifts.size()));
    for (std::size_t i = 0; i < shifts.size(); ++i) {
        if (!detail::has_p_power_denominator(shifts[i], p))
            throw PadicError("shift " + to_string(shifts[i]) + " is not p-integral denominator");
        for (std::size_t k = 0; k < shifts.size(); ++k)
            gram[i][k] = detail::norm_at_most(shifts[i] - shifts[k], p, 0) ? 1 : 0;
    }
    return gram;
}

inline bool is_identity(const std::vector<std::vector<Rational>>& m) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t k = 0; k < m[i].size(); ++k)
            if (m[i][k] != (i == k ? 1 : 0)) return false;
    return true;
}

/// The canonical shifts N / p^depth, 0 <= N < p^depth: every class of p^{-depth} Z_p / Z_p.
inline std::vector<Rational> canonical_shift_grid(std::int64_t p, std::int64_t depth) {
    std::vector<Rational> out;
    const std::int64_t count = ipow64(p, depth);
    for (std::int64_t N = 0; N < count; ++N) out.emplace_back(Integer(N), ipow(p, depth));
    return out;
}

/// Generators of the wavelet space at orbit scale gamma, on a truncated translation grid.
template <class Coeff>
struct SpanProbe {
    std::int64_t gamma = 0;
    std::vector<OrbitIndex> labels;
    std::vector<BasicTestFunction<Coeff>> generators;
};

/// f^{(gamma n J)} for every J and every n in p^{-truncation} Z_p / p^{1 - gamma_0} Z_p.
template <class Coeff>
SpanProbe<Coeff> wavelet_space_generators(const BasicTestFunction<Coeff>& f, const StabilizerSpec& spec,
                                          std::int64_t gamma, std::int64_t truncation) {
    const std::int64_t p = f.p();
    if (truncation + 1 - spec.gamma_0 < 0) throw PadicError("truncation below the translation modulus");
    SpanProbe<Coeff> probe;
    probe.gamma = gamma;
    const std::int64_t units = ipow64(p, spec.gamma_A);
    const std::int64_t count = ipow64(p, truncation + 1 - spec.gamma_0);
    for (std::int64_t J = 1; J < units; ++J) {
        if (J % p == 0) continue;
        for (std::int64_t N = 0; N < count; ++N) {
            const OrbitIndex idx{gamma, Rational(Integer(N), ipow(p, truncation)), J};
            probe.labels.push_back(idx);
            probe.generators.push_back(orbit_element(f, spec, idx));
        }
    }
    return probe;
}

struct CrossGramSummary {
    bool orthogonal = true;
    double max_abs_entry = 0.0;
    std::int64_t entries = 0;
};

/// All inner products between the generators of two wavelet spaces.
template <class Coeff>
CrossGramSummary wavelet_space_gram(const BasicTestFunction<Coeff>& f, const StabilizerSpec& spec,
                                    std::int64_t gamma1, std::int64_t gamma2, std::int64_t truncation) {
    using Traits = CoefficientTraits<Coeff>;
    const auto w1 = wavelet_space_generators(f, spec, gamma1, truncation);
    const auto w2 = wavelet_space_generators(f, spec, gamma2, truncation);
    CrossGramSummary out;
    for (const auto& u : w1.generators) {
        for (const auto& v : w2.generators) {
            const Coeff ip = inner_product_symbolic(u, v);
            ++out.entries;
            if (Traits::is_zero(ip)) continue;
            out.orthogonal = false;
            out.max_abs_entry = std::max(out.max_abs_entry, std::abs(Traits::to_complex(ip)));
        }
    }
    return out;
}

/// Smallest k >= 1 such that wavelet_space_gram reports orthogonality for every scale gap
/// k..max_gap, checked from gamma1 = 0.
template <class Coeff>
std::int64_t observed_orthogonality_threshold(const BasicTestFunction<Coeff>& f, const StabilizerSpec& spec,
                                              std::int64_t max_gap, std::int64_t truncation) {
    std::int64_t threshold = max_gap + 1;
    for (std::int64_t gap = max_gap; gap >= 1; --gap) {
        if (!wavelet_space_gram(f, spec, 0, gap, truncation).orthogonal) break;
        threshold = gap;
    }
    return threshold;
}

namespace detail {

/// Row reduction over Q(zeta_p): is target in the span of vectors?
inline bool in_span(const std::vector<TestFunction>& vectors, const TestFunction& target) {
    std::map<WaveletIndex, std::size_t> coord;
    auto index_of = [&](const WaveletIndex& w) { return coord.emplace(w, coord.size()).first->second; };
    for (const auto& v : vectors)
        for (const auto& [w, c] : v.terms()) index_of(w);
    for (const auto& [w, c] : target.terms()) index_of(w);
    const std::int64_t p = target.p();
    const std::size_t dim = coord.size();
    auto dense = [&](const TestFunction& v) {
        std::vector<CycloNumber> row(dim, CycloNumber(p));
        for (const auto& [w, c] : v.terms()) row[coord.at(w)] = c;
        return row;
    };

    // echelon basis: pivot column -> normalized row
    std::map<std::size_t, std::vector<CycloNumber>> basis;
    auto reduce = [&](std::vector<CycloNumber> row) {
        for (const auto& [col, b] : basis) {
            if (row[col].is_zero()) continue;
            const CycloNumber factor = row[col];
            for (std::size_t k = 0; k < dim; ++k)
                if (!b[k].is_zero()) row[k] -= factor * b[k];
        }
        return row;
    };
    for (const auto& v : vectors) {
        auto row = reduce(dense(v));
        std::optional<std::size_t> pivot;
        for (std::size_t k = 0; k < dim && !pivot; ++k)
            if (!row[k].is_zero()) pivot = k;
        if (!pivot) continue;
        const CycloNumber inv = inverse(row[*pivot]);
        for (auto& x : row) x = x * inv;
        for (auto& [col, b] : basis) {
            if (b[*pivot].is_zero()) continue;
            const CycloNumber factor = b[*pivot];
            for (std::size_t k = 0; k < dim; ++k)
                if (!row[k].is_zero()) b[k] -= factor * row[k];
        }
        basis.emplace(*pivot, std::move(row));
    }
    const auto rest = reduce(dense(target));
    for (const auto& x : rest)
        if (!x.is_zero()) return false;
    return true;
}

}  // namespace detail

struct ScalingRelationResult {
    /// The input lies in the span of the W_gamma generators.
    bool precondition_ok = false;
    /// Its dilation G(p, 0) F(x) = p^{-1/2} F(x / p) lies in the span of the W_{gamma+1} generators.
    bool holds = false;
};

/// Orbit-scale labels: G(p, 0) f^{(gamma n J)} = f^{(gamma+1, n, J)}, so dilation by p^{-1} in the
/// argument raises the orbit scale by one.
inline ScalingRelationResult scaling_relation_check(const TestFunction& source, const StabilizerSpec& spec,
                                                    const TestFunction& F, std::int64_t gamma,
                                                    std::int64_t truncation) {
    ScalingRelationResult out;
    const auto here = wavelet_space_generators(source, spec, gamma, truncation);
    out.precondition_ok = detail::in_span(here.generators, F);
    if (!out.precondition_ok) return out;
    const auto next = wavelet_space_generators(source, spec, gamma + 1, truncation);
    const AffineElement dilation(source.context(), Rational(source.p()), Rational(0));
    out.holds = detail::in_span(next.generators, act_on_function(dilation, F));
    return out;
}

}  // namespace padicframe
