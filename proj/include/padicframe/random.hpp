#pragma once

#include "padicframe/affine.hpp"

#include <complex>
#include <cstdint>
#include <random>
#include <type_traits>
#include <vector>

namespace padicframe {

using Rng = std::mt19937_64;

/// Finite grid that random wavelet indices are drawn from.
struct IndexGrid {
    std::int64_t gamma_min = -2;
    std::int64_t gamma_max = 2;
    /// n has denominator dividing p^denominator_exponent.
    std::int64_t denominator_exponent = 2;
};

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline WaveletIndex random_wavelet_index(Rng& rng, const PrimeContext& ctx, const IndexGrid& grid) {
    const std::int64_t p = ctx.p();
    const std::int64_t gamma = uniform(rng, grid.gamma_min, grid.gamma_max);
    const std::int64_t den = ipow64(p, grid.denominator_exponent);
    const Rational n(Integer(uniform(rng, 0, den - 1)), Integer(den));
    const std::int64_t j = uniform(rng, 1, p - 1);
    return WaveletIndex{gamma, n, j};
}

/// Small nonzero cyclotomic integer sum_k c_k zeta^k with c_k in -2..2.
inline CycloNumber random_cyclo(Rng& rng, std::int64_t p) {
    for (;;) {
        std::vector<Rational> w(static_cast<std::size_t>(p));
        for (auto& c : w) c = uniform(rng, -2, 2);
        CycloNumber x = CycloNumber::from_redundant(p, std::move(w));
        if (!x.is_zero()) return x;
    }
}

template <class Coeff>
Coeff random_coefficient(Rng& rng, std::int64_t p) {
    if constexpr (std::is_same_v<Coeff, CycloNumber>) {
        return random_cyclo(rng, p);
    } else {
        return to_complex_float(random_cyclo(rng, p));
    }
}

/// 1..max_terms random terms (fewer if draws collide or cancel, never empty).
template <class Coeff>
BasicTestFunction<Coeff> random_test_function(Rng& rng, const PrimeContext& ctx, std::int64_t max_terms,
                                              const IndexGrid& grid) {
    for (;;) {
        BasicTestFunction<Coeff> f(ctx);
        const std::int64_t terms = uniform(rng, 1, max_terms);
        for (std::int64_t t = 0; t < terms; ++t) {
            const WaveletIndex idx = random_wavelet_index(rng, ctx, grid);
            f.add_term(idx, random_coefficient<Coeff>(rng, ctx.p()));
        }
        if (!f.empty()) return f;
    }
}

/// Random generic function, certified by genericity_check; draws that fail are skipped.
template <class Coeff>
BasicTestFunction<Coeff> random_generic_function(Rng& rng, const PrimeContext& ctx, std::int64_t max_terms,
                                                 const IndexGrid& grid) {
    for (;;) {
        auto f = random_test_function<Coeff>(rng, ctx, max_terms, grid);
        if (genericity_check(f).generic_up_to_depth) return f;
    }
}

/// a = +-p^e u / w and b = s / (p^d w') with small u, w, w' prime to p.
inline AffineElement random_affine_element(Rng& rng, const PrimeContext& ctx, std::int64_t max_exponent = 2,
                                           std::int64_t max_denominator_exponent = 2) {
    const std::int64_t p = ctx.p();
    auto unit = [&] {
        for (;;) {
            const std::int64_t u = uniform(rng, 1, 4 * p);
            if (u % p != 0) return u;
        }
    };
    // one draw per statement keeps the sequence independent of argument evaluation order
    const std::int64_t e = uniform(rng, -max_exponent, max_exponent);
    const std::int64_t sign = uniform(rng, 0, 1) == 0 ? 1 : -1;
    const std::int64_t a_num = unit();
    const std::int64_t a_den = unit();
    const std::int64_t d = uniform(rng, 0, max_denominator_exponent);
    const std::int64_t b_num = uniform(rng, -4 * p * p, 4 * p * p);
    const std::int64_t b_den = unit();
    const Rational a = Rational(sign * a_num, a_den) * rpow(p, e);
    const Rational b = Rational(b_num, b_den) * rpow(p, -d);
    return AffineElement(ctx, a, b);
}

}  // namespace padicframe
