#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace padicframe;

namespace {

CycloNumber one(std::int64_t p) { return CycloNumber(p, Rational(1)); }

TestFunction two_scale(const PrimeContext& ctx) {
    TestFunction f(ctx);
    f.add_term({0, Rational(0), 1}, one(ctx.p()));
    f.add_term({1, Rational(0), 1}, CycloNumber(ctx.p(), Rational(2)));
    return f;
}

}  // namespace

TEST(ScalingShiftGram, Examples) {
    const PrimeContext c3(3);
    EXPECT_EQ(scaling_shift_gram(c3, {Rational(0)}), (std::vector<std::vector<Rational>>{{1}}));
    EXPECT_TRUE(is_identity(scaling_shift_gram(c3, {Rational(0), Rational(1, 3)})));
    EXPECT_EQ(scaling_shift_gram(c3, {Rational(0), Rational(1)}),
              (std::vector<std::vector<Rational>>{{1, 1}, {1, 1}}));
    EXPECT_THROW(scaling_shift_gram(c3, {Rational(1, 2)}), PadicError);
}

TEST(ScalingShiftGram, CanonicalGridsAreOrthonormal) {
    for (std::int64_t p : {2, 3, 5})
        for (std::int64_t depth = 0; depth <= 3; ++depth)
            EXPECT_TRUE(is_identity(scaling_shift_gram(PrimeContext(p), canonical_shift_grid(p, depth))));
    EXPECT_EQ(canonical_shift_grid(3, 3).size(), 27u);
}

TEST(ScalingShiftGram, AgreesWithSampledOracle) {
    const PrimeContext c3(3);
    const auto shifts = canonical_shift_grid(3, 2);
    const auto gram = scaling_shift_gram(c3, shifts);
    // Omega(|x - n|) sampled on a lattice constant on Z_p cosets inside |x| <= p^2
    const std::int64_t K = 0, L = 2;
    std::vector<SampledFunction> s;
    for (const auto& n : shifts) {
        SampledFunction v(c3, K, L);
        for (std::size_t i = 0; i < v.size(); ++i)
            v[i] = detail::norm_at_most(v.point(i) - n, 3, 0) ? 1.0 : 0.0;
        s.push_back(std::move(v));
    }
    for (std::size_t i = 0; i < shifts.size(); ++i)
        for (std::size_t k = 0; k < shifts.size(); ++k)
            EXPECT_LT(std::abs(inner_product_oracle(s[i], s[k]) - to_double(gram[i][k])), 1e-9);
}

TEST(WaveletSpaceGram, FixedScaleIsOrthogonal) {
    const PrimeContext c3(3);
    TestFunction f(c3);
    f.add_term({0, Rational(0), 1}, one(3));
    f.add_term({0, Rational(1, 3), 2}, root_of_unity(1, 3));
    const auto spec = stabilizer_spec(f);
    for (std::int64_t gap = 1; gap <= 3; ++gap) EXPECT_TRUE(wavelet_space_gram(f, spec, 0, gap, 1).orthogonal);
    EXPECT_EQ(observed_orthogonality_threshold(f, spec, 3, 1), 1);
}

TEST(WaveletSpaceGram, TwoScaleThreshold) {
    for (std::int64_t p : {2, 3}) {
        const PrimeContext ctx(p);
        const auto f = two_scale(ctx);
        const auto spec = stabilizer_spec(f);
        const auto adjacent = wavelet_space_gram(f, spec, 0, 1, 1);
        EXPECT_FALSE(adjacent.orthogonal);
        EXPECT_GT(adjacent.max_abs_entry, 0.0);
        for (std::int64_t gap = 2; gap <= 4; ++gap) {
            EXPECT_TRUE(wavelet_space_gram(f, spec, 0, gap, 1).orthogonal);
            EXPECT_TRUE(wavelet_space_gram(f, spec, -1, -1 + gap, 2).orthogonal);
        }
        EXPECT_EQ(observed_orthogonality_threshold(f, spec, 4, 1), 2);
    }
}

TEST(WaveletSpaceGram, RandomSpreadBound) {
    Rng rng(33);
    const PrimeContext c3(3);
    for (int t = 0; t < 4; ++t) {
        const auto f = random_generic_function<CycloNumber>(rng, c3, 3, IndexGrid{-1, 1, 1});
        const auto spec = stabilizer_spec(f);
        const std::int64_t spread = f.max_scale() - f.min_scale();
        for (std::int64_t gap = spread + 1; gap <= spread + 2; ++gap)
            EXPECT_TRUE(wavelet_space_gram(f, spec, 0, gap, 1).orthogonal);
    }
}

TEST(ScalingRelation, Generators) {
    const PrimeContext c3(3);
    const auto f = two_scale(c3);
    const auto spec = stabilizer_spec(f);
    const auto gen = orbit_element(f, spec, {0, Rational(1, 3), 2});
    const auto r = scaling_relation_check(f, spec, gen, 0, 1);
    EXPECT_TRUE(r.precondition_ok);
    EXPECT_TRUE(r.holds);
    const auto combo = [&] {
        TestFunction h = gen;
        const auto other = orbit_element(f, spec, {0, Rational(2), 1});
        for (const auto& [idx, c] : other.terms())
            h.add_term(idx, c * root_of_unity(2, 3));
        return h;
    }();
    const auto r2 = scaling_relation_check(f, spec, combo, 0, 1);
    EXPECT_TRUE(r2.precondition_ok);
    EXPECT_TRUE(r2.holds);
}

TEST(ScalingRelation, RejectsInputsOutsideTheSpace) {
    const PrimeContext c3(3);
    const auto f = two_scale(c3);
    const auto spec = stabilizer_spec(f);
    const auto r = scaling_relation_check(f, spec, single_wavelet(c3, {5, Rational(0), 1}, one(3)), 0, 1);
    EXPECT_FALSE(r.precondition_ok);
    EXPECT_FALSE(r.holds);
}

TEST(InSpan, SmallCases) {
    const PrimeContext c3(3);
    const auto a = single_wavelet(c3, {0, Rational(0), 1}, one(3));
    const auto b = single_wavelet(c3, {1, Rational(0), 1}, root_of_unity(1, 3));
    TestFunction sum = a;
    sum.add_term({1, Rational(0), 1}, CycloNumber(3, Rational(3)));
    EXPECT_TRUE(detail::in_span({a, b}, sum));
    EXPECT_FALSE(detail::in_span({a}, sum));
    EXPECT_TRUE(detail::in_span({}, TestFunction(c3)));
}
