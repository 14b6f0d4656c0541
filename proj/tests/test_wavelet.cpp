#include "oracles.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace padicframe;

namespace {

CycloNumber one(std::int64_t p) { return CycloNumber(p, Rational(1)); }

std::vector<WaveletIndex> index_grid(std::int64_t p, std::int64_t max_gamma, std::int64_t den_exp) {
    std::vector<WaveletIndex> out;
    const std::int64_t den = ipow64(p, den_exp);
    for (std::int64_t g = -max_gamma; g <= max_gamma; ++g)
        for (std::int64_t N = 0; N < den; ++N)
            for (std::int64_t j = 1; j < p; ++j) out.push_back({g, Rational(N, den), j});
    return out;
}

}  // namespace

TEST(WaveletIndex, Validation) {
    const PrimeContext ctx(3);
    EXPECT_NO_THROW(make_wavelet_index(ctx, 0, Rational(2, 9), 2));
    EXPECT_THROW(make_wavelet_index(ctx, 0, Rational(0), 3), PadicError);
    EXPECT_THROW(make_wavelet_index(ctx, 0, Rational(0), 0), PadicError);
    EXPECT_THROW(make_wavelet_index(ctx, 0, Rational(4, 3), 1), PadicError);
    EXPECT_THROW(make_wavelet_index(ctx, 0, Rational(1, 2), 1), PadicError);
}

TEST(WaveletEval, Examples) {
    const PrimeContext c3(3);
    const WaveletIndex psi{0, Rational(0), 1};
    const auto at0 = wavelet_eval(c3, psi, Rational(0));
    EXPECT_NEAR(at0.real(), 1.0, 1e-15);
    EXPECT_NEAR(at0.imag(), 0.0, 1e-15);
    const auto at1 = wavelet_eval(c3, psi, Rational(1));
    EXPECT_NEAR(at1.real(), -0.5, 1e-12);
    EXPECT_NEAR(at1.imag(), std::sqrt(3.0) / 2, 1e-12);
    EXPECT_EQ(wavelet_eval(c3, psi, Rational(1, 3)), std::complex<double>(0.0, 0.0));
    // amplitude p^{-gamma/2}
    EXPECT_NEAR(std::abs(wavelet_eval(c3, WaveletIndex{2, Rational(0), 1}, Rational(0))), 1.0 / 3.0, 1e-15);
}

TEST(Sample, Examples) {
    const PrimeContext c3(3), c2(2);
    const auto s = sample(mother_wavelet(c3), 1, 0);
    ASSERT_EQ(s.size(), 3u);
    for (std::size_t i = 0; i < 3; ++i) {
        const auto expected = std::polar(1.0, 2.0 * std::numbers::pi * double(i) / 3.0);
        EXPECT_LT(std::abs(s[i] - expected), 1e-12);
        EXPECT_LT(std::abs(s[i] - wavelet_eval(c3, {0, Rational(0), 1}, s.point(i))), 1e-15);
    }
    const auto z = sample(TestFunction(c3), 2, 1);
    for (const auto& v : z.values()) EXPECT_EQ(v, std::complex<double>(0.0, 0.0));
    const auto s2 = sample(mother_wavelet(c2), 1, 0);
    EXPECT_LT(std::abs(s2[0] - 1.0), 1e-15);
    EXPECT_LT(std::abs(s2[1] + 1.0), 1e-12);
}

TEST(Sample, RejectsCoarseLattices) {
    const PrimeContext c3(3);
    auto f = mother_wavelet(c3);
    f.add_term({-1, Rational(1, 3), 2}, one(3));
    EXPECT_EQ(required_resolution(f), 2);
    EXPECT_EQ(required_support(f), 0);
    try {
        (void)sample(f, 1, 0);
        FAIL();
    } catch (const PadicError& e) {
        EXPECT_NE(std::string(e.what()).find("required 2"), std::string::npos);
    }
    EXPECT_THROW((void)sample(single_wavelet(c3, {0, Rational(1, 9), 1}, one(3)), 1, 1), PadicError);
}

TEST(Sample, LocalConstancyUnderRefinement) {
    Rng rng(21);
    for (std::int64_t p : {2, 3}) {
        const PrimeContext ctx(p);
        for (int t = 0; t < 10; ++t) {
            const auto f = random_test_function<CycloNumber>(rng, ctx, 6, IndexGrid{});
            const auto [k, l] = default_lattice(f);
            const auto coarse = sample(f, k, l);
            const auto fine = sample(f, k + 1, l);
            for (std::size_t i = 0; i < fine.size(); ++i)
                EXPECT_LT(std::abs(fine[i] - coarse.at(fine.point(i))), 1e-12);
        }
    }
}

TEST(InnerProduct, Examples) {
    const PrimeContext c5(5);
    const WaveletIndex a{0, Rational(0), 1}, b{1, Rational(0), 1};
    const auto psi = single_wavelet(c5, a, one(5));
    EXPECT_EQ(inner_product_symbolic(psi, psi), one(5));
    EXPECT_TRUE(inner_product_symbolic(psi, single_wavelet(c5, b, one(5))).is_zero());
    TestFunction f(c5);
    f.add_term(a, CycloNumber(5, Rational(2)));
    f.add_term(b, root_of_unity(1, 5));
    EXPECT_EQ(inner_product_symbolic(f, single_wavelet(c5, b, one(5))), root_of_unity(1, 5));
    EXPECT_EQ(inner_product_symbolic(single_wavelet(c5, b, one(5)), f), root_of_unity(4, 5));
    EXPECT_THROW(inner_product_symbolic(psi, mother_wavelet(PrimeContext(3))), PadicError);
}

TEST(InnerProduct, OracleExamples) {
    const PrimeContext c3(3);
    const auto psi = mother_wavelet(c3);
    const auto s = sample(psi, 1, 0);
    EXPECT_LT(std::abs(inner_product_oracle(s, s) - 1.0), 1e-9);
    const auto other = sample(single_wavelet(c3, {0, Rational(0), 2}, one(3)), 1, 0);
    EXPECT_LT(std::abs(inner_product_oracle(s, other)), 1e-9);
    const auto zero = sample(TestFunction(c3), 1, 0);
    EXPECT_EQ(inner_product_oracle(zero, s), std::complex<double>(0.0, 0.0));
    EXPECT_THROW((void)inner_product_oracle(s, sample(psi, 2, 0)), PadicError);
}

TEST(NormSq, Examples) {
    const PrimeContext c3(3);
    EXPECT_EQ(norm_sq(mother_wavelet(c3)), one(3));
    EXPECT_TRUE(norm_sq(TestFunction(c3)).is_zero());
    auto f = mother_wavelet(c3);
    f.add_term({1, Rational(1, 3), 2}, one(3));
    EXPECT_EQ(norm_sq(f), CycloNumber(3, Rational(2)));
}

TEST(TestFunction, DropsZeroTerms) {
    const PrimeContext c3(3);
    TestFunction f = mother_wavelet(c3);
    f.add_term({0, Rational(0), 1}, CycloNumber(3, Rational(-1)));
    EXPECT_TRUE(f.empty());
    f.add_term({0, Rational(0), 2}, CycloNumber(3));
    EXPECT_TRUE(f.empty());
    EXPECT_THROW(f.add_term({0, Rational(0), 3}, one(3)), PadicError);
    EXPECT_THROW((void)f.min_scale(), PadicError);
}

TEST(Orthonormality, SymbolicKroneckerOnGrid) {
    for (std::int64_t p : {2, 3}) {
        const PrimeContext ctx(p);
        const auto grid = index_grid(p, 2, 2);
        std::vector<TestFunction> fs;
        for (const auto& idx : grid) fs.push_back(single_wavelet(ctx, idx, one(p)));
        for (std::size_t i = 0; i < fs.size(); ++i)
            for (std::size_t k = 0; k < fs.size(); ++k)
                EXPECT_EQ(inner_product_symbolic(fs[i], fs[k]), i == k ? one(p) : CycloNumber(p));
    }
}

TEST(Orthonormality, OracleOnSmallGrid) {
    const std::int64_t p = 3;
    const PrimeContext ctx(p);
    const auto grid = index_grid(p, 1, 1);
    // one lattice fine and wide enough for every index in the grid
    const std::int64_t K = 2, L = 2;
    std::vector<SampledFunction> samples;
    for (const auto& idx : grid) samples.push_back(sample(single_wavelet(ctx, idx, one(p)), K, L));
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t k = 0; k < grid.size(); ++k)
            EXPECT_LT(std::abs(inner_product_oracle(samples[i], samples[k]) - (i == k ? 1.0 : 0.0)), 1e-9);
}

TEST(InnerProduct, OracleAgreesWithSymbolicOnRandomPairs) {
    Rng rng(17);
    for (std::int64_t p : {2, 3, 5}) {
        const PrimeContext ctx(p);
        // oracle lattices grow like p^{K+L}; keep p = 5 on a narrower grid
        const IndexGrid grid = p == 5 ? IndexGrid{-1, 1, 1} : IndexGrid{};
        for (int t = 0; t < 15; ++t) {
            const auto f = random_test_function<CycloNumber>(rng, ctx, 6, grid);
            const auto g = random_test_function<CycloNumber>(rng, ctx, 6, grid);
            const std::int64_t K = std::max(required_resolution(f), required_resolution(g));
            const std::int64_t L = std::max(required_support(f), required_support(g));
            const auto oracle = inner_product_oracle(sample(f, K, L), sample(g, K, L));
            EXPECT_LT(std::abs(oracle - to_complex_float(inner_product_symbolic(f, g))), 1e-9);
        }
    }
}

TEST(Parseval, CoefficientsRecoverNorm) {
    Rng rng(23);
    for (std::int64_t p : {2, 3, 5}) {
        const PrimeContext ctx(p);
        for (int t = 0; t < 20; ++t) {
            const auto g = random_test_function<CycloNumber>(rng, ctx, 6, IndexGrid{});
            CycloNumber sum(p);
            for (const auto& [idx, c] : g.terms()) {
                const auto ip = inner_product_symbolic(g, single_wavelet(ctx, idx, one(p)));
                sum += ip * conjugate(ip);
            }
            EXPECT_EQ(sum, norm_sq(g));
        }
    }
}

TEST(FloatMode, MirrorsExact) {
    Rng rng(29);
    const PrimeContext ctx(5);
    const auto f = random_test_function<CycloNumber>(rng, ctx, 5, IndexGrid{});
    const auto g = random_test_function<CycloNumber>(rng, ctx, 5, IndexGrid{});
    const auto exact = to_complex_float(inner_product_symbolic(f, g));
    const auto approx = inner_product_symbolic(to_float(f), to_float(g));
    EXPECT_LT(std::abs(exact - approx), 1e-12);
}
