#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace padicframe;

namespace {

PadicScalar Q(std::int64_t num, std::int64_t den, std::int64_t p) { return {Rational(num, den), PrimeContext(p)}; }
PadicScalar Z(std::int64_t v, std::int64_t p) { return {Rational(v), PrimeContext(p)}; }

}  // namespace

TEST(PrimeContext, RejectsComposites) {
    EXPECT_NO_THROW(PrimeContext(2));
    EXPECT_NO_THROW(PrimeContext(97));
    EXPECT_THROW(PrimeContext(1), PadicError);
    EXPECT_THROW(PrimeContext(9), PadicError);
    EXPECT_THROW(PrimeContext(-3), PadicError);
}

TEST(Valuation, Examples) {
    EXPECT_EQ(valuation(Z(12, 2)).value(), 2);
    EXPECT_TRUE(valuation(Z(0, 5)).is_infinite());
    EXPECT_EQ(valuation(Q(7, 9, 3)).value(), -2);
    EXPECT_LT(valuation(Z(3, 3)), Valuation::infinity());
}

TEST(Norm, Examples) {
    EXPECT_EQ(norm(Z(5, 5)), Rational(1, 5));
    EXPECT_EQ(norm(Z(0, 5)), 0);
    EXPECT_EQ(norm(Q(3, 4, 2)), 4);
}

TEST(UnitPart, Examples) {
    EXPECT_EQ(unit_part(Z(9, 3)).value(), 1);
    EXPECT_EQ(unit_part(Q(2, 3, 3)).value(), 2);
    EXPECT_EQ(unit_part(Z(18, 3)).value(), 2);
    try {
        unit_part(Z(0, 3));
        FAIL();
    } catch (const PadicError& e) {
        EXPECT_STREQ(e.what(), "zero has no unit part");
    }
}

TEST(FractionalPart, Examples) {
    EXPECT_EQ(fractional_part(Q(7, 4, 2)).value, Rational(3, 4));
    EXPECT_EQ(fractional_part(Z(5, 5)).value, 0);
    EXPECT_EQ(fractional_part(Q(1, 3, 3)).value, Rational(1, 3));
    EXPECT_EQ(fractional_part(Q(-1, 3, 3)).value, Rational(2, 3));
    try {
        fractional_part(Q(1, 2, 3));
        FAIL();
    } catch (const PadicError& e) {
        EXPECT_STREQ(e.what(), "not p-integral denominator");
    }
}

TEST(FractionalPart, MatchesGreedyDigits) {
    std::mt19937_64 rng(11);
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (int t = 0; t < 200; ++t) {
            const std::int64_t e = std::uniform_int_distribution<std::int64_t>(0, 4)(rng);
            const std::int64_t num = std::uniform_int_distribution<std::int64_t>(0, 5000)(rng);
            const Rational x(Integer(num), ipow(p, e));
            EXPECT_EQ(fractional_part(PadicScalar(x, PrimeContext(p))).value,
                      oracle::fractional_part_greedy(Integer(num), p, e));
        }
    }
}

TEST(CosetRepresentative, Examples) {
    EXPECT_EQ(coset_representative(Q(1 + 3 * 3 + 9 * 3, 3, 3), 1).value, Rational(1, 3));
    EXPECT_EQ(coset_representative(Z(4, 2), 3).value, 4);
    EXPECT_EQ(coset_representative(Z(0, 7), 5).value, 0);
    EXPECT_EQ(coset_representative(Z(13, 2), 3).value, 5);
    EXPECT_EQ(coset_representative(Q(22, 9, 3), -1).value, Rational(1, 9));
    EXPECT_THROW(coset_representative(Q(1, 5, 3), 0), PadicError);
}

TEST(ResidueMod, HandlesDenominatorsPrimeToP) {
    // 1/2 = ...1112 in Z_3; mod 9 it is 5
    EXPECT_EQ(residue_mod(Q(1, 2, 3), 2).value, 5);
    // -3/2 = 3 * (-1/2) and -1/2 = 1 mod 3
    EXPECT_EQ(residue_mod(Q(-3, 2, 3), 2).value, 3);
    // 1/6 = 2/3 + 1 + 3 + ... in Q_3
    EXPECT_EQ(residue_mod(Q(1, 6, 3), 1).value, Rational(5, 3));
}

TEST(ModP, Examples) {
    EXPECT_EQ(mod_p(Z(7, 3)), 1);
    EXPECT_EQ(mod_p(Q(1, 2, 3)), 2);
    EXPECT_EQ(mod_p(Q(3, 4, 3)), 0);
    try {
        mod_p(Q(1, 3, 3));
        FAIL();
    } catch (const PadicError& e) {
        EXPECT_STREQ(e.what(), "not a p-adic integer");
    }
}

TEST(InvertModPk, Examples) {
    EXPECT_EQ(invert_mod_pk(Z(1, 5), 4), 1);
    EXPECT_EQ(invert_mod_pk(Z(2, 3), 2), 5);
    EXPECT_EQ(invert_mod_pk(Z(4, 3), 1), 1);
    EXPECT_EQ(invert_mod_pk(Q(2, 5, 3), 2), mod_floor(Integer(5) * inverse_mod(2, 9), 9));
    EXPECT_THROW(invert_mod_pk(Z(3, 3), 2), PadicError);
    EXPECT_THROW(invert_mod_pk(Q(1, 3, 3), 2), PadicError);
}

TEST(DigitExpansion, RoundTrip) {
    const PrimeContext ctx(3);
    const CosetRepresentative r = coset_representative(PadicScalar(Rational(7, 9) + 18, ctx), 3);
    const DigitExpansion d = digit_expansion(r, ctx);
    EXPECT_EQ(d.lowest_exponent, -2);
    ASSERT_EQ(d.digits.size(), 5u);
    Rational back = 0;
    for (std::size_t k = 0; k < d.digits.size(); ++k) {
        EXPECT_GE(d.digits[k], 0);
        EXPECT_LT(d.digits[k], 3);
        back += Rational(d.digits[k]) * rpow(3, d.lowest_exponent + static_cast<std::int64_t>(k));
    }
    EXPECT_EQ(back, r.value);
}

TEST(PadicScalar, Arithmetic) {
    const PrimeContext c3(3), c5(5);
    const PadicScalar x(Rational(1, 3), c3), y(Rational(2), c3);
    EXPECT_EQ((x + y).value(), Rational(7, 3));
    EXPECT_EQ((x * y).value(), Rational(2, 3));
    EXPECT_EQ((x / y).value(), Rational(1, 6));
    EXPECT_THROW(x / PadicScalar(0, c3), PadicError);
    try {
        (void)(x + PadicScalar(1, c5));
        FAIL();
    } catch (const PadicError& e) {
        EXPECT_STREQ(e.what(), "mismatched primes");
    }
}

TEST(ParseRational, Formats) {
    EXPECT_EQ(parse_rational("3"), 3);
    EXPECT_EQ(parse_rational("-7/21"), Rational(-1, 3));
    EXPECT_EQ(parse_rational("123456789012345678901234567890/5"),
              Rational(Integer("123456789012345678901234567890"), 5));
    for (const char* bad : {"", "-", "1/", "/2", "1.5", "a/b", "1/-2", "+1", " 1"})
        EXPECT_THROW(parse_rational(bad), std::invalid_argument) << bad;
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_EQ(to_string(Rational(-2, 6)), "-1/3");
}

TEST(PadicProperties, NormLawsOnRandomInputs) {
    std::mt19937_64 rng(5);
    for (std::int64_t p : {2, 3, 5}) {
        const PrimeContext ctx(p);
        auto draw = [&] {
            const std::int64_t num = std::uniform_int_distribution<std::int64_t>(-2000, 2000)(rng);
            const std::int64_t e = std::uniform_int_distribution<std::int64_t>(0, 4)(rng);
            return PadicScalar(Rational(Integer(num), ipow(p, e)), ctx);
        };
        for (int t = 0; t < 300; ++t) {
            const PadicScalar x = draw(), y = draw();
            const Rational nx = norm(x), ny = norm(y), ns = norm(x + y);
            EXPECT_LE(ns, std::max(nx, ny));
            if (nx != ny) {
                EXPECT_EQ(ns, std::max(nx, ny));
            }
            EXPECT_EQ(norm(x * y), nx * ny);
            if (!x.is_zero()) {
                EXPECT_EQ(norm(unit_part(x)), 1);
                EXPECT_EQ(x.value(), rpow(p, valuation(x).value()) * unit_part(x).value());
                EXPECT_EQ(valuation(x).value(),
                          oracle::valuation_small(to_int64(numerator_of(x.value())),
                                                  to_int64(denominator_of(x.value())), p));
            }
            const Rational fp = fractional_part(x).value;
            EXPECT_LE(norm(PadicScalar(fp - x.value(), ctx)), 1);
            EXPECT_EQ(fractional_part(PadicScalar(fp, ctx)).value, fp);
            for (std::int64_t k = -2; k <= 3; ++k) {
                const Rational r = coset_representative(x, k).value;
                EXPECT_LE(norm(PadicScalar(r - x.value(), ctx)), rpow(p, -k));
            }
        }
    }
}

TEST(PadicScalar, NoOverflowOnLargeValues) {
    const PrimeContext ctx(3);
    const PadicScalar big(Rational(ipow(3, 80) * 7, ipow(2, 70)), ctx);
    EXPECT_EQ(valuation(big).value(), 80);
    EXPECT_EQ(unit_part(big).value(), Rational(7, ipow(2, 70)));
}
