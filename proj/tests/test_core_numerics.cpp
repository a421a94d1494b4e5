#include "gabspline/polynomial.hpp"
#include "gabspline/rational.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

using namespace gabspline;

TEST(Rational, NormalizesSignAndGcd) {
    Rational r(6, -4);
    EXPECT_EQ(r.numerator(), -3);
    EXPECT_EQ(r.denominator(), 2);
    EXPECT_EQ(r.str(), "-3/2");
    EXPECT_EQ(Rational(4, 2).str(), "2");
    EXPECT_THROW(Rational(1, 0), std::exception);
}

TEST(Rational, ParseAcceptsOnlyExactForms) {
    EXPECT_EQ(Rational::parse("5/6"), Rational(5, 6));
    EXPECT_EQ(Rational::parse("-7"), Rational(-7));
    EXPECT_EQ(Rational::parse("10/4").str(), "5/2");
    for (const char* bad : {"0.3", "1e2", "", "1/", "/2", "1/0", "a/b", "1//2", " 1/2"})
        EXPECT_THROW(Rational::parse(bad), std::invalid_argument) << bad;
}

TEST(Rational, RoundNearest) {
    EXPECT_EQ(round_nearest(Rational(23, 10)), 2);
    EXPECT_EQ(round_nearest(Rational(5, 2)), 3);
    EXPECT_EQ(round_nearest(Rational(-1, 2)), 0);
    EXPECT_EQ(round_nearest(Rational(-3, 2)), -1);
}

TEST(Rational, SignedFrac) {
    EXPECT_EQ(signed_frac(Rational(23, 10)), Rational(3, 10));
    EXPECT_EQ(signed_frac(Rational(5, 2)), Rational(-1, 2));
    EXPECT_EQ(signed_frac(Rational(2)), Rational(0));
    EXPECT_EQ(signed_frac(Rational(19, 10)), Rational(-1, 10));
}

TEST(Rational, RoundingIdentitiesOnRandomInputs) {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        const Rational x = testutil::random_rational(rng, Rational(-20), Rational(20));
        EXPECT_EQ(signed_frac(x) + Rational(round_nearest(x)), x);
        EXPECT_GE(signed_frac(x), Rational(-1, 2));
        EXPECT_LT(signed_frac(x), Rational(1, 2));
        for (long long k : {-3LL, 1LL, 7LL}) EXPECT_EQ(round_nearest(x + Rational(k)), round_nearest(x) + k);
    }
}

TEST(Rational, ArithmeticIsExact) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        const Rational a = testutil::random_rational(rng, Rational(-5), Rational(5), 1000003);
        const Rational b = testutil::random_rational(rng, Rational(-5), Rational(5), 999983);
        EXPECT_EQ((a + b) - b, a);
        if (!b.is_zero()) {
            EXPECT_EQ((a / b) * b, a);
        }
    }
    // Denominators beyond 64 bits stay exact.
    Rational big(1);
    for (int i = 0; i < 40; ++i) big /= Rational(97);
    BigInt d = 1;
    for (int i = 0; i < 40; ++i) d *= 97;
    EXPECT_EQ(big.denominator(), d);
    EXPECT_EQ((big + big) / big, Rational(2));
    EXPECT_THROW(to_ll(big.denominator()), std::overflow_error);
}

TEST(RootOfUnity, Examples) {
    const auto z0 = root_of_unity(0, 4);
    EXPECT_EQ(z0, Complex(1, 0));
    EXPECT_EQ(root_of_unity(1, 2), Complex(-1, 0));
    EXPECT_EQ(root_of_unity(1, 4), Complex(0, -1));
    EXPECT_THROW(root_of_unity(1, 0), std::invalid_argument);
}

TEST(RootOfUnity, GeometricSumVanishes) {
    for (long long R = 2; R <= 40; ++R) {
        Complex s{};
        for (long long k = 0; k < R; ++k) s += root_of_unity(k, R);
        EXPECT_LT(std::abs(s), 1e-12) << R;
    }
}

TEST(ReduceRatio, Examples) {
    EXPECT_EQ(reduce_ratio(Rational(1, 3), Rational(5, 2)), std::make_pair(5LL, 6LL));
    EXPECT_EQ(reduce_ratio(Rational(1), Rational(1)), std::make_pair(1LL, 1LL));
    EXPECT_EQ(reduce_ratio(Rational(5, 21), Rational(21, 10)), std::make_pair(1LL, 2LL));
    EXPECT_THROW(reduce_ratio(Rational(0), Rational(1)), std::invalid_argument);
    EXPECT_THROW(reduce_ratio(Rational(1), Rational(-1)), std::invalid_argument);
}

TEST(Polynomial, ShiftScaleAndCalculus) {
    const Polynomial p({Rational(1), Rational(-2), Rational(3)});  // 1 - 2x + 3x^2
    EXPECT_EQ(p.degree(), 2);
    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        const Rational x = testutil::random_rational(rng, Rational(-3), Rational(3));
        const Rational h = testutil::random_rational(rng, Rational(-2), Rational(2));
        EXPECT_EQ(p.shifted(h)(x), p(x + h));
        EXPECT_EQ(p.scaled(h)(x), p(h * x));
    }
    EXPECT_EQ(p.antiderivative().derivative(), p);
    EXPECT_EQ(p.antiderivative()(Rational(0)), Rational(0));
    EXPECT_EQ((p * p).degree(), 4);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(Polynomial().degree(), -1);
}
