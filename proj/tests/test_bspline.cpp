#include "gabspline/bspline.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gabspline;

namespace {

// Cox-de Boor recursion for the cardinal B-spline, in exact rationals:
// N_1 = 1 on [0, 1), N_n(x) = (x N_{n-1}(x) + (n - x) N_{n-1}(x - 1)) / (n - 1).
Rational cox_de_boor(int n, const Rational& x) {
    if (n == 1) return (x >= Rational(0) && x < Rational(1)) ? Rational(1) : Rational(0);
    return (x * cox_de_boor(n - 1, x) + (Rational(n) - x) * cox_de_boor(n - 1, x - Rational(1))) / Rational(n - 1);
}

// B_{n+1}(x) = integral of B_n over [x - 1/2, x + 1/2], by the midpoint rule.
double convolution_oracle(const PiecewisePolynomial& bn, double x) {
    const int steps = 200000;
    const double h = 1.0 / steps;
    double s = 0.0;
    for (int i = 0; i < steps; ++i) s += bn(x - 0.5 + (i + 0.5) * h);
    return s * h;
}

}  // namespace

TEST(PiecewisePolynomial, RejectsMalformedInput) {
    EXPECT_THROW(PiecewisePolynomial({Rational(0)}, {}), std::invalid_argument);
    EXPECT_THROW(PiecewisePolynomial({Rational(0), Rational(1)}, {}), std::invalid_argument);
    EXPECT_THROW(PiecewisePolynomial({Rational(1), Rational(0)}, {Polynomial::constant(Rational(1))}),
                 std::invalid_argument);
}

TEST(BSpline, CenteredExamples) {
    const auto b1 = bspline_centered(1);
    EXPECT_EQ(b1.support_lo(), Rational(-1, 2));
    EXPECT_EQ(b1.support_hi(), Rational(1, 2));
    EXPECT_EQ(eval_exact(b1, Rational(1, 4)), Rational(1));
    EXPECT_EQ(eval_exact(b1, Rational(0)), Rational(1));
    EXPECT_EQ(eval_exact(bspline_centered(2), Rational(0)), Rational(1));
    EXPECT_EQ(eval_exact(bspline_centered(2), Rational(1, 2)), Rational(1, 2));
    EXPECT_EQ(eval_exact(bspline_centered(2), Rational(2)), Rational(0));
    EXPECT_EQ(eval_exact(bspline_centered(2), Rational(-1, 4)), Rational(3, 4));
    EXPECT_THROW(bspline_centered(0), std::invalid_argument);
}

TEST(BSpline, CardinalExamples) {
    const auto n1 = cardinal(1);
    EXPECT_EQ(n1.support_lo(), Rational(0));
    EXPECT_EQ(n1.support_hi(), Rational(1));
    EXPECT_EQ(eval_exact(cardinal(2), Rational(1)), Rational(1));
    EXPECT_EQ(eval_exact(cardinal(3), Rational(3, 2)), Rational(3, 4));
    EXPECT_THROW(cardinal(-1), std::invalid_argument);
}

TEST(BSpline, FloatExamples) {
    EXPECT_EQ(eval_float(bspline_centered(2), 0.0), 1.0);
    EXPECT_EQ(eval_float(bspline_centered(2), 5.0), 0.0);
    EXPECT_EQ(eval_float(bspline_centered(1), 0.49), 1.0);
}

TEST(BSpline, JumpPointsAreRightContinuous) {
    const auto b1 = bspline_centered(1);
    EXPECT_EQ(eval_exact(b1, Rational(-1, 2)), Rational(1));
    EXPECT_EQ(eval_exact(b1, Rational(1, 2)), Rational(0));
}

TEST(BSpline, MatchesCoxDeBoorOracle) {
    std::mt19937_64 rng(21);
    for (int n = 1; n <= 6; ++n) {
        const auto N = cardinal(n);
        for (int i = 0; i < 60; ++i) {
            const Rational x = testutil::random_rational(rng, Rational(-1), Rational(n + 1));
            EXPECT_EQ(eval_exact(N, x), cox_de_boor(n, x)) << "n=" << n << " x=" << x.str();
        }
        for (int j = 0; j <= n; ++j) EXPECT_EQ(eval_exact(N, Rational(j)), cox_de_boor(n, Rational(j)));
    }
}

TEST(BSpline, MatchesConvolutionIntegralOracle) {
    for (int n = 1; n <= 4; ++n) {
        const auto bn = bspline_centered(n);
        const auto bn1 = bspline_centered(n + 1);
        for (double x : {-1.7, -0.9, -0.25, 0.0, 0.3, 0.5, 1.1, 2.2}) {
            EXPECT_NEAR(eval_float(bn1, x), convolution_oracle(bn, x), 1e-5) << "n=" << n + 1 << " x=" << x;
        }
    }
}

TEST(BSpline, StructuralProperties) {
    std::mt19937_64 rng(22);
    for (int n = 1; n <= 6; ++n) {
        const auto B = bspline_centered(n);
        const Rational half(n, 2);
        EXPECT_EQ(B.support_lo(), -half);
        EXPECT_EQ(B.support_hi(), half);
        EXPECT_EQ(B.integral(), Rational(1));
        EXPECT_EQ(B.pieces().size(), static_cast<std::size_t>(n));
        for (const auto& p : B.pieces()) EXPECT_EQ(p.degree(), n - 1);
        for (int i = 0; i < 50; ++i) {
            Rational x = testutil::random_rational(rng, -half - Rational(1), half + Rational(1));
            if (n == 1 && abs(x) == Rational(1, 2)) x += Rational(1, 1000);
            EXPECT_EQ(eval_exact(B, x), eval_exact(B, -x)) << "n=" << n << " x=" << x.str();
            if (abs(x) > half) {
                EXPECT_TRUE(eval_exact(B, x).is_zero());
            } else if (abs(x) < half) {
                EXPECT_GT(eval_exact(B, x), Rational(0));
            }
        }
        if (n >= 2) {
            const auto& bp = B.breakpoints();
            for (std::size_t i = 1; i + 1 < bp.size(); ++i)
                EXPECT_EQ(B.pieces()[i - 1](bp[i]), B.pieces()[i](bp[i])) << "n=" << n;
        }
    }
}

TEST(BSpline, FloatAgreesWithExact) {
    std::mt19937_64 rng(23);
    for (int n = 1; n <= 6; ++n) {
        const auto B = bspline_centered(n);
        for (int i = 0; i < 100; ++i) {
            const Rational x = testutil::random_rational(rng, Rational(-n, 2), Rational(n, 2), 1000);
            const double exact = eval_exact(B, x).to_double();
            EXPECT_NEAR(eval_float(B, x.to_double()), exact, 1e-14 * std::max(1.0, exact)) << "n=" << n;
        }
    }
}

TEST(BSpline, PartitionOfUnity) {
    std::mt19937_64 rng(24);
    for (int n = 1; n <= 6; ++n) {
        const auto N = cardinal(n);
        for (int i = 0; i < 50; ++i) {
            const Rational x = testutil::random_rational(rng, Rational(-10), Rational(10));
            EXPECT_EQ(periodize_exact(N, Rational(1), x), Rational(1)) << "n=" << n << " x=" << x.str();
        }
    }
}

TEST(Periodize, Examples) {
    EXPECT_EQ(periodize_exact(cardinal(2), Rational(1), Rational(7, 13)), Rational(1));
    const Rational a(1, 3);
    EXPECT_EQ(periodize_exact(bspline_centered(2), Rational(6) * a, Rational(6, 5) * a), Rational(3, 5));
    EXPECT_EQ(periodize_exact(bspline_centered(1), Rational(10), Rational(20)), Rational(1));
    EXPECT_NEAR(periodize_float(bspline_centered(3), 0.7, 0.1),
                periodize_exact(bspline_centered(3), Rational(7, 10), Rational(1, 10)).to_double(), 1e-14);
    EXPECT_THROW(periodize_exact(cardinal(2), Rational(0), Rational(0)), std::invalid_argument);
}

TEST(PartlyPou, Examples) {
    auto r = verify_partly_pou(1, Rational(1), {Rational(0), Rational(1, 3), Rational(7, 9)});
    ASSERT_TRUE(r.is_constant);
    EXPECT_EQ(*r.constant, Rational(1));

    r = verify_partly_pou(2, Rational(21, 10), {Rational(1, 5), Rational(1, 2), Rational(1)});
    EXPECT_TRUE(r.is_constant);
    EXPECT_EQ(*r.constant, Rational(44, 21));

    // Integer c: translates of N_n(./c) along Z sum to c everywhere.
    r = verify_partly_pou(2, Rational(2), {Rational(0), Rational(1, 4), Rational(1)});
    ASSERT_TRUE(r.is_constant);
    EXPECT_EQ(*r.constant, Rational(2));
}

TEST(PartlyPou, MirroredRegionForNegativeFraction) {
    // {19/10} = -1/10, region [m, m + 1 - 2/10].
    std::vector<Rational> xs;
    for (int i = 0; i <= 8; ++i) xs.push_back(Rational(i, 10) + Rational(i % 3 - 1));
    const auto r = verify_partly_pou(2, Rational(19, 10), xs);
    EXPECT_TRUE(r.is_constant);
}

TEST(PartlyPou, IntegerCGivesConstantC) {
    std::mt19937_64 rng(25);
    for (int n = 1; n <= 4; ++n)
        for (int c = 1; c <= 3; ++c) {
            std::vector<Rational> xs;
            for (int i = 0; i < 20; ++i) xs.push_back(testutil::random_rational(rng, Rational(-4), Rational(4)));
            const auto r = verify_partly_pou(n, Rational(c), xs);
            ASSERT_TRUE(r.is_constant);
            EXPECT_EQ(*r.constant, Rational(c));
        }
}

TEST(PartlyPou, RejectsBadInput) {
    EXPECT_THROW(verify_partly_pou(3, Rational(8, 5), {Rational(1)}), std::invalid_argument);
    EXPECT_THROW(verify_partly_pou(2, Rational(21, 10), {Rational(1, 10)}), std::invalid_argument);
    EXPECT_THROW(verify_partly_pou(2, Rational(-2), {Rational(0)}), std::invalid_argument);
}

TEST(PartlyPou, OffRegionSumsAreNotConstant) {
    // Just outside [1/5, 1] the exact sums differ from the plateau value.
    const auto N = cardinal(2);
    const Rational c(21, 10);
    auto sum_at = [&](const Rational& x) {
        Rational s;
        for (int k = -3; k <= 6; ++k) s += N((x + Rational(k)) / c);
        return s;
    };
    EXPECT_EQ(sum_at(Rational(1, 2)), Rational(44, 21));
    EXPECT_NE(sum_at(Rational(1, 20)), Rational(44, 21));
}
