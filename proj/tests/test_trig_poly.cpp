#include "symcartan/random.hpp"
#include "symcartan/trig_poly.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace symcartan;

TEST(TrigPoly, CosineSquared)
{
    auto c = TrigPoly::cos(3, {1, 0, 0});
    auto sq = c * c;
    auto expected = TrigPoly::constant(3, Rational(1, 2)) + TrigPoly::cos(3, {2, 0, 0}, Rational(1, 2));
    EXPECT_EQ(sq, expected);
    EXPECT_EQ(sq.mean(), Rational(1, 2));
}

TEST(TrigPoly, SineSquaredMean)
{
    auto s = TrigPoly::sin(3, {1, 0, 0});
    EXPECT_EQ((s * s).mean(), Rational(1, 2));
    EXPECT_EQ(mean_of_product(s, s), Rational(1, 2));
}

TEST(TrigPoly, DerivativeOfSine)
{
    auto s = TrigPoly::sin(2, {3, -1, 0, 0}, Rational(2, 5));
    EXPECT_EQ(s.derivative(0), TrigPoly::cos(2, {3, -1, 0, 0}, Rational(6, 5)));
    EXPECT_EQ(s.derivative(1), TrigPoly::cos(2, {3, -1, 0, 0}, Rational(-2, 5)));
    EXPECT_TRUE(TrigPoly::constant(2, 7).derivative(1).is_zero());
}

TEST(TrigPoly, CanonicalForm)
{
    auto a = TrigPoly::cos(1, {1}) + TrigPoly::sin(1, {2}, Rational(1, 3));
    EXPECT_TRUE(a.is_hermitian());
    auto z = a - a;
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z, TrigPoly(1));
    EXPECT_EQ(a.cutoff(), 2);
    EXPECT_EQ(a.denominator(), 6);
}

TEST(TrigPoly, PackRoundTrip)
{
    Frequency k{-3, 0, 7, -1};
    EXPECT_EQ(TrigPoly::unpack(TrigPoly::pack(k)), k);
    EXPECT_THROW(TrigPoly::pack({1 << 15, 0, 0, 0}), std::overflow_error);
}

TEST(TrigPoly, ProductMatchesPointwise)
{
    SeededRng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_poly(rng, 3, 2, 3);
        auto b = random_poly(rng, 3, 2, 3);
        auto ab = a * b;
        EXPECT_TRUE(ab.is_hermitian());
        EXPECT_LE(ab.cutoff(), 4);
        EXPECT_EQ(ab.mean(), mean_of_product(a, b));
        std::vector<double> x = {rng.uniform_real(0, 6.28), rng.uniform_real(0, 6.28), rng.uniform_real(0, 6.28)};
        EXPECT_NEAR(ab.evaluate(x), a.evaluate(x) * b.evaluate(x), 1e-12);
        const double h = 1e-5;
        auto xp = x, xm = x;
        xp[1] += h;
        xm[1] -= h;
        EXPECT_NEAR(a.evaluate_derivative(x, 1), (a.evaluate(xp) - a.evaluate(xm)) / (2 * h), 1e-7);
        EXPECT_NEAR(a.derivative(1).evaluate(x), a.evaluate_derivative(x, 1), 1e-12);
    }
}

TEST(TrigPoly, EvaluationAtRationalMultiplesOfPi)
{
    // cos(2x) + sin(y)/3 at x = pi/3, y = pi/6
    auto f = TrigPoly::cos(2, {2, 0}) + TrigPoly::sin(2, {0, 1}, Rational(1, 3));
    std::vector<double> x = {std::numbers::pi / 3, std::numbers::pi / 6};
    EXPECT_NEAR(f.evaluate(x), -0.5 + 0.5 / 3, 1e-12);
}

TEST(TrigPoly, LinearityAndScaling)
{
    SeededRng rng(1);
    auto a = random_poly(rng, 4, 1, 4);
    auto b = random_poly(rng, 4, 1, 4);
    EXPECT_EQ(Rational(3, 7) * (a + b), Rational(3, 7) * a + Rational(3, 7) * b);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b).derivative(2), a.derivative(2) * b + a * b.derivative(2));
    auto c = a;
    c.add_scaled(b, Rational(-5, 2));
    EXPECT_EQ(c, a - Rational(5, 2) * b);
}

TEST(TrigPoly, DimensionMismatch)
{
    EXPECT_THROW(TrigPoly(2) + TrigPoly(3), std::invalid_argument);
    EXPECT_THROW(TrigPoly(5), std::invalid_argument);
}

TEST(TrigPoly, OverflowIsReported)
{
    auto f = TrigPoly::constant(1, Rational(1, 1000003));
    auto g = f;
    EXPECT_THROW(
        {
            for (int i = 0; i < 8; ++i) g = g * f;
        },
        std::overflow_error);
}
