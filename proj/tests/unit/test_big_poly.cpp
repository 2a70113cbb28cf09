#include <gtest/gtest.h>

#include "qdyn/big_poly.hpp"

using namespace qdyn;

TEST(BigPoly, TrimDegreeAndFormatting) {
    EXPECT_EQ(BigPoly({0, 0}).degree(), -1);
    EXPECT_TRUE(BigPoly().is_zero());
    EXPECT_EQ(BigPoly({0, 1, 1}).to_string(), "x^2 + x");
    EXPECT_EQ(BigPoly({1, -2, 0, -1}).to_string(), "-x^3 - 2*x + 1");
    EXPECT_EQ(BigPoly({-5}).to_string(), "-5");
    EXPECT_EQ(BigPoly().to_string(), "0");
}

TEST(BigPoly, ArithmeticIdentities) {
    const BigPoly a{3, -1, 2}, b{-1, 0, 0, 5};
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a.squared(), a * a);
    BigPoly s = a;
    s += b;
    s -= b;
    EXPECT_EQ(s, a);
    EXPECT_EQ((a * b).eval(7), a.eval(7) * b.eval(7));
    EXPECT_EQ(a.compose(b).eval(-3), a.eval(b.eval(-3)));
    EXPECT_EQ(BigPoly({0, 0, 0, 4}).derivative(), BigPoly({0, 0, 12}));
}

TEST(BigPoly, ExactDivision) {
    const BigPoly a{3, -1, 2}, b{-1, 0, 0, 5};
    EXPECT_EQ((a * b).divide_exact(b), a);
    const auto [q, r] = BigPoly({1, 0, 0, 1}).divmod(BigPoly({1, 1}));
    EXPECT_EQ(q, BigPoly({1, -1, 1}));
    EXPECT_TRUE(r.is_zero());
    EXPECT_THROW(BigPoly({1, 0, 1}).divide_exact(BigPoly({0, 2})), Error);
    EXPECT_THROW(a.divmod(BigPoly{}), Error);
}

TEST(BigPoly, LargeCoefficients) {
    BigPoly p{1, 1};
    for (int i = 0; i < 8; ++i) p = p.squared();
    EXPECT_EQ(p.degree(), 256);
    mpz_class central;
    mpz_bin_uiui(central.get_mpz_t(), 256, 128);
    EXPECT_EQ(p[128], central);
    EXPECT_EQ(p.eval(1), mpz_class(1) << 256);
}
