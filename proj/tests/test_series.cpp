#include <gtest/gtest.h>

#include "anforms/series.hpp"

using namespace anforms;

TEST(KPoly, Arithmetic) {
  const KPoly k = KPoly::k();
  const KPoly one(Rational(1));
  EXPECT_EQ(k.degree(), 1);
  EXPECT_EQ(KPoly().degree(), -1);
  EXPECT_TRUE((k - k).is_zero());
  const KPoly p = (k + one) * (k - one);
  EXPECT_EQ(p.coeff(0), -1);
  EXPECT_EQ(p.coeff(1), 0);
  EXPECT_EQ(p.coeff(2), 1);
  EXPECT_EQ(p.coeff(7), 0);
  EXPECT_EQ(p, k * k - one);
  EXPECT_EQ(KPoly(Rational(1, 2)) * k, KPoly(Rational(1, 4)) * k + KPoly(Rational(1, 4)) * k);
  EXPECT_EQ((k * KPoly(Rational(0))).degree(), -1);
}

TEST(KPoly, Strings) {
  EXPECT_EQ(KPoly().str(), "0");
  EXPECT_EQ(KPoly(Rational(3, 2)).str(), "3/2");
  EXPECT_FALSE((KPoly::k() * KPoly::k() + KPoly(Rational(-1))).str().empty());
}

TEST(TruncatedSeries, NilpotentGenerators) {
  const int m = 4;
  const auto s = TruncatedSeries::s(m);
  const auto b = TruncatedSeries::b(m);
  EXPECT_TRUE((s * s).is_zero());
  EXPECT_TRUE(b.pow(m + 1).is_zero());
  EXPECT_FALSE(b.pow(m).is_zero());
  EXPECT_EQ(b.pow(m).coeff(0, m), KPoly(Rational(1)));
  EXPECT_TRUE((s * b.pow(m) * b).is_zero());
  EXPECT_EQ(b.pow(0), TruncatedSeries::constant(m, Rational(1)));
  EXPECT_EQ(b.coeff(0, 9), KPoly());
}

TEST(TruncatedSeries, BinomialExpansionWithSymbolicScalar) {
  // (k s + b)^j = b^j + j k s b^(j-1) when s^2 = 0.
  const int m = 6;
  const auto x = KPoly::k() * TruncatedSeries::s(m) + TruncatedSeries::b(m);
  for (int j = 1; j <= m + 1; ++j) {
    const auto p = x.pow(j);
    for (int e = 0; e <= 1; ++e)
      for (int i = 0; i <= m; ++i) {
        KPoly expect;
        if (e == 0 && i == j) expect = Rational(1);
        if (e == 1 && i == j - 1) expect = KPoly(Rational(j)) * KPoly::k();
        EXPECT_EQ(p.coeff(e, i), expect) << j << " " << e << " " << i;
      }
  }
}

TEST(TruncatedSeries, RingLaws) {
  const int m = 3;
  const auto s = TruncatedSeries::s(m);
  const auto b = TruncatedSeries::b(m);
  const auto one = TruncatedSeries::constant(m, Rational(1));
  const auto x = one + b + KPoly::k() * s;
  const auto y = b * b - s + TruncatedSeries::constant(m, Rational(2, 3));
  const auto z = s * b + b;
  EXPECT_EQ(x * y, y * x);
  EXPECT_EQ((x * y) * z, x * (y * z));
  EXPECT_EQ(x * (y + z), x * y + x * z);
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_THROW(x + TruncatedSeries::b(m + 1), std::exception);
}
