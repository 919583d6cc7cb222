#include <gtest/gtest.h>

#include "ncert/linalg.hpp"
#include "ncert/rational.hpp"

using namespace ncert;

TEST(Rational, FormatsLowestTerms) {
  EXPECT_EQ(to_string(Rational(2, 6)), "1/3");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
  EXPECT_EQ(to_string(Rational(-3, 4)), "-3/4");
  EXPECT_EQ(to_string(Rational(0)), "0");
}

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_rational("1/3"), Rational(1, 3));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("2/4"), Rational(1, 2));
  EXPECT_THROW(parse_rational("1/0"), std::exception);
  EXPECT_THROW(parse_rational("abc"), std::exception);
  EXPECT_THROW(parse_rational(""), std::exception);
}

TEST(Rational, RecoversSmallFractionsFromDoubles) {
  EXPECT_EQ(rational_from_double(1.0 / 3.0), Rational(1, 3));
  EXPECT_EQ(rational_from_double(0.5), Rational(1, 2));
  EXPECT_EQ(rational_from_double(-2.0 / 3.0), Rational(-2, 3));
  // sqrt(2) has no small-denominator approximation within 1e-12.
  const Rational r = rational_from_double(std::sqrt(2.0));
  EXPECT_EQ(to_double(r), std::sqrt(2.0));
}

TEST(Linalg, ExactNullSpaceOfHalfThirdSystem) {
  // 1/2 c = 1/3 c has only c = 0.
  RationalMatrix a(1, 1);
  a << Rational(1, 2) - Rational(1, 3);
  EXPECT_EQ(linalg::null_space(a).cols(), 0);

  RationalMatrix b(1, 3);
  b << 1, -1, 0;
  const RationalMatrix k = linalg::null_space(b);
  ASSERT_EQ(k.cols(), 2);
  const RationalMatrix prod = b * k;
  for (Eigen::Index i = 0; i < prod.size(); ++i) EXPECT_EQ(prod(i), 0);
  EXPECT_EQ(linalg::rank(b), 1);
}

TEST(Linalg, DoubleRowEchelonMatchesRank) {
  Eigen::MatrixXd m(3, 3);
  m << 1, 2, 3, 2, 4, 6, 1, 0, 1;
  EXPECT_EQ(linalg::rank(m), 2);
  const Eigen::MatrixXd k = linalg::null_space(m);
  ASSERT_EQ(k.cols(), 1);
  EXPECT_LT((m * k).norm(), 1e-12);
}
