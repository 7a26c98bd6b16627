#include <gtest/gtest.h>

#include "repgame/bounds.hpp"

using namespace repgame;

TEST(Rational, ParsesDecimalsFractionsAndExponents) {
  EXPECT_EQ(parse_rational("0.1"), Rational(1, 10));
  EXPECT_EQ(parse_rational("1/3"), Rational(1, 3));
  EXPECT_EQ(parse_rational("-2.5"), Rational(-5, 2));
  EXPECT_EQ(parse_rational("1e-2"), Rational(1, 100));
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_EQ(decimal_rational(0.1), Rational(1, 10));
  EXPECT_EQ(to_fraction_string(Rational(6, 4)), "3/2");
  EXPECT_EQ(to_fraction_string(Rational(2)), "2");
}

TEST(BoundTable, FiveActionsDeltaTenth) {
  const BoundTable t = bound_table(5, Rational(1, 10));
  EXPECT_EQ(t.gamma_star, Rational(1, 3));
  EXPECT_EQ(t.theorem1_bound, Rational(1, 8));
  EXPECT_EQ(t.gamma, t.gamma_star);
  EXPECT_EQ(t.passive_bound, Rational(3, 5) - Rational(1, 3) - Rational(1, 10));
  EXPECT_EQ(t.active_bound, Rational(1, 3) * (Rational(4, 5) - Rational(1, 10)));
  EXPECT_EQ(t.mixed_bound, Rational(1, 4) / Rational(3, 2));
}

TEST(BoundTable, ThreeActionsDeltaFifth) {
  const BoundTable t = bound_table(3, Rational(1, 5));
  EXPECT_EQ(t.theorem1_bound, Rational(2, 225));
  EXPECT_NEAR(to_double(t.theorem1_bound), 0.00889, 1e-5);
}

TEST(BoundTable, DoubleOverloadUsesShortestDecimal) {
  EXPECT_EQ(bound_table(5, 0.1).theorem1_bound, Rational(1, 8));
  EXPECT_EQ(bound_table(5, 0.1, 0.25).gamma, Rational(1, 4));
}

TEST(BoundTable, DomainErrors) {
  EXPECT_THROW(bound_table(2, Rational(1, 10)), std::invalid_argument);
  EXPECT_THROW(bound_table(5, Rational(0)), std::invalid_argument);
  EXPECT_THROW(bound_table(5, Rational(3, 5)), std::invalid_argument);
  EXPECT_THROW(bound_table(5, Rational(1, 10), Rational(3, 2)), std::invalid_argument);
}

TEST(BoundTable, Invariants) {
  for (int n = 3; n <= 12; ++n) {
    for (int k = 1; k < 40; ++k) {
      const Rational delta(k, 100);
      const Rational x = Rational(n - 2, n) - delta;
      if (x <= 0) continue;
      const BoundTable t = bound_table(n, delta);
      EXPECT_EQ(t.theorem1_bound, x * x / 2);
      EXPECT_EQ(t.gamma_star, x / (1 + x));
      // At gamma_star the passive bound equals gamma_star * x.
      EXPECT_EQ(t.passive_bound, t.gamma_star * x);
      EXPECT_EQ(t.mixed_bound, t.passive_bound);
      EXPECT_GE(t.mixed_bound, t.theorem1_bound);
    }
  }
}

TEST(BoundTable, ApproachesZeroAtTheDeltaBoundary) {
  const BoundTable t = bound_table(3, Rational(1, 3) - Rational(1, 1000000));
  EXPECT_LT(to_double(t.theorem1_bound), 1e-12);
}

TEST(BoundTable, Serialization) {
  const BoundTable t = bound_table(5, Rational(1, 10));
  const auto j = to_json(t);
  EXPECT_EQ(j.at("theorem1_bound").at("exact"), "1/8");
  EXPECT_EQ(j.at("gamma_star").at("value"), 1.0 / 3.0);
  const std::string csv = to_csv(t);
  EXPECT_EQ(csv.rfind("quantity,exact,value\n", 0), 0u);
  EXPECT_NE(csv.find("theorem1_bound,1/8,0.125"), std::string::npos);
  EXPECT_NE(to_text(t).find("theorem1_bound"), std::string::npos);
}
