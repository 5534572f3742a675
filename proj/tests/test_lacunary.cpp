#include <gtest/gtest.h>

#include <cmath>

#include "rarebasis/lacunary.hpp"

using namespace rarebasis;

TEST(Sequence, GeometricAngles) {
  const auto s = LacunarySequence::geometric(0.5, 0.6, 0.5, 0.8);
  EXPECT_DOUBLE_EQ(s.angle(0), 0.5);
  EXPECT_NEAR(s.angle(2), 0.18, 1e-15);
  EXPECT_NEAR(s.angle(10), 0.5 * std::pow(0.6, 10), 1e-17);
  EXPECT_NEAR(s.angle(10), 0.0030233, 1e-7);
  EXPECT_FALSE(s.size().has_value());
}

TEST(Sequence, RejectsBadParameters) {
  EXPECT_THROW(LacunarySequence::geometric(0.5, 0.6, 0.8, 0.5), std::invalid_argument);
  EXPECT_THROW(LacunarySequence::geometric(2.0, 0.6, 0.5, 0.8), std::invalid_argument);
  EXPECT_THROW(LacunarySequence::geometric(0.5, 1.0, 0.5, 0.8), std::invalid_argument);
  EXPECT_THROW(LacunarySequence::from_angles({0.5, 0.5}, 0.4, 0.6), std::invalid_argument);
  EXPECT_THROW(LacunarySequence::from_angles({}, 0.4, 0.6), std::invalid_argument);
  const auto e = LacunarySequence::from_angles({0.5, 0.25}, 0.4, 0.6);
  EXPECT_THROW(e.angle(2), std::out_of_range);
}

TEST(Window, DefaultConfiguration) {
  const auto s = LacunarySequence::geometric(0.5, 0.6, 0.5, 0.8);
  const auto w = validate_bilacunary(s, 30);
  EXPECT_EQ(w.j0, 0u);
  ASSERT_EQ(w.ratios.size(), 29u);
  EXPECT_NEAR(w.slopes[0], 0.5463025, 1e-7);
  EXPECT_NEAR(w.ratios[0], 0.5662, 1e-4);
  for (std::size_t j = 0; j < w.ratios.size(); ++j) {
    EXPECT_DOUBLE_EQ(w.ratios[j], std::tan(s.angle(j + 1)) / std::tan(s.angle(j)));
    EXPECT_GE(w.ratios[j], 0.5);
    EXPECT_LE(w.ratios[j], 0.8);
  }
  EXPECT_NEAR(w.ratios.back(), 0.6, 1e-12);
}

TEST(Window, TightEnvelopeReindexesPastTheEarlyRatio) {
  // m1/m0 = 0.566 violates [0.58, 0.61]; every later ratio sits in [0.588, 0.6)
  const auto s = LacunarySequence::geometric(0.5, 0.6, 0.58, 0.61);
  const auto w = validate_bilacunary(s, 5);
  EXPECT_EQ(w.j0, 1u);
  EXPECT_LT(w.ratios[0], 0.58);
}

TEST(Window, FailureListsViolatingRatios) {
  const auto s = LacunarySequence::geometric(0.5, 0.6, 0.58, 0.59);
  try {
    validate_bilacunary(s, 5);
    FAIL() << "expected BilacunaryError";
  } catch (const BilacunaryError& e) {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_EQ(e.violations().front().index, 0u);
    EXPECT_NEAR(e.violations().front().ratio, 0.5662, 1e-4);
    EXPECT_NE(std::string(e.what()).find("m1/m0"), std::string::npos);
  }
}

TEST(Window, ExplicitHalvingSequence) {
  std::vector<double> a;
  for (int j = 0; j < 20; ++j) a.push_back(0.5 / std::pow(2.0, j));
  const auto w = validate_bilacunary(LacunarySequence::from_angles(a, 0.4, 0.6), 20);
  EXPECT_EQ(w.j0, 0u);
  EXPECT_NEAR(w.ratios.back(), 0.5, 1e-9);
  EXPECT_THROW(validate_bilacunary(LacunarySequence::from_angles(a, 0.4, 0.6), 21), std::out_of_range);
}

TEST(Window, SlopeAboveOneIsSkipped) {
  // theta0 = 1.2 has slope 2.57 > 1 even though all ratios are admissible
  const auto s = LacunarySequence::geometric(1.2, 0.6, 0.3, 0.8);
  const auto w = validate_bilacunary(s, 20);
  EXPECT_GT(w.j0, 0u);
  EXPECT_LE(w.slopes[w.j0], 1.0);
  EXPECT_GT(w.slopes[w.j0 - 1], 1.0);
}

TEST(Window, NeedsAtLeastTwoAngles) {
  const auto s = LacunarySequence::geometric(0.5, 0.6, 0.5, 0.8);
  EXPECT_THROW(validate_bilacunary(s, 1), std::invalid_argument);
}

TEST(Window, RatiosStayInsideTheEnvelope) {
  for (double sigma : {0.55, 0.6, 0.7, 0.75}) {
    const auto s = LacunarySequence::geometric(0.7, sigma, 0.5, 0.8);
    const auto w = validate_bilacunary(s, 40);
    for (std::size_t j = w.j0; j < w.ratios.size(); ++j) {
      EXPECT_GE(w.ratios[j], w.lambda);
      EXPECT_LE(w.ratios[j], w.mu);
    }
  }
}

TEST(Slopes, TanOverAngleDecreasesToOne) {
  const auto s = LacunarySequence::geometric(0.5, 0.6, 0.5, 0.8);
  double prev = INFINITY;
  for (std::size_t j = 0; j < 40; ++j) {
    const double q = s.slope(j) / s.angle(j);
    EXPECT_GT(q, 1.0 - 1e-15);
    EXPECT_LE(q, 1.2);
    EXPECT_LE(q, prev);
    prev = q;
  }
}
