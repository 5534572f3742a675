#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "rarebasis/construction.hpp"

using namespace rarebasis;
using std::numbers::pi;

namespace {

SlopeWindow default_window(std::size_t prefix = 31) {
  return validate_bilacunary(LacunarySequence::geometric(0.5, 0.6, 0.5, 0.8), prefix);
}

// second evaluation of the closed forms, written out longhand
struct Longhand {
  double c, d, kappa, kappa_prime, c1;
};

Longhand longhand(double lambda, double mu, double m0) {
  Longhand h{};
  h.c = mu / ((1.0 - mu) * m0);
  h.d = std::hypot(2.0, h.c);
  h.kappa = h.c / (2.0 * pi);
  h.kappa_prime = pi / (4.0 * h.d);
  h.c1 = -2.0 * std::log(lambda) / (h.kappa * h.kappa_prime);
  return h;
}

}  // namespace

TEST(Constants, DefaultConfiguration) {
  const auto k = constants(default_window());
  const auto h = longhand(0.5, 0.8, std::tan(0.5));
  EXPECT_NEAR(k.c, h.c, 1e-13 * h.c);
  EXPECT_NEAR(k.d, h.d, 1e-13 * h.d);
  EXPECT_NEAR(k.kappa, h.kappa, 1e-13 * h.kappa);
  EXPECT_NEAR(k.kappa_prime, h.kappa_prime, 1e-13 * h.kappa_prime);
  EXPECT_NEAR(k.c1, h.c1, 1e-12 * h.c1);
  // printed values, four or five digits
  EXPECT_NEAR(k.c, 7.3219, 1e-4);
  EXPECT_NEAR(k.d, 7.5902, 1e-4);
  EXPECT_NEAR(k.kappa, 1.16533, 1e-5);
  EXPECT_NEAR(k.kappa_prime, 0.10348, 1e-5);
  EXPECT_NEAR(k.c1, 11.497, 1e-3);
}

TEST(Constants, MuNearLambda) {
  const auto k = constants(0.5, 0.5 + 1e-9, 1.0);
  // c = mu / (1 - mu) at m0 = 1
  EXPECT_NEAR(k.c, (0.5 + 1e-9) / (0.5 - 1e-9), 1e-12);
  EXPECT_NEAR(k.c, 1.0 + 4e-9, 1e-12);
}

TEST(Constants, C1Identity) {
  const auto k = constants(0.9, 0.99, 1.0);
  EXPECT_NEAR(k.c1 * k.kappa * k.kappa_prime, 2.0 * std::log(1.0 / 0.9), 1e-15);
}

TEST(Constants, DomainGuards) {
  EXPECT_THROW(constants(0.8, 0.5, 0.5), std::invalid_argument);
  EXPECT_THROW(constants(0.5, 1.0, 0.5), std::invalid_argument);
  EXPECT_THROW(constants(0.5, 0.8, 1.5), std::invalid_argument);
}

TEST(Level, AspectExamples) {
  const auto w = default_window();
  const auto k = constants(w);
  const auto q1 = build_level(1, 1.0, w, k);
  EXPECT_NEAR(q1.aspect, std::sqrt(4.0 + 4.0 * k.c * k.c), 1e-12);
  EXPECT_NEAR(q1.aspect, 14.779, 1e-3);
  EXPECT_NEAR(2 * k.c, 14.644, 1e-3);
  EXPECT_NEAR(2 * k.d, 15.180, 1e-3);
  const auto q2 = build_level(2, 1.0, w, k);
  EXPECT_NEAR(q2.aspect, 29.356, 1e-3);
  EXPECT_LE(4 * k.c, q2.aspect);
  EXPECT_LE(q2.aspect, 4 * k.d);
  ASSERT_EQ(q2.angles.size(), 2u);
  EXPECT_DOUBLE_EQ(q2.angles[1], 0.3);
}

TEST(Level, SizeCap) {
  const auto w = default_window();
  const auto k = constants(w);
  for (int lv = 1; lv <= 12; ++lv) {
    const auto q = build_level(lv, 1e-3, w, k);
    EXPECT_NEAR(q.length(), 1e-3, 1e-18);
    EXPECT_GE(q.length(), 2.0 * q.height());
    EXPECT_TRUE(verify_lemma2(q, k).size_ok);
  }
  EXPECT_THROW(build_level(0, 1.0, w, k), std::invalid_argument);
  EXPECT_THROW(build_level(1, 0.0, w, k), std::invalid_argument);
  EXPECT_THROW(build_level(40, 1.0, default_window(10), k), std::out_of_range);
}

TEST(Lemma2, Examples) {
  const auto w = default_window();
  const auto k = constants(w);
  const auto r1 = verify_lemma2(build_level(1, 1.0, w, k), k);
  EXPECT_NEAR(r1.union_area, r1.rect_area, 1e-15);
  EXPECT_TRUE(r1.pass);

  const auto r3 = verify_lemma2(build_level(3, 1.0, w, k), k, MonteCarlo{1'000'000, 3});
  ASSERT_EQ(r3.pairs.size(), 3u);
  for (const auto& p : r3.pairs) EXPECT_EQ(p.overlap, 0.0);
  EXPECT_GE(r3.union_area, 1.5 * r3.rect_area);
  EXPECT_TRUE(r3.monte_carlo_ok);
  EXPECT_TRUE(r3.pass);

  const auto r8 = verify_lemma2(build_level(8, 1.0, w, k), k);
  EXPECT_GE(r8.union_area, 4.0 * r8.rect_area);
  EXPECT_TRUE(r8.pass);
}

TEST(Lemma2, AspectSandwichForAllLevels) {
  const auto w = default_window(41);
  const auto k = constants(w);
  for (int lv = 1; lv <= 40; ++lv) {
    const auto q = build_level(lv, 1.0, w, k);
    const double s = std::pow(0.5, -lv);
    EXPECT_LE(k.c * s, q.aspect * (1 + 1e-12));
    EXPECT_LE(q.aspect, k.d * s * (1 + 1e-12));
  }
}

TEST(Lemma2, PairsPassThePredicateWithMeasuredDisjointness) {
  const auto w = default_window();
  const auto k = constants(w);
  for (int lv = 2; lv <= 10; ++lv) {
    const auto r = verify_lemma2(build_level(lv, 1.0, w, k), k);
    for (const auto& p : r.pairs) {
      EXPECT_TRUE(p.predicate);
      EXPECT_TRUE(p.disjoint);
      EXPECT_GE(p.tan_gap, p.threshold);
    }
  }
}

TEST(Family, NestedChain) {
  const auto w = default_window();
  const auto k = constants(w);
  const auto one = build_nested_family(1, w, k);
  ASSERT_EQ(one.levels.size(), 1u);
  EXPECT_DOUBLE_EQ(one.levels[0].eps(), 1.0);

  const auto f = build_nested_family(3, w, k);
  ASSERT_EQ(f.levels.size(), 3u);
  EXPECT_NEAR(f.level(2).length(), f.level(1).height(), 1e-15);
  EXPECT_NEAR(f.level(2).length(), 0.06766, 1e-5);
  EXPECT_NEAR(f.level(3).length(), std::min(f.level(2).height(), 0.5), 1e-15);
  EXPECT_TRUE(f.totally_ordered());
  EXPECT_THROW(f.level(4), std::out_of_range);
}

TEST(Family, DiameterShrinks) {
  const auto w = default_window(41);
  const auto k = constants(w);
  const auto f = build_nested_family(kMaxLevels, w, k);
  EXPECT_EQ(f.last(), kMaxLevels);
  for (int kk = 2; kk <= f.last(); ++kk) {
    const auto& q = f.level(kk);
    // in log scale: diam = L sqrt(1 + 1/aspect^2)
    const double log_diam = q.log_length + 0.5 * std::log1p(1.0 / (q.aspect * q.aspect));
    EXPECT_LT(log_diam, -std::log(kk - 1.0));
  }
  EXPECT_THROW(build_nested_family(kMaxLevels + 1, w, k), std::invalid_argument);
}

TEST(Remark, MinimalAspect) {
  const std::vector<double> angles{0.5, 0.3};
  const double need = 2.0 * std::sqrt(1.0 + 1.0 / std::pow(std::tan(0.2), 2));
  EXPECT_NEAR(need, 10.06698, 1e-5);
  EXPECT_NEAR(remark_min_aspect(angles), need, 1e-12);
  const auto f = build_remark_family(1, angles);
  EXPECT_GE(f.level(1).aspect, need);
  EXPECT_GE(f.level(1).aspect, 9.926);
  const auto pairs = half_rect_pairs(f.level(1).normalized(), f.level(1).angles);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].overlap, 0.0);
  EXPECT_THROW(build_remark_family(1, std::vector<double>{0.5, 0.5}), std::invalid_argument);
}

TEST(Remark, SixAnglesAllPairsDisjoint) {
  std::vector<double> angles;
  for (int j = 0; j <= 5; ++j) angles.push_back(0.5 * std::pow(0.6, j));
  const auto f = build_remark_family(5, angles);
  EXPECT_EQ(f.first, 0);
  EXPECT_TRUE(f.totally_ordered());
  const auto pairs = half_rect_pairs(f.level(5).normalized(), f.level(5).angles);
  ASSERT_EQ(pairs.size(), 15u);
  for (const auto& p : pairs) EXPECT_TRUE(p.disjoint);
}

TEST(Prop2, VolumeExamples) {
  const auto w = default_window();
  const auto k = constants(w);
  const auto q1 = build_level(1, 1.0, w, k);
  const auto w1 = witness(q1);
  const auto n1 = q1.normalized();
  EXPECT_NEAR(w1.y_area.value, n1.length() * n1.height(), 1e-15);
  EXPECT_NEAR(w1.theta_area(), pi * n1.height() * n1.height(), 1e-15);
  EXPECT_NEAR(w1.y_area.value / w1.theta_area(), q1.aspect / pi, 1e-12);
  EXPECT_GE(q1.aspect / pi, k.kappa / 0.5);

  const auto q4 = build_level(4, 1.0, w, k);
  const auto c4 = prop2_volume_check(witness(q4), q4, k);
  EXPECT_TRUE(c4.pass);
  EXPECT_GT(c4.slack, 0.0);
}

TEST(Prop2, QuarterDiskIdentity) {
  const auto w = default_window();
  const auto k = constants(w);
  for (int lv = 1; lv <= 10; ++lv) {
    const auto q = build_level(lv, 1.0, w, k);
    const auto wt = witness(q);
    for (const auto& poly : wt.y_set) {
      EXPECT_NEAR(disk_polygon_area(wt.theta_set, poly).value / (0.25 * wt.theta_area()), 1.0, 1e-9);
    }
  }
}

TEST(Prop2, UnionVolumeRatioSandwich) {
  // k |Q_+| <= |Y_k| <= k |Q_k|, so |Y_k| / |Theta_k| lies between k aspect / (2 pi) and k aspect / pi
  const auto w = default_window();
  const auto k = constants(w);
  for (int lv = 1; lv <= 10; ++lv) {
    const auto q = build_level(lv, 1.0, w, k);
    const auto wt = witness(q);
    const double r = wt.y_area.value / wt.theta_area();
    EXPECT_GE(r, lv * q.aspect / (2 * pi) * (1 - 1e-12));
    EXPECT_LE(r, lv * q.aspect / pi * (1 + 1e-12));
  }
}
