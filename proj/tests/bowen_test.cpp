#include <cmath>

#include <gtest/gtest.h>

#include "divorb/diag_flow.hpp"
#include "divorb/errors.hpp"
#include "divorb/families.hpp"
#include "divorb/height_metric.hpp"
#include "generators.hpp"

namespace divorb {
namespace {

using testing::random_unimodular;
using testing::random_unit_covolume;
using testing::rng_for;
using testing::to_transform;

RealMatrix elementary(std::size_t n, std::size_t i, std::size_t j, double v) {
  RealMatrix m = RealMatrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) += v;
  return m;
}

TEST(BoxRadius, WeightsFirstRow) {
  RealMatrix w = RealMatrix::Zero(2, 2);
  w(0, 1) = 0.01;
  EXPECT_NEAR(box_radius(w, 1.0), 0.01 * std::exp(1.0), 1e-15);
  w(1, 0) = 0.05;
  EXPECT_NEAR(box_radius(w, 1.0), 0.05, 1e-15);
}

TEST(Bowen, CenterIsInItsBall) {
  const RealLatticeBasis g(RealMatrix::Identity(2, 2));
  const auto m = bowen_contains(g, g, {0.05, 1.0});
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ(m->radius, 0.0);
  EXPECT_TRUE(m->gamma == IntegerTransform::Identity(2, 2));
}

TEST(Bowen, Examples) {
  const double eta = 0.05, N = 2.0;
  const RealMatrix g = RealMatrix::Identity(2, 2);
  const RealLatticeBasis lower(g * elementary(2, 1, 0, 0.5 * eta));
  EXPECT_TRUE(bowen_contains(RealLatticeBasis(g), lower, {eta, N}).has_value());
  const RealLatticeBasis upper(g * elementary(2, 0, 1, 2 * eta * std::exp(-N)));
  EXPECT_FALSE(bowen_contains(RealLatticeBasis(g), upper, {eta, N}).has_value());
  EXPECT_TRUE(bowen_contains(RealLatticeBasis(g), upper, {3 * eta, N}).has_value());
}

TEST(Bowen, FindsWitnessThroughGammaAction) {
  auto rng = rng_for(41);
  const double eta = 0.02;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const double N = testing::uniform_real(rng, 0, 3);
    const RealMatrix g = random_unit_covolume(rng, n);
    RealMatrix W(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        W(i, j) = testing::uniform_real(rng, -0.9, 0.9) * eta * (i == 0 && j > 0 ? std::exp(-N) : 1.0);
    const IntegerTransform gamma0 = to_transform(random_unimodular(rng, n));
    const RealMatrix h = gamma0.cast<double>() * g * (RealMatrix::Identity(n, n) + W);
    const auto m = bowen_contains(RealLatticeBasis(g), RealLatticeBasis(h), {eta, N});
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ(integer_det(m->gamma), 1);
    const RealMatrix found = g.inverse() * m->gamma.cast<double>() * h - RealMatrix::Identity(n, n);
    EXPECT_LE(box_radius(found, N), eta * (1 + 1e-9));
    EXPECT_LE(m->radius, box_radius(W, N) * (1 + 1e-9));
  }
}

TEST(Bowen, AllMatchesAreWithinCap) {
  const RealLatticeBasis g = symmetrized_rep({11, {3}});
  const auto matches = bowen_matches(g, g, 0.0, 1.5);
  ASSERT_FALSE(matches.empty());
  EXPECT_EQ(matches.front().radius, 0.0);
  for (std::size_t i = 1; i < matches.size(); ++i) EXPECT_LE(matches[i - 1].radius, matches[i].radius);
  for (const auto& m : matches) EXPECT_LE(m.radius, 1.5 * (1 + 1e-12));
}

TEST(BallAlgebra, NoViolations) {
  for (std::size_t n : {2u, 3u}) {
    const BallAlgebraReport r = ball_algebra_checks(n, {1e-3, 2.0}, 2000, 5);
    EXPECT_EQ(r.inverse_first_order_violations, 0u);
    EXPECT_EQ(r.inverse_violations, 0u);
    EXPECT_EQ(r.change_center_violations, 0u);
    EXPECT_LE(r.worst_inverse_radius, 1.5);
  }
}

TEST(CoverConstant, CellsBelowBound) {
  const CoverReport r = cover_constant_check(2, {1e-3, 1.0}, std::exp(1.0), 1000, 3);
  EXPECT_LE(static_cast<double>(r.cells_used), r.bound);
  EXPECT_EQ(r.containment_violations, 0u);
}

TEST(Separation, CountsOnAndOffOrbit) {
  const long long q = 101;
  const TimeVector t = TimeVector::zero(2);
  const BowenBallSpec spec{0.05, 1.0};
  const FamilyPoint mid = Family(q, 2).at(50);
  EXPECT_GE(separation_count(q, 2, t, u_basis(mid), spec), 1u);
  RealMatrix hex(2, 2);
  const double s = std::sqrt(2.0 / std::sqrt(3.0));
  hex << s, 0, s / 2, s * std::sqrt(3.0) / 2;
  EXPECT_EQ(separation_count(q, 2, t, RealLatticeBasis(hex), spec), 0u);
}

TEST(Partition, LabelsAreConsistent) {
  const long long q = 53;
  const Family f(q, 2);
  std::vector<RealLatticeBasis> samples;
  f.for_each([&](const FamilyPoint& p) {
    samples.push_back(diag_apply_q(u_basis(p), v_direction(2) * 0.5, static_cast<double>(q)));
  });
  const BowenBallSpec spec{0.05, 1.0};
  const double M = 3.0;
  const Partition part = build_partition(M, spec, samples);
  EXPECT_GT(part.centre_count(), 0u);
  for (const auto& x : samples) {
    const std::size_t label = part.label(x);
    ASSERT_LT(label, part.atom_count());
    if (ht(x) > M) {
      EXPECT_EQ(label, 0u);
    } else {
      ASSERT_NE(label, 0u);
      ASSERT_NE(label, part.residual_label());
      EXPECT_TRUE(bowen_contains(part.centres()[label - 1], x, spec).has_value());
    }
  }
}

}  // namespace
}  // namespace divorb
