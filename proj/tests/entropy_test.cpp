#include "divorb/entropy.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "divorb/diag_flow.hpp"
#include "divorb/families.hpp"
#include "divorb/height_metric.hpp"

namespace divorb {
namespace {

TEST(Shannon, UniformAndPoint) {
  const std::vector<double> uniform(8, 0.125);
  EXPECT_NEAR(shannon_entropy(uniform), std::log(8.0), 1e-15);
  const std::vector<double> point{0.0, 1.0, 0.0};
  EXPECT_EQ(shannon_entropy(point), 0.0);
}

TEST(Itinerary, IdentityMapDoesNotRefine) {
  const FiniteSystem sys{{0, 1, 2, 3}, {0, 0, 1, 1}, 2};
  const std::vector<double> mu(4, 0.25);
  for (int m = 1; m <= 4; ++m) EXPECT_NEAR(itinerary_entropy(sys, mu, m), std::log(2.0), 1e-15);
}

TEST(Itinerary, CycleSeparatesAllStates) {
  // 4-cycle with two labels: after two steps every state has its own itinerary.
  const FiniteSystem sys{{1, 2, 3, 0}, {0, 0, 1, 1}, 2};
  const std::vector<double> mu(4, 0.25);
  EXPECT_NEAR(itinerary_entropy(sys, mu, 2), std::log(4.0), 1e-15);
  const std::vector<double> pushed = push_forward(sys, mu);
  for (double p : pushed) EXPECT_NEAR(p, 0.25, 1e-15);
}

TEST(Harness, NoViolations) {
  const HarnessReport r = entropy_inequality_harness(300, 17);
  EXPECT_EQ(r.systems, 300u);
  EXPECT_EQ(r.concavity_violations, 0u);
  EXPECT_EQ(r.averaging_violations, 0u);
  EXPECT_EQ(r.monotone_violations, 0u);
}

TEST(Empirical, FlowPartitionHasPositiveEntropy) {
  const long long q = 101;
  const Family f(q, 2);
  EmpiricalMeasure mu;
  f.for_each([&](const FamilyPoint& p) { mu.add(symmetrized_rep(p), 1.0); });
  mu = mu.normalized();
  std::vector<RealLatticeBasis> samples;
  for (const auto& w : mu.points()) samples.push_back(w.basis);
  const Partition part = build_partition(10.0, {0.02, 0.0}, samples);
  const EntropyReport r = empirical_entropy(mu, part, 2, static_cast<double>(q));
  EXPECT_GT(r.H_over_m, 0.0);
  EXPECT_LE(r.H, 2 * std::log(static_cast<double>(part.atom_count())) + 1e-12);
  EXPECT_LE(r.H, std::log(static_cast<double>(f.size())) + 1e-12);
}

}  // namespace
}  // namespace divorb
