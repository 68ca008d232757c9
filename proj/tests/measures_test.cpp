#include "divorb/measures.hpp"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "divorb/diag_flow.hpp"
#include "divorb/families.hpp"
#include "divorb/height_metric.hpp"
#include "generators.hpp"

namespace divorb {
namespace {

// Direct count of the coprime m <= alpha N minus alpha phi(N).
double totient_gap(long long N, double alpha) {
  long long count = 0, phi = 0;
  for (long long m = 1; m <= N; ++m) {
    if (std::gcd(m, N) != 1) continue;
    ++phi;
    if (static_cast<double>(m) <= alpha * static_cast<double>(N) + 1e-12) ++count;
  }
  return static_cast<double>(count) - alpha * static_cast<double>(phi);
}

TEST(Totient, ExampleAtSix) {
  EXPECT_NEAR(totient_gap(6, 0.5), 0.0, 1e-12);
  EXPECT_EQ(omega(6), 2);
  EXPECT_EQ(omega(1), 0);
  EXPECT_EQ(omega(2 * 2 * 3 * 7 * 7 * 11), 4);
}

TEST(Totient, JumpEvaluationMatchesDenseScan) {
  const TotientReport r = totient_equidistribution_check(120);
  EXPECT_EQ(r.violations, 0);
  for (long long N = 1; N <= 120; ++N) {
    double dense = 0;
    for (int k = 0; k <= 20000; ++k) dense = std::max(dense, std::abs(totient_gap(N, k / 20000.0)));
    const double exact = r.worst_by_N[static_cast<std::size_t>(N - 1)];
    EXPECT_GE(exact + 1e-9, dense) << N;
    EXPECT_LE(exact, dense + static_cast<double>(euler_phi(N)) / 20000.0 + 1e-9) << N;
    EXPECT_LE(exact, std::pow(2.0, omega(N))) << N;
  }
}

TEST(EmpiricalMeasure, OrbitAverageShape) {
  const Family f(11, 2);
  const EmpiricalMeasure base = family_measure(f);
  EXPECT_EQ(base.size(), 10u);
  const EmpiricalMeasure avg = orbit_average(base, Region::delta_full(2, std::log(11.0)), 8);
  EXPECT_EQ(avg.size(), 10u * 9u);
  EXPECT_NEAR(avg.total_weight(), 1.0, 1e-12);
}

TEST(EmpiricalMeasure, OrbitStaysInAxisCovolumeRange) {
  // Along ln(q) Delta_full every coordinate covolume of u_{p/q} a(t) is >= 1.
  for (std::size_t n : {2u, 3u}) {
    const long long q = n == 2 ? 11 : 5;
    const Family f(q, n);
    const auto times = grid_sample(Region::delta_full(n, std::log(static_cast<double>(q))), 6);
    f.for_each([&](const FamilyPoint& p) {
      const RealLatticeBasis u = u_basis(p);
      for (const auto& t : times) {
        const RealLatticeBasis x = diag_apply(u, t);
        for (std::size_t i = 0; i < n; ++i) EXPECT_GE(covol_axis(x, i, 10000), 1 - 1e-9);
      }
    });
  }
}

TEST(LineAverage, ShortSegmentIsNearStart) {
  const long long q = 7;
  const EmpiricalMeasure base = family_measure(Family(q, 2));
  const TimeVector w({-0.25, 0.25});
  const EmpiricalMeasure avg = line_average(base, w, 1e-9, 7.0, 1);
  ASSERT_EQ(avg.size(), base.size());
  for (std::size_t i = 0; i < avg.size(); ++i) {
    const RealMatrix expected = diag_apply_q(base.points()[i].basis, w, 7.0).matrix();
    EXPECT_LT((avg.points()[i].basis.matrix() - expected).cwiseAbs().maxCoeff(), 1e-8);
  }
}

TEST(LineAverage, DiscreteStepCount) {
  const EmpiricalMeasure base = family_measure(Family(101, 2));
  const EmpiricalMeasure d = discrete_line_average(base, TimeVector::zero(2), 1.0, 101.0);
  EXPECT_EQ(d.size(), base.size() * static_cast<std::size_t>(std::floor(std::log(101.0))));
  EXPECT_NEAR(d.total_weight(), 1.0, 1e-12);
}

TEST(MassAbove, BoundaryIsReportedApart) {
  EmpiricalMeasure mu;
  mu.add(RealLatticeBasis::identity(2), 1.0);
  const MassReport r = mass_above(mu, 1.0);
  EXPECT_EQ(r.mass, 0.0);
  EXPECT_EQ(r.boundary_mass, 1.0);
  RealMatrix m(2, 2);
  m << 0.25, 0, 0, 4;
  mu.add(RealLatticeBasis(m), 1.0);
  EXPECT_NEAR(mass_above(mu.normalized(), 2.0).mass, 0.5, 1e-15);
}

TEST(Siegel, StandardLatticeCount) {
  EXPECT_EQ(count_sup_ball(RealLatticeBasis::identity(2), 1.5, 1000), 8);
  EXPECT_EQ(count_sup_ball(RealLatticeBasis::identity(3), 1.0, 1000), 26);
  EXPECT_EQ(count_sup_ball(RealLatticeBasis::identity(2), 10.0, 5), 5);
  EmpiricalMeasure mu;
  mu.add(RealLatticeBasis::identity(2), 1.0);
  EXPECT_DOUBLE_EQ(siegel_statistic(mu, 1.5), 8.0);
}

TEST(Siegel, MatchesBruteCountOnRandomLattices) {
  auto rng = testing::rng_for(51);
  for (int trial = 0; trial < 30; ++trial) {
    const RealMatrix b = testing::random_unit_covolume(rng, 2);
    long long brute = 0;
    for (int a = -40; a <= 40; ++a)
      for (int c = -40; c <= 40; ++c) {
        if (a == 0 && c == 0) continue;
        const Eigen::RowVectorXd v = a * b.row(0) + c * b.row(1);
        brute += v.cwiseAbs().maxCoeff() <= 1.5;
      }
    EXPECT_EQ(count_sup_ball(RealLatticeBasis(b), 1.5, 100000), brute);
  }
}

TEST(AxisLattice, LogCovolumesMatchSearch) {
  const RationalMatrix u = u_matrix({9, {2, 5}});
  const AxisLattice x = make_axis_lattice(u, TimeVector({0.3, -0.1, -0.2}));
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(std::log(covol_axis(x.basis, i)), x.log_covol[i], 1e-9);
  EXPECT_NEAR(x.tau(), std::log(9.0) / 3, 1e-12);
}

TEST(RestrictionDefect, WithinBound) {
  const FamilyPoint p = Family(1009, 2).at(400);
  const AxisLattice x = make_axis_lattice(u_matrix(p), v_direction(2) * std::log(1009.0));
  for (double M : {1.5, 3.0}) {
    const RestrictionDefectReport r = restriction_defect_check(x, M, 128);
    EXPECT_TRUE(r.within) << M;
    EXPECT_LE(r.inner, 1 + 1e-12);
  }
}

}  // namespace
}  // namespace divorb
