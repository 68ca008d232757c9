#include "divorb/families.hpp"

#include <cmath>
#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "divorb/diag_flow.hpp"
#include "divorb/exact_lattice.hpp"
#include "divorb/lattice_basis.hpp"
#include "generators.hpp"

namespace divorb {
namespace {

long long phi_oracle(long long q) {
  long long c = 0;
  for (long long m = 1; m <= q; ++m) c += std::gcd(m, q) == 1;
  return c;
}

TEST(EulerPhi, MatchesGcdCount) {
  for (long long q = 1; q <= 2000; ++q) ASSERT_EQ(euler_phi(q), phi_oracle(q)) << q;
}

TEST(Family, EnumeratedSizeDimensionTwo) {
  for (long long q = 2; q <= 10000; ++q) {
    const Family f(q, 2);
    std::size_t count = 0;
    long long previous = 0;
    f.for_each([&](const FamilyPoint& p) {
      EXPECT_GT(p.residues[0], previous);
      previous = p.residues[0];
      ++count;
    });
    ASSERT_EQ(count, static_cast<std::size_t>(phi_oracle(q))) << q;
  }
}

TEST(Family, EnumeratedSizeDimensionThree) {
  for (long long q = 2; q <= 200; ++q) {
    const Family f(q, 3);
    std::size_t count = 0;
    std::vector<long long> previous;
    f.for_each([&](const FamilyPoint& p) {
      EXPECT_TRUE(previous.empty() || previous < p.residues);
      for (long long r : p.residues) EXPECT_EQ(std::gcd(r, q), 1);
      previous = p.residues;
      ++count;
    });
    const long long phi = phi_oracle(q);
    ASSERT_EQ(count, static_cast<std::size_t>(phi * phi)) << q;
  }
}

TEST(Family, AtAgreesWithForEach) {
  const Family f(12, 3);
  std::size_t index = 0;
  f.for_each([&](const FamilyPoint& p) { EXPECT_EQ(f.at(index++).residues, p.residues); });
  EXPECT_EQ(index, f.size());
}

TEST(Family, PointsAreDistinctLattices) {
  for (long long q : {7, 12, 15})
    for (std::size_t n : {2u, 3u}) {
      const Family f(q, n);
      std::set<std::string> seen;
      f.for_each([&](const FamilyPoint& p) {
        std::ostringstream key;
        const IntMatrix& b = integral_lattice(p).basis();
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) key << b(i, j) << ',';
        seen.insert(key.str());
      });
      EXPECT_EQ(seen.size(), f.size());
    }
}

TEST(Family, InvariantsOfEveryPoint) {
  for (std::size_t n : {2u, 3u})
    for (long long q = 2; q <= 50; ++q) {
      const Family f(q, n);
      TypeVector expected{1};
      for (std::size_t i = 1; i < n; ++i) expected.push_back(q);
      const BigInt disc = pow(BigInt(q), static_cast<unsigned>(n - 1));
      f.for_each([&](const FamilyPoint& p) {
        const OrbitInvariants inv = orbit_invariants(u_matrix(p));
        ASSERT_EQ(inv.discriminant, disc);
        ASSERT_EQ(inv.type, expected);
      });
    }
}

TEST(Family, ARegionIsScaledFullSimplex) {
  for (std::size_t n : {2u, 3u, 4u})
    for (long long q : {2, 5, 9, 101}) {
      if (n == 4 && q > 9) continue;
      const Family f(q, n);
      const FamilyPoint p = f.at(f.size() / 2);
      const RationalMatrix u = u_matrix(p);
      EXPECT_EQ(covol_axis(u, 0), BigRational(q));
      for (std::size_t i = 1; i < n; ++i) EXPECT_EQ(covol_axis(u, i), BigRational(1));
      const Region r = a_region(u);
      EXPECT_DOUBLE_EQ(r.lower()[0], -std::log(static_cast<double>(q)));
      for (std::size_t i = 1; i < n; ++i) EXPECT_DOUBLE_EQ(r.lower()[i], 0.0);
      EXPECT_NEAR(tau(u), std::log(static_cast<double>(q)) / static_cast<double>(n), 1e-14);
    }
}

TEST(SymmetrizedRep, ExampleAtQFour) {
  const RealLatticeBasis s = symmetrized_rep({4, {1}});
  // Z (1/2, 1/2) + 2 Z^2
  EXPECT_TRUE(same_lattice(s.matrix(), (RealMatrix(2, 2) << 0.5, 0.5, 0, 2).finished()));
  EXPECT_NEAR(std::abs(s.matrix().determinant()), 1.0, 1e-12);
}

TEST(SymmetrizedRep, EqualAxisCovolumesAndPermutationClosure) {
  for (std::size_t n : {2u, 3u})
    for (long long q : {5, 7, 11}) {
      const Family f(q, n);
      const double expected = std::pow(static_cast<double>(q), 1.0 / static_cast<double>(n));
      std::vector<RealLatticeBasis> reps;
      f.for_each([&](const FamilyPoint& p) { reps.push_back(symmetrized_rep(p)); });
      for (const auto& s : reps) {
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(covol_axis(s, i), expected, 1e-9 * expected);
        const RealLatticeBasis moved = permute(s, cyclic_shift(n));
        bool found = false;
        for (const auto& other : reps) found = found || same_lattice(moved.matrix(), other.matrix());
        EXPECT_TRUE(found);
      }
    }
}

TEST(SymmetrizedRep, IsUMovedAlongV) {
  const FamilyPoint p{13, {5, 8}};
  const double lnq = std::log(13.0);
  const RealLatticeBasis moved = diag_apply(u_basis(p), v_direction(3) * lnq);
  EXPECT_TRUE(same_lattice(moved.matrix(), symmetrized_rep(p).matrix()));
}

TEST(Census, TrivialPredicates) {
  const Family f(11, 2);
  const CensusResult all = census(f, [](const FamilyPoint&) { return true; });
  EXPECT_EQ(all.selected, 10u);
  EXPECT_DOUBLE_EQ(all.log_ratio, 1.0);
  const CensusResult none = census(f, [](const FamilyPoint&) { return false; });
  EXPECT_TRUE(std::isinf(none.log_ratio) && none.log_ratio < 0);
  const CensusResult one = census(Family(2, 2), [](const FamilyPoint&) { return true; });
  EXPECT_TRUE(std::isnan(one.log_ratio));
}

}  // namespace
}  // namespace divorb
