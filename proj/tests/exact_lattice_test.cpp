#include "divorb/exact_lattice.hpp"

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "divorb/errors.hpp"
#include "generators.hpp"

namespace divorb {
namespace {

using testing::det_oracle;
using testing::random_nonsingular;
using testing::random_unimodular;
using testing::rng_for;

// v in the row span of a lower-triangular HNF basis, by back substitution.
bool member(const IntMatrix& hnf, std::vector<BigInt> v) {
  const std::size_t n = hnf.rows();
  for (std::size_t c = n; c-- > 0;) {
    if (v[c] % hnf(c, c) != 0) return false;
    const BigInt k = v[c] / hnf(c, c);
    for (std::size_t j = 0; j <= c; ++j) v[j] -= k * hnf(c, j);
  }
  return true;
}

std::vector<BigInt> row(const IntMatrix& m, std::size_t i) {
  std::vector<BigInt> r;
  for (std::size_t j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
  return r;
}

BigInt gcd_big(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}

// d_k = gcd of all k x k minors; elementary divisors are d_k / d_{k-1}.
TypeVector smith_oracle(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<BigInt> d(n + 1, 0);
  d[0] = 1;
  for (unsigned mask_r = 1; mask_r < (1u << n); ++mask_r)
    for (unsigned mask_c = 1; mask_c < (1u << n); ++mask_c) {
      const int k = __builtin_popcount(mask_r);
      if (k != __builtin_popcount(mask_c)) continue;
      IntMatrix sub(k, k);
      std::size_t a = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!(mask_r >> i & 1)) continue;
        std::size_t b = 0;
        for (std::size_t j = 0; j < n; ++j)
          if (mask_c >> j & 1) sub(a, b++) = m(i, j);
        ++a;
      }
      d[k] = gcd_big(d[k], det_oracle(sub));
    }
  TypeVector out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(d[k] / d[k - 1]);
  return out;
}

TEST(HermiteNormalForm, SameLatticeFromDifferentGenerators) {
  const IntegerLattice a(IntMatrix{{1, 1}, {0, 2}});
  const IntegerLattice b(IntMatrix{{1, -1}, {2, 0}});
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.index(), 2);
  EXPECT_EQ(a.basis(), (IntMatrix{{2, 0}, {1, 1}}));
}

TEST(HermiteNormalForm, SingularInputThrows) {
  EXPECT_THROW(IntegerLattice(IntMatrix{{1, 2}, {2, 4}}), Singular);
}

TEST(HermiteNormalForm, CanonicalShapeAndUnimodularInvariance) {
  auto rng = rng_for(11);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const IntMatrix m = random_nonsingular(rng, n, 9);
    const IntegerLattice L(m);
    const IntMatrix& h = L.basis();
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_GT(h(i, i), 0);
      for (std::size_t j = i + 1; j < n; ++j) EXPECT_EQ(h(i, j), 0);
      for (std::size_t j = 0; j < i; ++j) {
        EXPECT_GE(h(i, j), 0);
        EXPECT_LT(h(i, j), h(j, j));
      }
    }
    BigInt det = det_oracle(m);
    EXPECT_EQ(L.index(), det < 0 ? BigInt(-det) : det);
    for (std::size_t i = 0; i < n; ++i) EXPECT_TRUE(member(h, row(m, i)));
    const IntMatrix moved = random_unimodular(rng, n) * m;
    EXPECT_EQ(IntegerLattice(moved), L);
    EXPECT_EQ(hermite_normal_form(h), h);
  }
}

TEST(SmithType, Example) {
  EXPECT_EQ(smith_type(IntMatrix{{2, 0}, {1, 1}}), (TypeVector{1, 2}));
}

TEST(SmithType, MatchesDeterminantalDivisors) {
  auto rng = rng_for(12);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const IntMatrix m = random_nonsingular(rng, n, 12);
    const TypeVector t = smith_type(m);
    EXPECT_EQ(t, smith_oracle(m));
    BigInt product = 1;
    for (std::size_t i = 0; i < t.size(); ++i) {
      product *= t[i];
      if (i + 1 < t.size()) EXPECT_EQ(t[i + 1] % t[i], 0);
    }
    EXPECT_EQ(product, IntegerLattice(m).index());
  }
}

TEST(SmithType, QuotientOfExampleIsCyclicOfOrderTwo) {
  // Z^2 / L for L spanned by (2,0), (1,1): cosets represented in [0,2) x [0,1].
  const IntMatrix h = IntegerLattice(IntMatrix{{2, 0}, {1, 1}}).basis();
  std::set<std::pair<long long, long long>> cosets;
  for (long long x = -4; x <= 4; ++x)
    for (long long y = -4; y <= 4; ++y) {
      std::vector<BigInt> v{x, y};
      BigInt k = v[1] / h(1, 1);
      v[0] -= k * h(1, 0);
      long long r = static_cast<long long>(v[0] % 2);
      cosets.insert({(r + 2) % 2, 0});
    }
  EXPECT_EQ(cosets.size(), 2u);
  EXPECT_TRUE(member(h, {1, 1}));
  EXPECT_FALSE(member(h, {1, 0}));
}

TEST(AxisPrimitive, ExampleIsAlreadyPrimitive) {
  const IntegerLattice L(IntMatrix{{2, 0}, {1, 1}});
  EXPECT_EQ(axis_primitive_rep(L), L);
}

TEST(AxisPrimitive, IdempotentAndProjectionsAreZ) {
  auto rng = rng_for(13);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const IntegerLattice rep = axis_primitive_rep(IntegerLattice(random_nonsingular(rng, n, 20)));
    EXPECT_EQ(axis_primitive_rep(rep), rep);
    for (std::size_t j = 0; j < n; ++j) {
      BigInt g = 0;
      for (std::size_t i = 0; i < n; ++i) g = gcd_big(g, rep.basis()(i, j));
      EXPECT_EQ(g, 1);
    }
  }
}

TEST(OrbitInvariants, InvariantUnderDiagonalScaling) {
  auto rng = rng_for(14);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const IntMatrix m = random_nonsingular(rng, n, 10);
    RationalMatrix scaled = to_rational(m);
    for (std::size_t j = 0; j < n; ++j) {
      const BigRational c(testing::uniform_int(rng, 1, 7), testing::uniform_int(rng, 1, 7));
      for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= c;
    }
    EXPECT_EQ(orbit_invariants(IntegerLattice(m)), orbit_invariants(scaled));
    EXPECT_EQ(orbit_invariants(IntegerLattice(random_unimodular(rng, n) * m)), orbit_invariants(IntegerLattice(m)));
  }
}

TEST(OrbitInvariants, FamilyMemberInDimensionThree) {
  // q Z^3 + Z (1, 2, 3) at q = 5
  const IntegerLattice L(IntMatrix{{1, 2, 3}, {0, 5, 0}, {0, 0, 5}});
  const OrbitInvariants inv = orbit_invariants(L);
  EXPECT_EQ(inv.discriminant, 25);
  EXPECT_EQ(inv.type, (TypeVector{1, 5, 5}));
}

// Smallest c >= 1 with c e_axis in L, by direct membership search.
BigInt covol_oracle(const IntegerLattice& L, std::size_t axis) {
  for (long long c = 1;; ++c) {
    std::vector<BigInt> v(L.dim(), 0);
    v[axis] = c;
    if (member(L.basis(), v)) return c;
  }
}

TEST(CovolAxis, IntegralExample) {
  const IntegerLattice L(IntMatrix{{2, 0}, {1, 1}});
  EXPECT_EQ(covol_axis(L, 0), 2);
  // (0, 1) = (1, 1) - (1/2)(2, 0) is not in L; (0, 2) is.
  EXPECT_EQ(covol_axis(L, 1), 2);
  EXPECT_EQ(covol_oracle(L, 1), 2);
}

TEST(CovolAxis, RationalUnipotent) {
  RationalMatrix u = RationalMatrix::identity(2);
  u(0, 1) = BigRational(1, 2);
  EXPECT_EQ(covol_axis(u, 0), BigRational(2));
  EXPECT_EQ(covol_axis(u, 1), BigRational(1));
  EXPECT_NEAR(tau(u), std::log(2.0) / 2, 1e-15);
}

TEST(CovolAxis, MatchesMembershipSearch) {
  auto rng = rng_for(15);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const IntegerLattice L(random_nonsingular(rng, n, 6));
    for (std::size_t i = 0; i < n; ++i) EXPECT_EQ(covol_axis(L, i), covol_oracle(L, i));
  }
}

TEST(ARegion, IntegralExample) {
  const Region r = a_region(to_rational(IntMatrix{{2, 0}, {1, 1}}));
  ASSERT_EQ(r.kind(), Region::Kind::Axis);
  EXPECT_DOUBLE_EQ(r.lower()[0], -std::log(2.0));
  EXPECT_DOUBLE_EQ(r.lower()[1], -std::log(2.0));
}

TEST(LogOf, HugeRationals) {
  const BigRational big(pow(BigInt(10), 400), 3);
  EXPECT_NEAR(log_of(big), 400 * std::log(10.0) - std::log(3.0), 1e-9);
}

}  // namespace
}  // namespace divorb
