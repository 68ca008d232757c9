#pragma once

#include <cstddef>
#include <vector>

#include "divorb/matrix.hpp"
#include "divorb/region.hpp"

namespace divorb {

// Full-rank sublattice of Z^n, stored in canonical Hermite normal form:
// lower triangular, positive pivots, and 0 <= b(j,i) < b(i,i) for j > i.
class IntegerLattice {
 public:
  explicit IntegerLattice(const IntMatrix& generators);

  std::size_t dim() const { return basis_.rows(); }
  const IntMatrix& basis() const { return basis_; }
  BigInt index() const;

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
    return a.basis_ == b.basis_;
  }

 private:
  IntMatrix basis_;
};

using TypeVector = std::vector<BigInt>;

struct OrbitInvariants {
  BigInt discriminant;
  TypeVector type;
  friend bool operator==(const OrbitInvariants&, const OrbitInvariants&) = default;
};

IntMatrix hermite_normal_form(IntMatrix basis);

// Elementary divisors in ascending order, each dividing the next.
TypeVector smith_type(const IntMatrix& basis);
TypeVector smith_type(const IntegerLattice& lattice);

// Divides coordinate i by the generator of the projection of the lattice to
// axis i, so every projection becomes Z.
IntegerLattice axis_primitive_rep(const IntegerLattice& lattice);

OrbitInvariants orbit_invariants(const IntegerLattice& lattice);
OrbitInvariants orbit_invariants(const RationalMatrix& basis);

// Smallest positive multiple of the rational basis that is integral.
IntegerLattice clear_denominators(const RationalMatrix& basis);

RationalMatrix inverse(const RationalMatrix& m);

// Length of the shortest nonzero lattice vector on coordinate axis i.
BigRational covol_axis(const RationalMatrix& basis, std::size_t axis);
BigInt covol_axis(const IntegerLattice& lattice, std::size_t axis);

// Mean of the log axis covolumes.
double tau(const RationalMatrix& basis);

// {t : t_i >= -ln covol(L, i)} inside the sum-zero hyperplane.
Region a_region(const RationalMatrix& basis);

double log_of(const BigRational& x);

}  // namespace divorb
