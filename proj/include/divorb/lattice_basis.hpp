#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "divorb/matrix.hpp"

namespace divorb {

using RealMatrix = Eigen::MatrixXd;
using IntegerTransform = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>;

// Basis of a lattice in R^n; the rows span the lattice.
class RealLatticeBasis {
 public:
  explicit RealLatticeBasis(RealMatrix rows);

  static RealLatticeBasis from_rational(const RationalMatrix& m);
  static RealLatticeBasis identity(std::size_t n);

  std::size_t dim() const { return static_cast<std::size_t>(rows_.rows()); }
  const RealMatrix& matrix() const { return rows_; }
  double operator()(std::size_t i, std::size_t j) const { return rows_(i, j); }

 private:
  RealMatrix rows_;
};

// LLL-reduced basis together with the unimodular transform that produced it:
// reduced = transform * original, det(transform) = +1.
struct ReducedBasis {
  RealMatrix reduced;
  IntegerTransform transform;
};

ReducedBasis lll_reduce(const RealMatrix& rows, double delta = 0.99);

// Exact integer determinant of a small integer matrix.
long long integer_det(const IntegerTransform& m);
IntegerTransform integer_inverse(const IntegerTransform& unimodular);

// Rows of a and b span the same lattice (b = gamma a with gamma in GL_n(Z)).
bool same_lattice(const RealMatrix& a, const RealMatrix& b, double tol = 1e-7);

// Real lattice with exactly known axis covolumes, e.g. a rational lattice
// moved by a diagonal element.
struct AxisLattice {
  RealLatticeBasis basis;
  std::vector<double> log_covol;
  double tau() const;
};

// Smallest c > 0 with c e_axis in the lattice, found by scanning integer
// multiples up to search_bound; throws IllConditioned when none is found.
double covol_axis(const RealLatticeBasis& basis, std::size_t axis, long long search_bound = 1000000);

}  // namespace divorb
