#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "divorb/lattice_basis.hpp"
#include "divorb/matrix.hpp"
#include "divorb/region.hpp"

namespace divorb {

// x a(t): scales column i of the basis by e^{t_i}.
RealLatticeBasis diag_apply(const RealLatticeBasis& basis, const TimeVector& t);
// x a_q(t): scales column i by q^{t_i}.
RealLatticeBasis diag_apply_q(const RealLatticeBasis& basis, const TimeVector& t, double q);
// Exact variant for integral exponents summing to zero.
RationalMatrix diag_apply_q_exact(const RationalMatrix& basis, std::span<const long long> exponents, long long q);

// One step of the flow T(x) = x a_q(v).
RealLatticeBasis flow_T(const RealLatticeBasis& basis, double q);

bool in_region(const TimeVector& t, const Region& region, double tol = kRegionTolerance);

struct Interval {
  double lo;
  double hi;
  double length() const { return hi - lo; }
};

// Range of r with w + r v inside Delta.
Interval segment_bounds(const TimeVector& w);

// Vertex-inclusive barycentric grid; every point lies in the region.
std::vector<TimeVector> grid_sample(const Region& region, int resolution);

// Lebesgue volume in the coordinates (t_2, ..., t_n), estimated by counting
// cell midpoints of a grid aligned with the region's bounding box.
double region_volume(const Region& region, int resolution);

struct Segment {
  TimeVector base;
  double length;
  double weight;
  TimeVector point(double r) const;
};

// Foliation of Delta_s by segments in direction v, based on the face
// min_{i>=2} t_i = 0, weighted by length; weights sum to 1.
std::vector<Segment> nu_s_decomposition(std::size_t n, double width, int resolution);

// sigma as the image list (sigma(0), ..., sigma(n-1)).
using Permutation = std::vector<std::size_t>;

Permutation cyclic_shift(std::size_t n);
Permutation compose_power(const Permutation& sigma, int power);
int permutation_sign(const Permutation& sigma);

// Coordinate permutation of the lattice: column j of the result is column
// sigma(j) of the input; row 0 is negated when sigma is odd so det is kept.
RealLatticeBasis permute(const RealLatticeBasis& basis, const Permutation& sigma);
TimeVector permute(const TimeVector& t, const Permutation& sigma);
// Permutation of time coordinates about the centre scale * v; this is the
// action induced on orbit times by permuting symmetrized representatives.
TimeVector permute_about_v(const TimeVector& t, const Permutation& sigma, double scale);

}  // namespace divorb
