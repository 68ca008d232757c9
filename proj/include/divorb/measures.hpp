#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "divorb/families.hpp"
#include "divorb/lattice_basis.hpp"
#include "divorb/region.hpp"

namespace divorb {

struct WeightedPoint {
  RealLatticeBasis basis;
  double weight;
};

// Finite weighted sum of point masses on X.
class EmpiricalMeasure {
 public:
  EmpiricalMeasure() = default;
  explicit EmpiricalMeasure(std::vector<WeightedPoint> points);

  void add(RealLatticeBasis basis, double weight);

  const std::vector<WeightedPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double total_weight() const;
  EmpiricalMeasure normalized() const;
  EmpiricalMeasure push_forward(const std::function<RealLatticeBasis(const RealLatticeBasis&)>& map) const;

 private:
  std::vector<WeightedPoint> points_;
};

// Uniform probability on the points u_{p/q} of the family.
EmpiricalMeasure family_measure(const Family& family);

// Each base point x is replaced by x a(t) over grid_sample(region, resolution).
EmpiricalMeasure orbit_average(const EmpiricalMeasure& base, const Region& region, int resolution);

// Continuous average of x a_q(w + s v) over s in [0, r], midpoint rule.
EmpiricalMeasure line_average(const EmpiricalMeasure& base, const TimeVector& w, double r, double q, int resolution);

// Average of x a_q(w) a(k v) over k = 0, ..., floor(r ln q) - 1.
EmpiricalMeasure discrete_line_average(const EmpiricalMeasure& base, const TimeVector& w, double r, double q);

inline constexpr double kHeightBoundaryBand = 1e-6;

struct MassReport {
  double mass = 0;           // ht >= M + band
  double boundary_mass = 0;  // |ht - M| < band, reported apart
  std::vector<std::size_t> boundary_points;
  std::vector<std::size_t> ill_conditioned;
};

// Heights of all support points; NaN where the search was ill-conditioned.
std::vector<double> support_heights(const EmpiricalMeasure& mu);
MassReport mass_above(const EmpiricalMeasure& mu, double M);
MassReport mass_above(const EmpiricalMeasure& mu, const std::vector<double>& heights, double M);

// Number of distinct prime factors.
int omega(long long N);

struct TotientReport {
  long long n_max = 0;
  long long checks = 0;
  long long violations = 0;
  double worst_ratio = 0;  // max |count - alpha phi| / 2^omega
  long long worst_N = 0;
  std::vector<double> worst_by_N;  // entry N-1: max |count - alpha phi(N)|
};

// |#{1 <= m <= alpha N : (m, N) = 1} - alpha phi(N)| <= 2^omega(N) for all
// N <= n_max, checked exactly at every jump alpha = m/N and at the left limit
// of every jump, which are the extremes of the piecewise linear difference.
TotientReport totient_equidistribution_check(long long n_max);

// Nonzero vectors of sup norm <= R, counting stops at cap.
long long count_sup_ball(const RealLatticeBasis& basis, double R, long long cap);
// mu-average of min(cap, count_sup_ball(x, R)).
double siegel_statistic(const EmpiricalMeasure& mu, double R, double truncation = 1000);

// Basis B a(shift) of a rational lattice with its exact log axis covolumes.
AxisLattice make_axis_lattice(const RationalMatrix& basis, const TimeVector& shift);

struct RestrictionDefectReport {
  double tau = 0;
  double inner = 0;   // normalised integral of 1_{ht<=M} over A_x
  double outer = 0;   // same over (1 + M/tau) A_x, divided by the volume of A_x
  double defect = 0;
  double bound = 0;   // n 2^n M / tau
  double slack = 0;   // 2 / resolution
  bool within = false;
};

RestrictionDefectReport restriction_defect_check(const AxisLattice& x, double M, int resolution);

}  // namespace divorb
