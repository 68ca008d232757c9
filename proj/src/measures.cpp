#include "divorb/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "divorb/diag_flow.hpp"
#include "divorb/errors.hpp"
#include "divorb/height_metric.hpp"
#include "divorb/parallel.hpp"

namespace divorb {

EmpiricalMeasure::EmpiricalMeasure(std::vector<WeightedPoint> points) : points_(std::move(points)) {
  for (const auto& p : points_)
    if (!(p.weight >= 0) || !std::isfinite(p.weight)) throw std::invalid_argument("weights must be non-negative");
}

void EmpiricalMeasure::add(RealLatticeBasis basis, double weight) {
  if (!(weight >= 0) || !std::isfinite(weight)) throw std::invalid_argument("weights must be non-negative");
  points_.push_back({std::move(basis), weight});
}

double EmpiricalMeasure::total_weight() const {
  std::vector<double> w;
  w.reserve(points_.size());
  for (const auto& p : points_) w.push_back(p.weight);
  return stable_sum(w);
}

EmpiricalMeasure EmpiricalMeasure::normalized() const {
  const double total = total_weight();
  if (!(total > 0)) throw std::invalid_argument("measure has zero mass");
  EmpiricalMeasure out = *this;
  for (auto& p : out.points_) p.weight /= total;
  return out;
}

EmpiricalMeasure EmpiricalMeasure::push_forward(
    const std::function<RealLatticeBasis(const RealLatticeBasis&)>& map) const {
  EmpiricalMeasure out;
  out.points_.reserve(points_.size());
  for (const auto& p : points_) out.points_.push_back({map(p.basis), p.weight});
  return out;
}

EmpiricalMeasure family_measure(const Family& family) {
  EmpiricalMeasure mu;
  const double w = 1.0 / static_cast<double>(family.size());
  family.for_each([&](const FamilyPoint& p) { mu.add(u_basis(p), w); });
  return mu;
}

EmpiricalMeasure orbit_average(const EmpiricalMeasure& base, const Region& region, int resolution) {
  const auto grid = grid_sample(region, resolution);
  EmpiricalMeasure out;
  const double share = 1.0 / static_cast<double>(grid.size());
  for (const auto& p : base.points())
    for (const auto& t : grid) out.add(diag_apply(p.basis, t), p.weight * share);
  return out;
}

EmpiricalMeasure line_average(const EmpiricalMeasure& base, const TimeVector& w, double r, double q,
                              int resolution) {
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  if (!(r > 0)) throw std::invalid_argument("line length must be positive");
  const TimeVector v = v_direction(w.dim());
  EmpiricalMeasure out;
  const double share = 1.0 / resolution;
  for (const auto& p : base.points())
    for (int k = 0; k < resolution; ++k) {
      const double s = r * (k + 0.5) / resolution;
      out.add(diag_apply_q(p.basis, w + v * s, q), p.weight * share);
    }
  return out;
}

EmpiricalMeasure discrete_line_average(const EmpiricalMeasure& base, const TimeVector& w, double r, double q) {
  const long long steps = static_cast<long long>(std::floor(r * std::log(q)));
  if (steps < 1) throw std::invalid_argument("floor(r ln q) must be positive");
  const TimeVector v = v_direction(w.dim());
  EmpiricalMeasure out;
  const double share = 1.0 / static_cast<double>(steps);
  for (const auto& p : base.points()) {
    const RealLatticeBasis start = diag_apply_q(p.basis, w, q);
    for (long long k = 0; k < steps; ++k) out.add(diag_apply(start, v * static_cast<double>(k)), p.weight * share);
  }
  return out;
}

std::vector<double> support_heights(const EmpiricalMeasure& mu) {
  return parallel_map<double>(mu.size(), [&](std::size_t i) {
    try {
      return ht(mu.points()[i].basis);
    } catch (const IllConditioned&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  });
}

MassReport mass_above(const EmpiricalMeasure& mu, const std::vector<double>& heights, double M) {
  if (heights.size() != mu.size()) throw std::invalid_argument("height list does not match the measure");
  const double total = mu.total_weight();
  if (!(total > 0)) throw std::invalid_argument("measure has zero mass");
  MassReport rep;
  std::vector<double> above, boundary;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    const double h = heights[i];
    const double w = mu.points()[i].weight / total;
    if (std::isnan(h)) {
      rep.ill_conditioned.push_back(i);
    } else if (std::abs(h - M) < kHeightBoundaryBand) {
      rep.boundary_points.push_back(i);
      boundary.push_back(w);
    } else if (h > M) {
      above.push_back(w);
    }
  }
  rep.mass = stable_sum(above);
  rep.boundary_mass = stable_sum(boundary);
  return rep;
}

MassReport mass_above(const EmpiricalMeasure& mu, double M) { return mass_above(mu, support_heights(mu), M); }

int omega(long long N) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  int count = 0;
  for (long long p = 2; p * p <= N; ++p) {
    if (N % p != 0) continue;
    ++count;
    while (N % p == 0) N /= p;
  }
  return count + (N > 1 ? 1 : 0);
}

TotientReport totient_equidistribution_check(long long n_max) {
  if (n_max < 1) throw std::invalid_argument("n_max must be positive");
  std::vector<long long> smallest(static_cast<std::size_t>(n_max + 1), 0);
  for (long long p = 2; p <= n_max; ++p)
    if (smallest[p] == 0)
      for (long long k = p; k <= n_max; k += p)
        if (smallest[k] == 0) smallest[k] = p;
  TotientReport rep;
  rep.n_max = n_max;
  rep.worst_by_N.assign(static_cast<std::size_t>(n_max), 0.0);
  for (long long N = 1; N <= n_max; ++N) {
    std::vector<long long> primes;
    for (long long m = N; m > 1; m /= smallest[m])
      if (primes.empty() || primes.back() != smallest[m]) primes.push_back(smallest[m]);
    long long phi = N;
    for (long long p : primes) phi -= phi / p;
    const long long allowance = N * (1LL << primes.size());
    long long coprime = 0;
    auto record = [&](long long scaled_diff) {
      ++rep.checks;
      const long long a = std::llabs(scaled_diff);
      if (a > allowance) ++rep.violations;
      double& slot = rep.worst_by_N[static_cast<std::size_t>(N - 1)];
      slot = std::max(slot, static_cast<double>(a) / static_cast<double>(N));
      const double ratio = static_cast<double>(a) / static_cast<double>(allowance);
      if (ratio > rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.worst_N = N;
      }
    };
    for (long long m = 0; m <= N; ++m) {
      if (m > 0) {
        bool unit = true;
        for (long long p : primes)
          if (m % p == 0) {
            unit = false;
            break;
          }
        if (unit) ++coprime;
      }
      // alpha = m/N, and alpha -> (m+1)/N from below
      record(N * coprime - m * phi);
      if (m < N) record(N * coprime - (m + 1) * phi);
    }
  }
  return rep;
}

long long count_sup_ball(const RealLatticeBasis& basis, double R, long long cap) {
  if (!(R > 0)) throw std::invalid_argument("radius must be positive");
  const ReducedBasis rb = lll_reduce(basis.matrix());
  const Eigen::Index n = rb.reduced.rows();
  const RealMatrix inv = rb.reduced.inverse();
  std::vector<long long> bound(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double b = R * inv.col(j).cwiseAbs().sum() * (1 + 1e-12) + 1e-9;
    if (b > 1e7) throw IllConditioned("ball count box too large");
    bound[j] = static_cast<long long>(std::floor(b));
  }
  long long count = 0;
  std::vector<long long> k(n);
  for (Eigen::Index j = 0; j < n; ++j) k[j] = -bound[j];
  for (;;) {
    Eigen::RowVectorXd v = Eigen::RowVectorXd::Zero(n);
    bool zero = true;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (k[j] != 0) zero = false;
      v += static_cast<double>(k[j]) * rb.reduced.row(j);
    }
    if (!zero && v.cwiseAbs().maxCoeff() <= R * (1 + 1e-12))
      if (++count >= cap) return cap;
    Eigen::Index j = 0;
    while (j < n && ++k[j] > bound[j]) k[j] = -bound[j], ++j;
    if (j == n) break;
  }
  return count;
}

double siegel_statistic(const EmpiricalMeasure& mu, double R, double truncation) {
  const double total = mu.total_weight();
  if (!(total > 0)) throw std::invalid_argument("measure has zero mass");
  const long long cap = static_cast<long long>(std::floor(truncation));
  const auto terms = parallel_map<double>(mu.size(), [&](std::size_t i) {
    return mu.points()[i].weight / total * static_cast<double>(count_sup_ball(mu.points()[i].basis, R, cap));
  });
  return stable_sum(terms);
}

AxisLattice make_axis_lattice(const RationalMatrix& basis, const TimeVector& shift) {
  std::vector<double> logs(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) logs[i] = log_of(covol_axis(basis, i)) + shift[i];
  return {diag_apply(RealLatticeBasis::from_rational(basis), shift), std::move(logs)};
}

RestrictionDefectReport restriction_defect_check(const AxisLattice& x, double M, int resolution) {
  const std::size_t n = x.basis.dim();
  RestrictionDefectReport rep;
  rep.tau = x.tau();
  if (!(M > 0) || rep.tau < M) throw std::invalid_argument("requires 0 < M <= tau");
  std::vector<double> inner_bounds(n), outer_bounds(n);
  for (std::size_t i = 0; i < n; ++i) {
    inner_bounds[i] = -x.log_covol[i];
    outer_bounds[i] = -x.log_covol[i] - M;
  }
  auto fraction = [&](const std::vector<double>& bounds) {
    const auto grid = grid_sample(Region::axis(bounds), resolution);
    const auto hits = parallel_map<double>(grid.size(), [&](std::size_t i) {
      return ht(diag_apply(x.basis, grid[i])) <= M + 1e-9 ? 1.0 : 0.0;
    });
    return stable_sum(hits) / static_cast<double>(grid.size());
  };
  rep.inner = fraction(inner_bounds);
  rep.outer = std::pow((rep.tau + M) / rep.tau, static_cast<double>(n - 1)) * fraction(outer_bounds);
  rep.defect = std::abs(rep.outer - rep.inner);
  rep.bound = static_cast<double>(n) * std::pow(2.0, static_cast<double>(n)) * M / rep.tau;
  rep.slack = 2.0 / resolution;
  rep.within = rep.defect <= rep.bound + rep.slack;
  return rep;
}

}  // namespace divorb
