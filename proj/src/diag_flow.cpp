#include "divorb/diag_flow.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "divorb/errors.hpp"

namespace divorb {

TimeVector::TimeVector(std::vector<double> values) : values_(std::move(values)) {
  double sum = 0, mass = 1;
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("time vector has a non-finite entry");
    sum += v;
    mass += std::abs(v);
  }
  if (std::abs(sum) > kRegionTolerance * mass) throw std::invalid_argument("time vector does not sum to zero");
}

TimeVector TimeVector::projected(std::vector<double> values) {
  if (values.empty()) return TimeVector(std::move(values));
  double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  for (double& v : values) v -= mean;
  return TimeVector(std::move(values));
}

TimeVector TimeVector::zero(std::size_t n) { return TimeVector(std::vector<double>(n, 0.0)); }

TimeVector TimeVector::operator+(const TimeVector& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<double> v(dim());
  for (std::size_t i = 0; i < dim(); ++i) v[i] = values_[i] + other.values_[i];
  return projected(std::move(v));
}

TimeVector TimeVector::operator-(const TimeVector& other) const { return *this + other * -1.0; }

TimeVector TimeVector::operator*(double c) const {
  std::vector<double> v(values_);
  for (double& x : v) x *= c;
  return projected(std::move(v));
}

TimeVector v_direction(std::size_t n) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  std::vector<double> v(n, 1.0 / static_cast<double>(n));
  v[0] = (1.0 - static_cast<double>(n)) / static_cast<double>(n);
  return TimeVector(std::move(v));
}

Region::Region(Kind kind, std::size_t n, double scale, double width, std::vector<double> lower)
    : kind_(kind), dim_(n), scale_(scale), width_(width), lower_(std::move(lower)) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  if (!(scale > 0) || !std::isfinite(scale)) throw std::invalid_argument("region scale must be positive");
  if (kind == Kind::DeltaS && !(width >= 0)) throw std::invalid_argument("width must be non-negative");
}

Region Region::delta_full(std::size_t n, double scale) { return Region(Kind::DeltaFull, n, scale, 0, {}); }
Region Region::delta(std::size_t n, double scale) { return Region(Kind::Delta, n, scale, 0, {}); }
Region Region::delta_s(std::size_t n, double width, double scale) {
  return Region(Kind::DeltaS, n, scale, width, {});
}

Region Region::axis(std::vector<double> lower) {
  double s = std::accumulate(lower.begin(), lower.end(), 0.0);
  if (s > kRegionTolerance) throw std::invalid_argument("axis region is empty");
  const std::size_t n = lower.size();
  return Region(Kind::Axis, n, 1.0, 0, std::move(lower));
}

Region Region::scaled(double c) const {
  Region r = *this;
  if (!(c > 0)) throw std::invalid_argument("region scale must be positive");
  r.scale_ *= c;
  return r;
}

RealLatticeBasis diag_apply(const RealLatticeBasis& basis, const TimeVector& t) {
  if (basis.dim() != t.dim()) throw std::invalid_argument("dimension mismatch");
  RealMatrix m = basis.matrix();
  for (std::size_t j = 0; j < t.dim(); ++j) m.col(static_cast<Eigen::Index>(j)) *= std::exp(t[j]);
  return RealLatticeBasis(std::move(m));
}

RealLatticeBasis diag_apply_q(const RealLatticeBasis& basis, const TimeVector& t, double q) {
  if (!(q > 0)) throw std::invalid_argument("q must be positive");
  return diag_apply(basis, t * std::log(q));
}

RationalMatrix diag_apply_q_exact(const RationalMatrix& basis, std::span<const long long> exponents, long long q) {
  if (exponents.size() != basis.cols()) throw std::invalid_argument("dimension mismatch");
  if (std::accumulate(exponents.begin(), exponents.end(), 0LL) != 0)
    throw std::invalid_argument("exponents must sum to zero");
  if (q < 1) throw std::invalid_argument("q must be positive");
  RationalMatrix m = basis;
  for (std::size_t j = 0; j < exponents.size(); ++j) {
    BigRational f = pow(BigInt(q), static_cast<unsigned>(std::llabs(exponents[j])));
    if (exponents[j] < 0) f = 1 / f;
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) *= f;
  }
  return m;
}

RealLatticeBasis flow_T(const RealLatticeBasis& basis, double q) {
  return diag_apply_q(basis, v_direction(basis.dim()), q);
}

bool in_region(const TimeVector& t, const Region& region, double tol) {
  if (t.dim() != region.dim()) throw std::invalid_argument("dimension mismatch");
  const std::size_t n = t.dim();
  const double c = region.scale();
  auto u = [&](std::size_t i) { return t[i] / c; };
  if (region.kind() == Region::Kind::Axis) {
    for (std::size_t i = 0; i < n; ++i)
      if (u(i) < region.lower()[i] - tol) return false;
    return true;
  }
  const double t1 = u(0);
  if (t1 > tol || t1 < -1.0 - tol) return false;
  double lo = u(1), hi = u(1);
  for (std::size_t i = 1; i < n; ++i) {
    if (u(i) < -tol) return false;
    lo = std::min(lo, u(i));
    hi = std::max(hi, u(i));
  }
  if (region.kind() == Region::Kind::DeltaFull) return true;
  if (t1 < -1.0 + hi - tol) return false;
  if (region.kind() == Region::Kind::Delta) return true;
  return hi - lo <= region.width() + tol;
}

Interval segment_bounds(const TimeVector& w) {
  const std::size_t n = w.dim();
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  double lo = w[1], hi = w[1];
  for (std::size_t i = 2; i < n; ++i) {
    lo = std::min(lo, w[i]);
    hi = std::max(hi, w[i]);
  }
  Interval r{-static_cast<double>(n) * lo, 1.0 + w[0] - hi};
  if (r.lo > r.hi + kRegionTolerance) throw EmptyInterval("segment through w misses Delta");
  return r;
}

namespace {

// All k in Z_{>=0}^m with sum(k) <= total (or == total), in lexicographic order.
template <class F>
void for_each_composition(std::size_t m, int total, bool exact, F&& fn) {
  std::vector<int> k(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos == m) {
      if (!exact || left == 0) fn(k);
      return;
    }
    if (exact && pos + 1 == m) {
      k[pos] = left;
      fn(k);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      k[pos] = v;
      rec(pos + 1, left - v);
    }
  };
  rec(0, total);
}

}  // namespace

std::vector<TimeVector> grid_sample(const Region& region, int resolution) {
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  const std::size_t n = region.dim();
  const double res = resolution;
  std::vector<TimeVector> out;
  if (region.kind() == Region::Kind::Axis) {
    const auto& b = region.lower();
    double total = -std::accumulate(b.begin(), b.end(), 0.0);
    if (total <= 0) {
      out.push_back(TimeVector::projected(b));
      return out;
    }
    for_each_composition(n, resolution, true, [&](const std::vector<int>& k) {
      std::vector<double> t(n);
      for (std::size_t i = 0; i < n; ++i) t[i] = region.scale() * (b[i] + total * k[i] / res);
      out.push_back(TimeVector::projected(std::move(t)));
    });
    return out;
  }
  for_each_composition(n - 1, resolution, false, [&](const std::vector<int>& k) {
    std::vector<double> t(n, 0.0);
    for (std::size_t i = 1; i < n; ++i) t[i] = region.scale() * k[i - 1] / res;
    TimeVector p = TimeVector::projected([&] {
      double s = 0;
      for (std::size_t i = 1; i < n; ++i) s += t[i];
      t[0] = -s;
      return t;
    }());
    if (region.kind() == Region::Kind::DeltaFull || in_region(p, region)) out.push_back(std::move(p));
  });
  return out;
}

double region_volume(const Region& region, int resolution) {
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  const std::size_t n = region.dim();
  std::vector<double> lo(n, 0.0);
  double width = region.scale();
  if (region.kind() == Region::Kind::Axis) {
    const auto& b = region.lower();
    width = -std::accumulate(b.begin(), b.end(), 0.0) * region.scale();
    for (std::size_t i = 0; i < n; ++i) lo[i] = b[i] * region.scale();
  }
  if (width <= 0) return 0.0;
  const double h = width / resolution;
  long long count = 0;
  std::vector<int> k(n - 1, 0);
  for (;;) {
    std::vector<double> t(n);
    double s = 0;
    for (std::size_t i = 1; i < n; ++i) {
      t[i] = lo[i] + h * (k[i - 1] + 0.5);
      s += t[i];
    }
    t[0] = -s;
    if (in_region(TimeVector::projected(t), region, 0.0)) ++count;
    std::size_t pos = 0;
    while (pos < n - 1 && ++k[pos] == resolution) k[pos++] = 0;
    if (pos == n - 1) break;
  }
  return static_cast<double>(count) * std::pow(h, static_cast<double>(n - 1));
}

TimeVector Segment::point(double r) const { return base + v_direction(base.dim()) * r; }

std::vector<Segment> nu_s_decomposition(std::size_t n, double width, int resolution) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  if (resolution < 1) throw std::invalid_argument("resolution must be positive");
  if (!(width >= 0)) throw std::invalid_argument("width must be non-negative");
  std::vector<Segment> out;
  const std::size_t free = n - 2;
  for (std::size_t facet = 1; facet < n; ++facet) {
    std::vector<int> k(free, 0);
    for (;;) {
      std::vector<double> t(n, 0.0);
      std::size_t pos = 0;
      double s = 0;
      for (std::size_t i = 1; i < n; ++i) {
        if (i == facet) continue;
        t[i] = width * (k[pos++] + 0.5) / resolution;
        s += t[i];
      }
      t[0] = -s;
      TimeVector w(std::move(t));
      double hi = 0;
      for (std::size_t i = 1; i < n; ++i) hi = std::max(hi, w[i]);
      double length = 1.0 + w[0] - hi;
      if (length > 1e-12) out.push_back({w, length, length});
      std::size_t c = 0;
      while (c < free && ++k[c] == resolution) k[c++] = 0;
      if (c == free) break;
    }
  }
  double total = 0;
  for (const auto& seg : out) total += seg.weight;
  for (auto& seg : out) seg.weight /= total;
  return out;
}

Permutation cyclic_shift(std::size_t n) {
  Permutation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

Permutation compose_power(const Permutation& sigma, int power) {
  const std::size_t n = sigma.size();
  Permutation out(n);
  std::iota(out.begin(), out.end(), 0);
  if (power < 0) {
    Permutation inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[sigma[i]] = i;
    return compose_power(inv, -power);
  }
  for (int p = 0; p < power; ++p) {
    Permutation next(n);
    for (std::size_t i = 0; i < n; ++i) next[i] = sigma[out[i]];
    out = next;
  }
  return out;
}

int permutation_sign(const Permutation& sigma) {
  int sign = 1;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) sign = -sign;
  return sign;
}

namespace {
void check_permutation(const Permutation& sigma, std::size_t n) {
  if (sigma.size() != n) throw std::invalid_argument("permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (std::size_t v : sigma) {
    if (v >= n || seen[v]) throw std::invalid_argument("not a permutation");
    seen[v] = true;
  }
}
}  // namespace

RealLatticeBasis permute(const RealLatticeBasis& basis, const Permutation& sigma) {
  const std::size_t n = basis.dim();
  check_permutation(sigma, n);
  RealMatrix m(n, n);
  for (std::size_t j = 0; j < n; ++j) m.col(j) = basis.matrix().col(sigma[j]);
  if (permutation_sign(sigma) < 0) m.row(0) *= -1.0;
  return RealLatticeBasis(std::move(m));
}

TimeVector permute(const TimeVector& t, const Permutation& sigma) {
  check_permutation(sigma, t.dim());
  std::vector<double> v(t.dim());
  for (std::size_t j = 0; j < t.dim(); ++j) v[j] = t[sigma[j]];
  return TimeVector(std::move(v));
}

TimeVector permute_about_v(const TimeVector& t, const Permutation& sigma, double scale) {
  TimeVector centre = v_direction(t.dim()) * scale;
  return permute(t - centre, sigma) + centre;
}

}  // namespace divorb
