#include "divorb/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "divorb/cfe.hpp"
#include "divorb/diag_flow.hpp"
#include "divorb/entropy.hpp"
#include "divorb/errors.hpp"
#include "divorb/families.hpp"
#include "divorb/height_metric.hpp"
#include "divorb/measures.hpp"
#include "divorb/parallel.hpp"

namespace divorb {
namespace {

Table verify_header() { return Table{{"lemma", "case", "lhs", "rhs", "margin", "status", "note"}, {}}; }

// lhs <= rhs
void add_check(VerifyResult& r, const std::string& lemma, const std::string& label, double lhs, double rhs,
               const std::string& note = "") {
  const bool ok = lhs <= rhs;
  if (!ok) ++r.violations;
  r.table.add({lemma, label, lhs, rhs, rhs - lhs, std::string(ok ? "ok" : "violation"), note});
}

std::string join(const std::vector<double>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_number(v[i]);
  return s + ")";
}

}  // namespace

std::vector<std::string> verify_registry() {
  return {"totient",     "mass-bound", "no-escape",          "ht-conjugation",     "separation",
          "ball-algebra", "entropy",    "fundamental-domain", "restriction-defect"};
}

VerifyResult verify_totient(long long n_max) {
  const TotientReport rep = totient_equidistribution_check(n_max);
  VerifyResult r{verify_header(), 0};
  for (long long N = 1; N <= n_max; ++N)
    add_check(r, "totient", "N=" + std::to_string(N), rep.worst_by_N[static_cast<std::size_t>(N - 1)],
              std::ldexp(1.0, omega(N)));
  return r;
}

VerifyResult verify_mass_bound(std::size_t n, const std::vector<long long>& qs, const std::vector<double>& Ms,
                               int resolution) {
  VerifyResult r{verify_header(), 0};
  for (long long q : qs) {
    const Family family(q, n);
    const double lq = std::log(static_cast<double>(q));
    const int w = omega(q);
    for (const TimeVector& t : grid_sample(Region::delta(n, lq), resolution)) {
      double hi = t[1];
      for (std::size_t i = 2; i < n; ++i) hi = std::max(hi, t[i]);
      if (lq < 2.0 * w + hi - t[0]) continue;
      const auto heights = parallel_map<double>(family.size(), [&](std::size_t i) {
        try {
          return ht(diag_apply(u_basis(family.at(i)), t));
        } catch (const IllConditioned&) {
          return std::numeric_limits<double>::quiet_NaN();
        }
      });
      for (double M : Ms) {
        std::size_t above = 0, boundary = 0, failed = 0;
        for (double h : heights) {
          if (std::isnan(h))
            ++failed;
          else if (std::abs(h - M) < kHeightBoundaryBand)
            ++boundary;
          else if (h > M)
            ++above;
        }
        std::ostringstream note;
        if (boundary) note << "boundary=" << boundary;
        if (failed) note << (boundary ? ";" : "") << "ill_conditioned=" << failed;
        add_check(r, "mass-bound", "q=" + std::to_string(q) + ";t=" + join(t.values()) + ";M=" + format_number(M),
                  static_cast<double>(above) / static_cast<double>(family.size()),
                  std::pow(4.0, static_cast<double>(n - 1)) / std::pow(M, static_cast<double>(n)), note.str());
      }
    }
  }
  return r;
}

VerifyResult verify_no_escape(std::size_t n, const std::vector<long long>& qs, const std::vector<double>& Ms,
                              int resolution) {
  VerifyResult r{verify_header(), 0};
  const TimeVector w = TimeVector::zero(n);
  for (long long q : qs) {
    const EmpiricalMeasure base = family_measure(Family(q, n));
    const double qd = static_cast<double>(q);
    const std::vector<std::pair<std::string, EmpiricalMeasure>> measures = {
        {"discrete", discrete_line_average(base, w, 1.0, qd)},
        {"continuous", line_average(base, w, 1.0, qd, resolution)},
        {"start", base},
    };
    for (const auto& [kind, mu] : measures) {
      const auto heights = support_heights(mu);
      for (double M : Ms) {
        const MassReport m = mass_above(mu, heights, M);
        std::ostringstream note;
        if (!m.boundary_points.empty()) note << "boundary=" << m.boundary_points.size();
        if (!m.ill_conditioned.empty()) note << "ill_conditioned=" << m.ill_conditioned.size();
        add_check(r, "no-escape", "q=" + std::to_string(q) + ";measure=" + kind + ";M=" + format_number(M), m.mass,
                  std::pow(4.0 / M, static_cast<double>(n)) + 2.0 / resolution, note.str());
      }
    }
  }
  return r;
}

VerifyResult verify_ht_conjugation(std::size_t d, std::size_t trials, std::uint64_t seed, double t_max) {
  VerifyResult r{verify_header(), 0};
  std::mt19937_64 rng(seed);
  const double g_max = 1.0 / (2.0 * static_cast<double>(d));
  std::uniform_real_distribution<double> entry(-g_max, g_max), time(-t_max, t_max);
  const Eigen::Index m = static_cast<Eigen::Index>(d);
  struct Trial {
    RealMatrix g;
    TimeVector t;
  };
  std::vector<Trial> draws;
  for (std::size_t k = 0; k < trials; ++k) {
    RealMatrix g(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) {
        double v = entry(rng);
        while (std::abs(v) >= g_max) v = entry(rng);
        g(i, j) = v;
      }
    std::vector<double> raw(d);
    for (auto& x : raw) x = time(rng);
    TimeVector t = TimeVector::projected(raw);
    double peak = 0;
    for (std::size_t i = 0; i < d; ++i) peak = std::max(peak, std::abs(t[i]));
    if (peak > t_max) t = t * (t_max / peak);
    draws.push_back({std::move(g), std::move(t)});
  }
  const auto results = parallel_map<double>(trials, [&](std::size_t k) {
    return conjugated_height_check(draws[k].g, draws[k].t).height.value;
  });
  for (std::size_t k = 0; k < trials; ++k)
    add_check(r, "ht-conjugation", "d=" + std::to_string(d) + ";trial=" + std::to_string(k), results[k], 2.0);
  return r;
}

VerifyResult verify_separation(std::size_t n, long long q, double eta, const std::vector<double>& Ns,
                               double max_spread, std::vector<SeparationRow>* rows_out) {
  VerifyResult r{verify_header(), 0};
  const Family family(q, n);
  const RealLatticeBasis x = u_basis(family.at(family.size() / 2));
  const TimeVector t = TimeVector::zero(n);
  const double lq = std::log(static_cast<double>(q));
  std::vector<SeparationRow> rows;
  for (double N : Ns) {
    if (N > lq) {
      r.table.add({"separation", "q=" + std::to_string(q) + ";N=" + format_number(N), 0.0, 0.0, 0.0,
                   std::string("skipped"), std::string("N exceeds ln q")});
      continue;
    }
    const std::size_t count = separation_count(q, n, t, x, {eta, N});
    const double scale = std::pow(static_cast<double>(q) / std::exp(N), static_cast<double>(n - 1));
    rows.push_back({N, count, static_cast<double>(count) / scale});
    r.table.add({"separation", "q=" + std::to_string(q) + ";eta=" + format_number(eta) + ";N=" + format_number(N),
                 static_cast<double>(count), scale, scale - static_cast<double>(count), std::string("measured"),
                 "normalized=" + format_number(static_cast<double>(count) / scale)});
  }
  if (!rows.empty()) {
    double lo = rows.front().normalized, hi = lo;
    for (const auto& row : rows) {
      lo = std::min(lo, row.normalized);
      hi = std::max(hi, row.normalized);
    }
    add_check(r, "separation", "spread max/min of normalized counts", lo > 0 ? hi / lo : HUGE_VAL, max_spread);
  }
  if (rows_out) *rows_out = rows;
  return r;
}

VerifyResult verify_ball_algebra(const std::vector<std::size_t>& ns, const std::vector<double>& etas,
                                 const std::vector<double>& Ns, std::size_t samples, std::uint64_t seed) {
  VerifyResult r{verify_header(), 0};
  std::uint64_t stream = seed;
  for (std::size_t n : ns)
    for (double eta : etas)
      for (double N : Ns) {
        const BallAlgebraReport rep = ball_algebra_checks(n, {eta, N}, samples, stream++);
        const std::string label = "n=" + std::to_string(n) + ";eta=" + format_number(eta) + ";N=" + format_number(N);
        add_check(r, "inverse-ball", label + ";first-order", static_cast<double>(rep.inverse_first_order_violations),
                  0.0);
        add_check(r, "inverse-ball", label, static_cast<double>(rep.inverse_violations), 0.0,
                  "worst_radius/eta=" + format_number(rep.worst_inverse_radius));
        add_check(r, "change-center", label, static_cast<double>(rep.change_center_violations), 0.0,
                  "worst_radius/eta=" + format_number(rep.worst_change_center_radius));
      }
  const double R = std::exp(1.0);
  const CoverReport cover = cover_constant_check(2, {1e-3, 0.0}, R, samples, seed);
  add_check(r, "cover-constant", "n=2;R=e;eta=0.001", static_cast<double>(cover.cells_total), cover.bound,
            "cells_used=" + std::to_string(cover.cells_used));
  add_check(r, "cover-constant", "n=2;R=e;eta=0.001;containment", static_cast<double>(cover.containment_violations),
            0.0);
  return r;
}

VerifyResult verify_entropy(std::size_t systems, std::uint64_t seed) {
  VerifyResult r{verify_header(), 0};
  const HarnessReport rep = entropy_inequality_harness(systems, seed);
  const std::string label = "systems=" + std::to_string(systems);
  add_check(r, "entropy-concavity", label, static_cast<double>(rep.concavity_violations), 0.0,
            "worst_margin=" + format_number(rep.worst_concavity_margin));
  add_check(r, "entropy-averaging", label, static_cast<double>(rep.averaging_violations), 0.0,
            "worst_margin=" + format_number(rep.worst_averaging_margin));
  add_check(r, "entropy-monotone", label, static_cast<double>(rep.monotone_violations), 0.0,
            "worst_margin=" + format_number(rep.worst_monotone_margin));
  return r;
}

VerifyResult verify_fundamental_domain(std::size_t n, std::size_t samples, std::uint64_t seed) {
  VerifyResult r{verify_header(), 0};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Region full = Region::delta_full(n), cone = Region::delta(n);
  const Permutation sigma = cyclic_shift(n);
  std::size_t mismatch = 0, overlap = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> t(n);
    double sum = 0;
    for (std::size_t i = 1; i < n; ++i) sum += t[i] = unit(rng);
    t[0] = -sum;
    const TimeVector p = TimeVector::projected(t);
    int covered = 0, strictly = 0;
    for (int i = 0; i < static_cast<int>(n); ++i) {
      const TimeVector image = permute_about_v(p, compose_power(sigma, i), 1.0);
      covered += in_region(image, cone, 0.0);
      strictly += in_region(image, cone, -1e-9);
    }
    if (covered != static_cast<int>(in_region(p, full, 0.0))) ++mismatch;
    if (strictly > 1) ++overlap;
  }
  const std::string label = "n=" + std::to_string(n) + ";samples=" + std::to_string(samples);
  add_check(r, "fundamental-domain", label + ";mismatch-mass", static_cast<double>(mismatch) / samples, 1e-3);
  add_check(r, "fundamental-domain", label + ";interior-overlaps", static_cast<double>(overlap), 0.0);
  return r;
}

VerifyResult verify_restriction_defect(std::size_t n, long long q, const std::vector<double>& Ms, int resolution) {
  VerifyResult r{verify_header(), 0};
  const Family family(q, n);
  const AxisLattice x =
      make_axis_lattice(u_matrix(family.at(family.size() / 2)), v_direction(n) * std::log(static_cast<double>(q)));
  for (double M : Ms) {
    const std::string label = "q=" + std::to_string(q) + ";M=" + format_number(M);
    if (M > x.tau()) {
      r.table.add({"restriction-defect", label, 0.0, 0.0, 0.0, std::string("skipped"), std::string("M exceeds tau")});
      continue;
    }
    const RestrictionDefectReport rep = restriction_defect_check(x, M, resolution);
    add_check(r, "restriction-defect", label, rep.defect, rep.bound + rep.slack,
              "tau=" + format_number(rep.tau) + ";inner=" + format_number(rep.inner) +
                  ";outer=" + format_number(rep.outer));
  }
  return r;
}

std::vector<EquidistRow> equidist(std::size_t n, const std::vector<long long>& qs, int resolution, double R,
                                  double truncation) {
  std::vector<EquidistRow> rows;
  using Clock = std::chrono::steady_clock;
  const long long cap = static_cast<long long>(std::floor(truncation));
  for (long long q : qs) {
    if (n == 2) {
      const auto start = Clock::now();
      const double ks = ks_distance(averaged_nu(q));
      rows.push_back({q, n, "ks_gauss_kuzmin", ks, 0.0, resolution,
                      std::chrono::duration<double, std::milli>(Clock::now() - start).count()});
    }
    const auto start = Clock::now();
    const Family family(q, n);
    const auto grid = grid_sample(Region::delta_full(n, std::log(static_cast<double>(q))), resolution);
    const auto per_point = parallel_map<double>(family.size(), [&](std::size_t i) {
      const RealLatticeBasis x = u_basis(family.at(i));
      std::vector<double> counts;
      counts.reserve(grid.size());
      for (const auto& t : grid) counts.push_back(static_cast<double>(count_sup_ball(diag_apply(x, t), R, cap)));
      return stable_sum(counts) / static_cast<double>(grid.size());
    });
    const double value = stable_sum(per_point) / static_cast<double>(family.size());
    rows.push_back({q, n, "siegel_R" + format_number(R), value, std::pow(2.0 * R, static_cast<double>(n)),
                    resolution, std::chrono::duration<double, std::milli>(Clock::now() - start).count()});
  }
  return rows;
}

Table equidist_table(const std::vector<EquidistRow>& rows, bool with_timing) {
  Table t{{"q", "n", "statistic_name", "value", "reference_value", "abs_deviation", "resolution", "runtime_ms"}, {}};
  for (const auto& r : rows)
    t.add({r.q, static_cast<long long>(r.n), r.statistic, r.value, r.reference, std::abs(r.value - r.reference),
           static_cast<long long>(r.resolution), with_timing ? std::round(r.runtime_ms) : 0.0});
  return t;
}

namespace {
Table census_header() { return Table{{"q", "total", "selected", "log_ratio"}, {}}; }
void add_census(Table& t, const CensusResult& c) {
  t.add({c.q, static_cast<long long>(c.total), static_cast<long long>(c.selected), c.log_ratio});
}
}  // namespace

Table zaremba_table(const std::vector<long long>& qs, long long M) {
  Table t = census_header();
  for (long long q : qs) add_census(t, zaremba_census(q, M));
  return t;
}

Table bounded_orbit_table(std::size_t n, const std::vector<long long>& qs, double M, int resolution) {
  Table t = census_header();
  for (long long q : qs) {
    const Family family(q, n);
    const auto grid = grid_sample(Region::delta_full(n, std::log(static_cast<double>(q))), resolution);
    const auto keep = parallel_map<char>(family.size(), [&](std::size_t i) -> char {
      const RealLatticeBasis x = u_basis(family.at(i));
      for (const auto& time : grid)
        if (ht(diag_apply(x, time)) > M + 1e-9) return 0;
      return 1;
    });
    const std::size_t selected = static_cast<std::size_t>(std::count(keep.begin(), keep.end(), 1));
    double ratio = std::numeric_limits<double>::quiet_NaN();
    if (family.size() > 1)
      ratio = selected == 0 ? -std::numeric_limits<double>::infinity()
                            : std::log(static_cast<double>(selected)) / std::log(static_cast<double>(family.size()));
    add_census(t, {q, family.size(), selected, ratio});
  }
  return t;
}

std::vector<long long> primes_up_to(long long limit) {
  std::vector<long long> out;
  if (limit < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(limit + 1), false);
  for (long long p = 2; p <= limit; ++p) {
    if (composite[p]) continue;
    out.push_back(p);
    for (long long k = p * p; k <= limit; k += p) composite[k] = true;
  }
  return out;
}

}  // namespace divorb
