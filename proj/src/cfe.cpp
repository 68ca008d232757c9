#include "divorb/cfe.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace divorb {

Fraction make_fraction(long long p, long long q) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  if (q < 0) p = -p, q = -q;
  const long long g = std::gcd(p, q);
  return {p / g, q / g};
}

bool operator<(const Fraction& a, const Fraction& b) {
  return static_cast<__int128>(a.p) * b.q < static_cast<__int128>(b.p) * a.q;
}

namespace {
void require_unit_interval(const Fraction& x) {
  if (x.q <= 0 || x.p <= 0 || x.p > x.q) throw std::invalid_argument("fraction must lie in (0, 1]");
}
}  // namespace

Fraction gauss_map(const Fraction& x) {
  require_unit_interval(x);
  return make_fraction(x.q % x.p, x.p);
}

std::vector<long long> cfe_of_rational(const Fraction& x) {
  require_unit_interval(x);
  std::vector<long long> out;
  long long p = x.p, q = x.q;
  while (p != 0) {
    out.push_back(q / p);
    const long long r = q % p;
    q = p;
    p = r;
  }
  return out;
}

DiscreteMeasure::DiscreteMeasure(std::vector<std::pair<Fraction, double>> atoms) {
  std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& a : atoms) {
    if (a.second < 0) throw std::invalid_argument("negative weight");
    if (!atoms_.empty() && atoms_.back().first == a.first)
      atoms_.back().second += a.second;
    else
      atoms_.push_back(a);
  }
}

DiscreteMeasure nu_pq(const Fraction& x) {
  std::vector<Fraction> orbit;
  for (Fraction y = x; y.p != 0; y = gauss_map(y)) orbit.push_back(y);
  std::vector<std::pair<Fraction, double>> atoms;
  for (const auto& y : orbit) atoms.emplace_back(y, 1.0 / static_cast<double>(orbit.size()));
  return DiscreteMeasure(std::move(atoms));
}

DiscreteMeasure averaged_nu(long long q) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  const auto units = unit_residues(q);
  std::vector<std::pair<Fraction, double>> atoms;
  for (long long p : units) {
    if (p == q) continue;
    const DiscreteMeasure orbit = nu_pq(make_fraction(p, q));
    for (const auto& a : orbit.atoms())
      atoms.emplace_back(a.first, a.second / static_cast<double>(units.size()));
  }
  return DiscreteMeasure(std::move(atoms));
}

double gauss_kuzmin_cdf(double x) {
  if (x <= 0) return 0;
  if (x >= 1) return 1;
  return std::log1p(x) / std::log(2.0);
}

double gauss_kuzmin_quantile(double u) { return std::exp2(std::clamp(u, 0.0, 1.0)) - 1.0; }

double ks_distance(const std::vector<std::pair<double, double>>& sorted_atoms) {
  double total = 0;
  for (const auto& a : sorted_atoms) total += a.second;
  if (!(total > 0)) throw std::invalid_argument("measure has zero mass");
  double cumulative = 0, worst = 0;
  for (const auto& [x, w] : sorted_atoms) {
    const double g = gauss_kuzmin_cdf(x);
    worst = std::max(worst, std::abs(cumulative / total - g));
    cumulative += w;
    worst = std::max(worst, std::abs(cumulative / total - g));
  }
  return worst;
}

double ks_distance(const DiscreteMeasure& mu) {
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(mu.atoms().size());
  for (const auto& a : mu.atoms()) atoms.emplace_back(a.first.value(), a.second);
  return ks_distance(atoms);
}

bool zaremba_bounded(const std::vector<long long>& quotients, long long M) {
  if (quotients.empty()) throw std::invalid_argument("empty expansion");
  for (std::size_t i = 0; i + 1 < quotients.size(); ++i)
    if (quotients[i] > M) return false;
  const long long last = quotients.back();
  return last <= M || (last - 1 <= M && 1 <= M);
}

CensusResult zaremba_census(long long q, long long M) {
  if (q < 2) throw std::invalid_argument("q must be at least 2");
  if (M < 1) throw std::invalid_argument("M must be positive");
  return census(Family(q, 2), [&](const FamilyPoint& p) {
    return zaremba_bounded(cfe_of_rational(make_fraction(p.residues[0], q)), M);
  });
}

}  // namespace divorb
