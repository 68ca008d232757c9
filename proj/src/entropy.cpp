#include "divorb/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "divorb/diag_flow.hpp"
#include "divorb/parallel.hpp"

namespace divorb {

double shannon_entropy(std::span<const double> probabilities) {
  std::vector<double> terms;
  terms.reserve(probabilities.size());
  for (double p : probabilities) {
    if (p < 0) throw std::invalid_argument("negative probability");
    if (p > 0) terms.push_back(-p * std::log(p));
  }
  return stable_sum(terms);
}

namespace {

double entropy_of(const std::map<std::vector<std::size_t>, double>& classes) {
  std::vector<double> w;
  w.reserve(classes.size());
  for (const auto& [key, mass] : classes) w.push_back(mass);
  const double total = stable_sum(w);
  if (!(total > 0)) throw std::invalid_argument("measure has zero mass");
  for (double& x : w) x /= total;
  return shannon_entropy(w);
}

}  // namespace

EntropyReport empirical_entropy(const EmpiricalMeasure& mu, const Partition& partition, int m, double q) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  const auto itineraries = parallel_map<std::vector<std::size_t>>(mu.size(), [&](std::size_t i) {
    std::vector<std::size_t> labels;
    RealLatticeBasis x = mu.points()[i].basis;
    for (int step = 0; step < m; ++step) {
      labels.push_back(partition.label(x));
      if (step + 1 < m) x = flow_T(x, q);
    }
    return labels;
  });
  std::map<std::vector<std::size_t>, double> classes;
  std::vector<double> residual;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    classes[itineraries[i]] += mu.points()[i].weight;
    const auto& it = itineraries[i];
    if (std::find(it.begin(), it.end(), partition.residual_label()) != it.end())
      residual.push_back(mu.points()[i].weight);
  }
  EntropyReport rep;
  rep.m = m;
  rep.H = entropy_of(classes);
  rep.H_over_m = rep.H / m;
  rep.itineraries = classes.size();
  rep.residual_mass = stable_sum(residual) / mu.total_weight();
  return rep;
}

std::vector<double> push_forward(const FiniteSystem& sys, std::span<const double> mu) {
  std::vector<double> out(mu.size(), 0.0);
  for (std::size_t x = 0; x < mu.size(); ++x) out[sys.map[x]] += mu[x];
  return out;
}

double itinerary_entropy(const FiniteSystem& sys, std::span<const double> mu, int m) {
  if (m < 1) throw std::invalid_argument("m must be positive");
  if (mu.size() != sys.map.size()) throw std::invalid_argument("measure does not match the system");
  std::map<std::vector<std::size_t>, double> classes;
  for (std::size_t x = 0; x < mu.size(); ++x) {
    if (mu[x] <= 0) continue;
    std::vector<std::size_t> key;
    std::size_t y = x;
    for (int i = 0; i < m; ++i) {
      key.push_back(sys.labels[y]);
      y = sys.map[y];
    }
    classes[key] += mu[x];
  }
  return entropy_of(classes);
}

namespace {

std::vector<double> random_probability(std::size_t size, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::bernoulli_distribution keep(0.7);
  std::vector<double> p(size, 0.0);
  for (auto& x : p)
    if (keep(rng)) x = e(rng);
  if (std::accumulate(p.begin(), p.end(), 0.0) <= 0) p[0] = 1.0;
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& x : p) x /= total;
  return p;
}

FiniteSystem random_system(std::mt19937_64& rng, bool bijective) {
  const std::size_t size = std::uniform_int_distribution<std::size_t>(2, 50)(rng);
  FiniteSystem sys;
  sys.atoms = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(size, 6))(rng);
  sys.map.resize(size);
  sys.labels.resize(size);
  if (bijective) {
    std::iota(sys.map.begin(), sys.map.end(), 0);
    std::shuffle(sys.map.begin(), sys.map.end(), rng);
  } else {
    std::uniform_int_distribution<std::size_t> state(0, size - 1);
    for (auto& s : sys.map) s = state(rng);
  }
  std::uniform_int_distribution<std::size_t> atom(0, sys.atoms - 1);
  for (auto& l : sys.labels) l = atom(rng);
  return sys;
}

}  // namespace

HarnessReport entropy_inequality_harness(std::size_t systems, std::uint64_t seed, double tol) {
  std::mt19937_64 rng(seed);
  HarnessReport rep;
  rep.systems = systems;
  rep.worst_concavity_margin = rep.worst_averaging_margin = rep.worst_monotone_margin =
      std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < systems; ++s) {
    const FiniteSystem sys = random_system(rng, false);
    const std::size_t size = sys.map.size();

    const std::size_t parts = std::uniform_int_distribution<std::size_t>(1, 5)(rng);
    const int depth = std::uniform_int_distribution<int>(1, 4)(rng);
    const auto coeffs = random_probability(parts, rng);
    std::vector<double> mix(size, 0.0);
    double rhs = 0;
    for (std::size_t c = 0; c < parts; ++c) {
      const auto component = random_probability(size, rng);
      for (std::size_t x = 0; x < size; ++x) mix[x] += coeffs[c] * component[x];
      if (coeffs[c] > 0) rhs += coeffs[c] * itinerary_entropy(sys, component, depth);
    }
    const double concavity = itinerary_entropy(sys, mix, depth) - rhs;
    rep.worst_concavity_margin = std::min(rep.worst_concavity_margin, concavity);
    if (concavity < -tol) ++rep.concavity_violations;

    const int k = std::uniform_int_distribution<int>(1, 12)(rng);
    const int m = std::uniform_int_distribution<int>(1, k)(rng);
    const auto mu = random_probability(size, rng);
    std::vector<double> averaged(size, 0.0), moved = mu;
    for (int i = 0; i < k; ++i) {
      for (std::size_t x = 0; x < size; ++x) averaged[x] += moved[x] / k;
      moved = push_forward(sys, moved);
    }
    const double lhs = itinerary_entropy(sys, averaged, m) / m;
    const double bound = itinerary_entropy(sys, mu, k) / k -
                         static_cast<double>(m) / k * std::log(static_cast<double>(sys.atoms));
    rep.worst_averaging_margin = std::min(rep.worst_averaging_margin, lhs - bound);
    if (lhs - bound < -tol) ++rep.averaging_violations;

    const FiniteSystem perm = random_system(rng, true);
    const std::vector<double> uniform(perm.map.size(), 1.0 / static_cast<double>(perm.map.size()));
    double previous = itinerary_entropy(perm, uniform, 1);
    for (int depth_m = 2; depth_m <= 8; ++depth_m) {
      const double current = itinerary_entropy(perm, uniform, depth_m) / depth_m;
      rep.worst_monotone_margin = std::min(rep.worst_monotone_margin, previous - current);
      if (current > previous + tol) ++rep.monotone_violations;
      previous = current;
    }
  }
  return rep;
}

}  // namespace divorb
