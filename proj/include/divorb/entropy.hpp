#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "divorb/height_metric.hpp"
#include "divorb/measures.hpp"

namespace divorb {

// -sum p ln p over positive entries.
double shannon_entropy(std::span<const double> probabilities);

struct EntropyReport {
  double H = 0;
  double H_over_m = 0;
  int m = 0;
  std::size_t itineraries = 0;
  double residual_mass = 0;  // mass whose itinerary meets the residual atom
};

// Entropy of the partition refined along m steps of T(x) = x a_q(v).
EntropyReport empirical_entropy(const EmpiricalMeasure& mu, const Partition& partition, int m, double q);

// Map S on {0, ..., size-1} with a labelling into `atoms` classes.
struct FiniteSystem {
  std::vector<std::size_t> map;
  std::vector<std::size_t> labels;
  std::size_t atoms = 0;
};

std::vector<double> push_forward(const FiniteSystem& sys, std::span<const double> mu);
// H_mu of the itinerary partition over steps 0, ..., m-1.
double itinerary_entropy(const FiniteSystem& sys, std::span<const double> mu, int m);

struct HarnessReport {
  std::size_t systems = 0;
  std::size_t concavity_violations = 0;
  std::size_t averaging_violations = 0;
  std::size_t monotone_violations = 0;
  double worst_concavity_margin = 0;  // smallest lhs - rhs seen
  double worst_averaging_margin = 0;
  double worst_monotone_margin = 0;
};

// Random systems with at most 50 states and k <= 12 steps. Checks
//   H_nu(P) >= sum_x c_x H_{nu_x}(P)  for nu = sum c_x nu_x,
//   (1/m) H_{mu^k}(P^m) >= (1/k) H_mu(P^k) - (m/k) ln |P|  with mu^k = (1/k) sum_{i<k} S^i mu,
//   H_mu(P^m)/m non-increasing in m for S-invariant mu (S a permutation, mu uniform).
HarnessReport entropy_inequality_harness(std::size_t systems, std::uint64_t seed, double tol = 1e-9);

}  // namespace divorb
