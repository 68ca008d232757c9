#pragma once

#include <utility>
#include <vector>

#include "divorb/families.hpp"

namespace divorb {

// Reduced fraction p/q with q > 0.
struct Fraction {
  long long p;
  long long q;
  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

Fraction make_fraction(long long p, long long q);
bool operator<(const Fraction& a, const Fraction& b);

// T(x) = 1/x - floor(1/x) on (0, 1].
Fraction gauss_map(const Fraction& x);

// Partial quotients of x in (0, 1]; the last one is at least 2 unless x = 1.
std::vector<long long> cfe_of_rational(const Fraction& x);

// Finitely supported probability on [0, 1], atoms sorted and merged.
class DiscreteMeasure {
 public:
  DiscreteMeasure() = default;
  explicit DiscreteMeasure(std::vector<std::pair<Fraction, double>> atoms);
  const std::vector<std::pair<Fraction, double>>& atoms() const { return atoms_; }

 private:
  std::vector<std::pair<Fraction, double>> atoms_;
};

// Uniform measure on x, T x, ..., T^{len-1} x.
DiscreteMeasure nu_pq(const Fraction& x);
// (1/phi(q)) sum over units p of nu_{p/q}.
DiscreteMeasure averaged_nu(long long q);

double gauss_kuzmin_cdf(double x);
double gauss_kuzmin_quantile(double u);

// Sup of |empirical CDF - Gauss-Kuzmin CDF|, evaluated on both sides of every atom.
double ks_distance(const DiscreteMeasure& mu);
// Same distance for an arbitrary sorted list of weighted points on [0, 1].
double ks_distance(const std::vector<std::pair<double, double>>& sorted_atoms);

// True when the canonical expansion [.., a] or its variant [.., a - 1, 1]
// has all partial quotients <= M.
bool zaremba_bounded(const std::vector<long long>& quotients, long long M);

// |{p unit mod q : p/q has an expansion bounded by M}| against phi(q).
CensusResult zaremba_census(long long q, long long M);

}  // namespace divorb
