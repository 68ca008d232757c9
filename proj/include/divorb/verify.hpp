#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "divorb/table.hpp"

namespace divorb {

struct VerifyResult {
  Table table;  // columns: lemma, case, lhs, rhs, margin, status, note
  std::size_t violations = 0;
};

VerifyResult verify_totient(long long n_max);

// Fraction of the family with ht >= M at times t in ln(q) Delta obeying
// ln q >= 2 omega(q) + max_{i>=2} t_i - t_1, against 4^{n-1} / M^n.
VerifyResult verify_mass_bound(std::size_t n, const std::vector<long long>& qs, const std::vector<double>& Ms,
                               int resolution);

// Mass above M of the line averages from w = 0 with r = 1 (discrete and
// continuous) and of the family itself, against (4/M)^n + 2/resolution.
VerifyResult verify_no_escape(std::size_t n, const std::vector<long long>& qs, const std::vector<double>& Ms,
                              int resolution);

VerifyResult verify_ht_conjugation(std::size_t d, std::size_t trials, std::uint64_t seed, double t_max = 10.0);

struct SeparationRow {
  double N;
  std::size_t count;
  double normalized;  // count / (q / e^N)^{n-1}
};

// Counts around the middle family point at t = 0; the last row of the table
// compares the spread max/min of the normalised counts with max_spread.
VerifyResult verify_separation(std::size_t n, long long q, double eta, const std::vector<double>& Ns,
                               double max_spread, std::vector<SeparationRow>* rows_out = nullptr);

VerifyResult verify_ball_algebra(const std::vector<std::size_t>& ns, const std::vector<double>& etas,
                                 const std::vector<double>& Ns, std::size_t samples, std::uint64_t seed);

VerifyResult verify_entropy(std::size_t systems, std::uint64_t seed);

// Monte Carlo comparison of 1_{Delta_full} with the sum of the indicators of
// the cyclic images of Delta about v.
VerifyResult verify_fundamental_domain(std::size_t n, std::size_t samples, std::uint64_t seed);

VerifyResult verify_restriction_defect(std::size_t n, long long q, const std::vector<double>& Ms, int resolution);

std::vector<std::string> verify_registry();

struct EquidistRow {
  long long q;
  std::size_t n;
  std::string statistic;
  double value;
  double reference;
  int resolution;
  double runtime_ms;
};

// Per q: KS distance of the averaged nu_{p/q} to Gauss-Kuzmin (n = 2 only) and
// the truncated Siegel statistic of the orbit average over ln(q) Delta_full.
std::vector<EquidistRow> equidist(std::size_t n, const std::vector<long long>& qs, int resolution, double R,
                                  double truncation = 1000);
Table equidist_table(const std::vector<EquidistRow>& rows, bool with_timing);

Table zaremba_table(const std::vector<long long>& qs, long long M);
// Family points whose orbit grid over ln(q) Delta_full stays in ht <= M.
Table bounded_orbit_table(std::size_t n, const std::vector<long long>& qs, double M, int resolution);

std::vector<long long> primes_up_to(long long limit);

}  // namespace divorb
