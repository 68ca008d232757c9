#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "divorb/lattice_basis.hpp"
#include "divorb/region.hpp"

namespace divorb {

inline constexpr long long kHeightBudget = 10'000'000;

struct HeightResult {
  double value;                    // 1 / min_norm
  double min_norm;                 // shortest sup-norm length
  std::vector<long long> witness;  // coefficients in the input basis
};

// Exact minimum of the sup norm over nonzero lattice vectors. Coefficients
// are bounded through the inverse of an LLL-reduced basis and enumerated
// completely; among equally short vectors the witness is normalised to have
// a positive last nonzero entry and the colexicographically smallest one wins.
HeightResult shortest_sup_vector(const RealLatticeBasis& basis, long long budget = kHeightBudget);
double ht(const RealLatticeBasis& basis);
bool in_X_leq(const RealLatticeBasis& basis, double M);

// V_{eta,N}: entrywise box, |W(0,j)| <= eta e^{-N} for j >= 1, |W(i,j)| <= eta otherwise.
struct BowenBallSpec {
  double eta;
  double N;
};

// Smallest eta' with W in V_{eta',N}.
double box_radius(const RealMatrix& W, double N);
bool in_box(const RealMatrix& W, const BowenBallSpec& spec, double tol = 1e-12);

// LLL-reduced representative with its inverse, reused across many searches.
struct PreparedBasis {
  RealMatrix reduced;
  RealMatrix inverse;
  IntegerTransform transform;
};
PreparedBasis prepare_basis(const RealLatticeBasis& b);

struct BowenMatch {
  IntegerTransform gamma;  // integer, det 1, with g^-1 gamma h - I in V
  double radius;
};

// Every gamma in SL_n(Z) with g^-1 gamma h - I inside V_{cap,N}, sorted by
// radius. The candidate rows are enumerated exhaustively from box bounds, so
// an empty result certifies that none exists.
std::vector<BowenMatch> bowen_matches(const RealLatticeBasis& g, const RealLatticeBasis& h, double N, double cap,
                                      long long budget = 1'000'000);
std::vector<BowenMatch> bowen_matches(const PreparedBasis& g, const PreparedBasis& h, double N, double cap,
                                      long long budget = 1'000'000);
std::optional<BowenMatch> bowen_contains(const RealLatticeBasis& g, const RealLatticeBasis& h,
                                         const BowenBallSpec& spec, long long budget = 1'000'000);

struct BallAlgebraReport {
  std::size_t samples = 0;
  std::size_t inverse_first_order_violations = 0;  // (I+W)^-1 - (I-W) outside V_{eta^2 n, N}
  std::size_t inverse_violations = 0;              // (I+W)^-1 outside B_{1.5 eta, N}
  std::size_t change_center_violations = 0;        // h^-1 b outside B_{4 eta, N}
  double worst_inverse_radius = 0;                 // in units of eta
  double worst_change_center_radius = 0;           // in units of eta
};

BallAlgebraReport ball_algebra_checks(std::size_t n, const BowenBallSpec& spec, std::size_t samples, std::uint64_t seed);

struct CoverReport {
  std::size_t cells_total = 0;  // (4 ceil(R))^{n^2}
  std::size_t cells_used = 0;
  double bound = 0;             // (8R)^{n^2}
  std::size_t samples = 0;
  std::size_t containment_violations = 0;
};

// Covers B_{eta,N} by translates of V_{eta/(4R),N} on a regular grid and
// checks that gamma_cell^-1 b lies in B_{eta/R,N} for sampled b.
CoverReport cover_constant_check(std::size_t n, const BowenBallSpec& spec, double R, std::size_t samples,
                                 std::uint64_t seed);

struct ConjugationResult {
  HeightResult height;
  bool holds;  // ht <= 2
};

// ht of Z^d (I + a(t) g a(-t)); requires max |g_ij| < 1/(2d) and |t_i| <= 30.
ConjugationResult conjugated_height_check(const RealMatrix& g, const TimeVector& t);

// Number of family points p with u_{p/q} a_q(t) in x B_{eta,N}.
std::size_t separation_count(long long q, std::size_t n, const TimeVector& t, const RealLatticeBasis& x,
                             const BowenBallSpec& spec);

// Finite partition of a sample cloud: label 0 collects ht > M, labels 1..K
// are Bowen balls around greedily chosen centres, label K+1 collects points
// farther than eta from every centre.
class Partition {
 public:
  Partition(double M, BowenBallSpec spec, std::vector<RealLatticeBasis> centres);

  double M() const { return M_; }
  const BowenBallSpec& spec() const { return spec_; }
  std::size_t centre_count() const { return centres_.size(); }
  const std::vector<RealLatticeBasis>& centres() const { return centres_; }
  std::size_t atom_count() const { return centres_.size() + 2; }
  std::size_t residual_label() const { return centres_.size() + 1; }

  std::size_t label(const RealLatticeBasis& x) const;

 private:
  double M_;
  BowenBallSpec spec_;
  std::vector<RealLatticeBasis> centres_;
  std::vector<PreparedBasis> prepared_;
};

// Greedy cover with radius eta/4 of the samples inside X^{<=M}. Throws
// InjectivityRisk when some centre g admits gamma != I with g^-1 gamma g in
// I + V_{2 eta, N}, i.e. the ball map is not injective there.
Partition build_partition(double M, const BowenBallSpec& spec, const std::vector<RealLatticeBasis>& samples);

}  // namespace divorb
