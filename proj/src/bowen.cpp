#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

#include "divorb/diag_flow.hpp"
#include "divorb/errors.hpp"
#include "divorb/families.hpp"
#include "divorb/height_metric.hpp"

namespace divorb {
namespace {

double box_weight(Eigen::Index i, Eigen::Index j, double N) { return (i == 0 && j >= 1) ? std::exp(-N) : 1.0; }

using Prepared = PreparedBasis;
Prepared prepare(const RealLatticeBasis& b) { return prepare_basis(b); }

bool lex_less(const IntegerTransform& a, const IntegerTransform& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a.data()[i] != b.data()[i]) return a.data()[i] < b.data()[i];
  return false;
}

std::vector<BowenMatch> matches_prepared(const Prepared& g, const Prepared& h, double N, double cap, long long budget) {
  const Eigen::Index n = g.reduced.rows();
  if (h.reduced.rows() != n) throw std::invalid_argument("dimension mismatch");
  if (!(cap >= 0)) throw std::invalid_argument("radius must be non-negative");
  const RealMatrix& G = g.reduced;
  const RealMatrix& H = h.reduced;
  const RealMatrix& Hinv = h.inverse;
  long long spent = 0;

  // gamma h' = g' (I + W) forces row i of gamma h' within cap * beta(i, .) of row i of g'.
  std::vector<std::vector<Eigen::Matrix<long long, 1, Eigen::Dynamic>>> rows(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::RowVectorXd beta(n);
    for (Eigen::Index l = 0; l < n; ++l) {
      beta(l) = 0;
      for (Eigen::Index k = 0; k < n; ++k) beta(l) += std::abs(G(i, k)) * box_weight(k, l, N);
    }
    const Eigen::RowVectorXd centre = G.row(i) * Hinv;
    std::vector<long long> lo(n), hi(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      double hw = 0;
      for (Eigen::Index l = 0; l < n; ++l) hw += beta(l) * std::abs(Hinv(l, j));
      hw = cap * hw * (1 + 1e-9) + 1e-9;
      if (hw > 1e12) throw SearchBudgetExceeded("Bowen search box too large");
      lo[j] = static_cast<long long>(std::ceil(centre(j) - hw));
      hi[j] = static_cast<long long>(std::floor(centre(j) + hw));
    }
    Eigen::Matrix<long long, 1, Eigen::Dynamic> c(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      if (lo[j] > hi[j]) return {};
      c(j) = lo[j];
    }
    for (;;) {
      if (++spent > budget) throw SearchBudgetExceeded("Bowen candidate budget exhausted");
      const Eigen::RowVectorXd diff = c.cast<double>() * H - G.row(i);
      bool ok = true;
      for (Eigen::Index l = 0; l < n && ok; ++l) ok = std::abs(diff(l)) <= cap * beta(l) * (1 + 1e-9) + 1e-12;
      if (ok) rows[i].push_back(c);
      Eigen::Index j = 0;
      while (j < n && ++c(j) > hi[j]) c(j) = lo[j], ++j;
      if (j == n) break;
    }
    if (rows[i].empty()) return {};
  }

  std::vector<BowenMatch> out;
  const IntegerTransform g_back = integer_inverse(g.transform);
  std::vector<std::size_t> pick(n, 0);
  for (;;) {
    if (++spent > budget) throw SearchBudgetExceeded("Bowen candidate budget exhausted");
    IntegerTransform gamma(n, n);
    for (Eigen::Index i = 0; i < n; ++i) gamma.row(i) = rows[i][pick[i]];
    if (integer_det(gamma) == 1) {
      const RealMatrix W = g.inverse * gamma.cast<double>() * H - RealMatrix::Identity(n, n);
      const double r = box_radius(W, N);
      if (r <= cap * (1 + 1e-12) + 1e-15) out.push_back({g_back * gamma * h.transform, r});
    }
    Eigen::Index i = 0;
    while (i < n && ++pick[i] == rows[i].size()) pick[i] = 0, ++i;
    if (i == n) break;
  }
  std::sort(out.begin(), out.end(), [](const BowenMatch& a, const BowenMatch& b) {
    if (a.radius != b.radius) return a.radius < b.radius;
    return lex_less(a.gamma, b.gamma);
  });
  return out;
}

// Uniform entries in V_{eta,N}, then W(0,0) solved so that det(I+W) = 1;
// rejected when that entry leaves the box.
RealMatrix sample_ball(std::size_t n, const BowenBallSpec& spec, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  const Eigen::Index m = static_cast<Eigen::Index>(n);
  for (;;) {
    RealMatrix W(m, m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) W(i, j) = spec.eta * box_weight(i, j, spec.N) * unit(rng);
    RealMatrix A = RealMatrix::Identity(m, m) + W;
    A(0, 0) = 0;
    const double f0 = A.determinant();
    A(0, 0) = 1;
    const double slope = A.determinant() - f0;
    if (std::abs(slope) < 1e-12) continue;
    const double corner = (1.0 - f0) / slope;
    if (std::abs(corner - 1.0) > spec.eta) continue;
    W(0, 0) = corner - 1.0;
    return W;
  }
}

}  // namespace

PreparedBasis prepare_basis(const RealLatticeBasis& b) {
  ReducedBasis rb = lll_reduce(b.matrix());
  RealMatrix inv = rb.reduced.inverse();
  return {std::move(rb.reduced), std::move(inv), std::move(rb.transform)};
}

double box_radius(const RealMatrix& W, double N) {
  double r = 0;
  for (Eigen::Index i = 0; i < W.rows(); ++i)
    for (Eigen::Index j = 0; j < W.cols(); ++j) r = std::max(r, std::abs(W(i, j)) / box_weight(i, j, N));
  return r;
}

bool in_box(const RealMatrix& W, const BowenBallSpec& spec, double tol) {
  return box_radius(W, spec.N) <= spec.eta * (1 + tol);
}

std::vector<BowenMatch> bowen_matches(const RealLatticeBasis& g, const RealLatticeBasis& h, double N, double cap,
                                      long long budget) {
  return matches_prepared(prepare(g), prepare(h), N, cap, budget);
}

std::vector<BowenMatch> bowen_matches(const PreparedBasis& g, const PreparedBasis& h, double N, double cap,
                                      long long budget) {
  return matches_prepared(g, h, N, cap, budget);
}

std::optional<BowenMatch> bowen_contains(const RealLatticeBasis& g, const RealLatticeBasis& h,
                                         const BowenBallSpec& spec, long long budget) {
  auto m = bowen_matches(g, h, spec.N, spec.eta, budget);
  if (m.empty()) return std::nullopt;
  return m.front();
}

BallAlgebraReport ball_algebra_checks(std::size_t n, const BowenBallSpec& spec, std::size_t samples,
                                      std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  if (!(spec.eta > 0 && spec.eta < 1.0 / (2.0 * static_cast<double>(n))))
    throw std::invalid_argument("eta must lie in (0, 1/(2n))");
  if (!(spec.N >= 0)) throw std::invalid_argument("N must be non-negative");
  std::mt19937_64 rng(seed);
  const Eigen::Index m = static_cast<Eigen::Index>(n);
  const RealMatrix I = RealMatrix::Identity(m, m);
  BallAlgebraReport rep;
  rep.samples = samples;
  for (std::size_t s = 0; s < samples; ++s) {
    const RealMatrix W = sample_ball(n, spec, rng);
    const RealMatrix inv = (I + W).inverse();
    if (box_radius(inv - (I - W), spec.N) > spec.eta * spec.eta * static_cast<double>(n) * (1 + 1e-9))
      ++rep.inverse_first_order_violations;
    const double ri = box_radius(inv - I, spec.N) / spec.eta;
    rep.worst_inverse_radius = std::max(rep.worst_inverse_radius, ri);
    if (ri > 1.5 * (1 + 1e-12)) ++rep.inverse_violations;

    const RealMatrix shift = sample_ball(n, spec, rng);
    const RealMatrix b = I + sample_ball(n, spec, rng);
    const double rc = box_radius((I + shift).inverse() * b - I, spec.N) / spec.eta;
    rep.worst_change_center_radius = std::max(rep.worst_change_center_radius, rc);
    if (rc > 4.0 * (1 + 1e-12)) ++rep.change_center_violations;
  }
  return rep;
}

CoverReport cover_constant_check(std::size_t n, const BowenBallSpec& spec, double R, std::size_t samples,
                                 std::uint64_t seed) {
  if (!(R >= 1)) throw std::invalid_argument("R must be at least 1");
  if (!(spec.eta > 0 && spec.eta < 1.0 / (6.0 * static_cast<double>(n) * R)))
    throw std::invalid_argument("eta must lie in (0, 1/(6nR))");
  const Eigen::Index m = static_cast<Eigen::Index>(n);
  const long long per_entry = 4 * static_cast<long long>(std::ceil(R));
  CoverReport rep;
  rep.cells_total = 1;
  for (Eigen::Index k = 0; k < m * m; ++k) rep.cells_total *= static_cast<std::size_t>(per_entry);
  rep.bound = std::pow(8.0 * R, static_cast<double>(m * m));
  rep.samples = samples;
  std::mt19937_64 rng(seed);
  const RealMatrix I = RealMatrix::Identity(m, m);
  std::map<std::vector<long long>, RealMatrix> representative;
  for (std::size_t s = 0; s < samples; ++s) {
    const RealMatrix W = sample_ball(n, spec, rng);
    std::vector<long long> cell(static_cast<std::size_t>(m * m));
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j) {
        const double half = spec.eta * box_weight(i, j, spec.N);
        long long c = static_cast<long long>(std::floor((W(i, j) + half) / (2 * half) * per_entry));
        cell[i * m + j] = std::clamp(c, 0LL, per_entry - 1);
      }
    auto [it, fresh] = representative.try_emplace(cell, I + W);
    if (fresh) continue;
    const RealMatrix rel = it->second.inverse() * (I + W) - I;
    if (box_radius(rel, spec.N) > spec.eta / R * (1 + 1e-9)) ++rep.containment_violations;
  }
  rep.cells_used = representative.size();
  return rep;
}

std::size_t separation_count(long long q, std::size_t n, const TimeVector& t, const RealLatticeBasis& x,
                             const BowenBallSpec& spec) {
  if (t.dim() != n || x.dim() != n) throw std::invalid_argument("dimension mismatch");
  const Family family(q, n);
  const Prepared centre = prepare(x);
  std::size_t count = 0;
  family.for_each([&](const FamilyPoint& p) {
    const Prepared h = prepare(diag_apply_q(u_basis(p), t, static_cast<double>(q)));
    if (!matches_prepared(centre, h, spec.N, spec.eta, 1'000'000).empty()) ++count;
  });
  return count;
}

Partition::Partition(double M, BowenBallSpec spec, std::vector<RealLatticeBasis> centres)
    : M_(M), spec_(spec), centres_(std::move(centres)) {
  prepared_.reserve(centres_.size());
  for (const auto& c : centres_) prepared_.push_back(prepare(c));
}

std::size_t Partition::label(const RealLatticeBasis& x) const {
  if (ht(x) > M_ + 1e-9) return 0;
  const Prepared px = prepare(x);
  std::size_t best = residual_label();
  double best_radius = spec_.eta;
  for (std::size_t i = 0; i < centres_.size(); ++i) {
    auto m = matches_prepared(prepared_[i], px, spec_.N, spec_.eta, 1'000'000);
    if (!m.empty() && (best == residual_label() || m.front().radius < best_radius)) {
      best = i + 1;
      best_radius = m.front().radius;
    }
  }
  return best;
}

Partition build_partition(double M, const BowenBallSpec& spec, const std::vector<RealLatticeBasis>& samples) {
  if (!(M > 1)) throw std::invalid_argument("M must exceed 1");
  if (!(spec.eta > 0)) throw std::invalid_argument("eta must be positive");
  std::vector<RealLatticeBasis> centres;
  std::vector<Prepared> prepared;
  for (const auto& s : samples) {
    if (ht(s) > M + 1e-9) continue;
    const Prepared ps = prepare(s);
    bool covered = false;
    for (const auto& c : prepared)
      if (!matches_prepared(c, ps, spec.N, spec.eta / 4, 1'000'000).empty()) {
        covered = true;
        break;
      }
    if (covered) continue;
    for (const auto& m : matches_prepared(ps, ps, spec.N, spec.eta, 1'000'000))
      if (!m.gamma.isIdentity()) throw InjectivityRisk("Bowen ball around a centre is not embedded");
    centres.push_back(s);
    prepared.push_back(ps);
  }
  return Partition(M, spec, std::move(centres));
}

}  // namespace divorb
