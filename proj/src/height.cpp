#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "divorb/errors.hpp"
#include "divorb/height_metric.hpp"

namespace divorb {
namespace {

constexpr double kTieTolerance = 1e-11;

struct Candidate {
  long double norm;
  std::vector<long long> coeffs;
};

class SupEnumerator {
 public:
  SupEnumerator(const RealMatrix& reduced, long long budget)
      : basis_(reduced.cast<long double>()), n_(reduced.rows()), budget_(budget) {
    RealMatrix inv = reduced.inverse();
    col_sums_.resize(n_);
    for (Eigen::Index j = 0; j < n_; ++j) col_sums_[j] = inv.col(j).cwiseAbs().sum();
    radius_ = std::numeric_limits<long double>::infinity();
    for (Eigen::Index i = 0; i < n_; ++i) radius_ = std::min(radius_, basis_.row(i).cwiseAbs().maxCoeff());
    radius_ *= 1 + 1e-9L;
  }

  std::vector<Candidate> run() {
    std::vector<long long> k(n_, 0);
    Eigen::Matrix<long double, 1, Eigen::Dynamic> partial = Eigen::Matrix<long double, 1, Eigen::Dynamic>::Zero(n_);
    recurse(0, k, partial, false);
    std::vector<Candidate> out;
    for (auto& c : ties_)
      if (c.norm <= best_ * (1 + kTieTolerance)) out.push_back(std::move(c));
    return out;
  }

 private:
  void recurse(Eigen::Index pos, std::vector<long long>& k, const Eigen::Matrix<long double, 1, Eigen::Dynamic>& partial,
               bool started) {
    if (++visited_ > budget_) throw IllConditioned("sup-norm enumeration exceeded its budget");
    if (pos == n_) {
      if (!started) return;
      const long double norm = partial.cwiseAbs().maxCoeff();
      if (norm < best_ * (1 - kTieTolerance)) {
        best_ = norm;
        radius_ = std::min(radius_, norm * (1 + 1e-9L));
        ties_.erase(std::remove_if(ties_.begin(), ties_.end(),
                                   [&](const Candidate& c) { return c.norm > best_ * (1 + kTieTolerance); }),
                    ties_.end());
      }
      if (norm <= best_ * (1 + kTieTolerance)) ties_.push_back({norm, k});
      return;
    }
    const long double raw = radius_ * static_cast<long double>(col_sums_[pos]) * (1 + 1e-12L) + 1e-9L;
    if (raw > 1e15L) throw IllConditioned("coefficient bound too large");
    const long long bound = static_cast<long long>(std::floor(raw));
    const long long lo = started ? -bound : 0;
    for (long long v = lo; v <= bound; ++v) {
      const long double live = radius_ * static_cast<long double>(col_sums_[pos]) * (1 + 1e-12L) + 1e-9L;
      if (std::abs(static_cast<long double>(v)) > live) {
        if (v > 0) break;
        continue;
      }
      k[pos] = v;
      recurse(pos + 1, k, partial + static_cast<long double>(v) * basis_.row(pos), started || v != 0);
    }
    k[pos] = 0;
  }

  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> basis_;
  Eigen::Index n_;
  long long budget_;
  std::vector<double> col_sums_;
  long double radius_;
  long double best_ = std::numeric_limits<long double>::infinity();
  long long visited_ = 0;
  std::vector<Candidate> ties_;
};

bool colex_less(const std::vector<long long>& a, const std::vector<long long>& b) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

}  // namespace

HeightResult shortest_sup_vector(const RealLatticeBasis& basis, long long budget) {
  const ReducedBasis rb = lll_reduce(basis.matrix());
  SupEnumerator enumerator(rb.reduced, budget);
  std::vector<Candidate> ties = enumerator.run();
  if (ties.empty()) throw IllConditioned("enumeration found no vector");
  const std::size_t n = basis.dim();
  HeightResult best{0, static_cast<double>(ties.front().norm), {}};
  for (const auto& c : ties) best.min_norm = std::min(best.min_norm, static_cast<double>(c.norm));
  for (const auto& c : ties) {
    std::vector<long long> k(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) k[j] += c.coeffs[i] * rb.transform(i, j);
    auto last = std::find_if(k.rbegin(), k.rend(), [](long long v) { return v != 0; });
    if (last != k.rend() && *last < 0)
      for (auto& v : k) v = -v;
    if (best.witness.empty() || colex_less(k, best.witness)) best.witness = std::move(k);
  }
  best.value = 1.0 / best.min_norm;
  return best;
}

double ht(const RealLatticeBasis& basis) { return shortest_sup_vector(basis).value; }

bool in_X_leq(const RealLatticeBasis& basis, double M) { return ht(basis) <= M + 1e-9; }

ConjugationResult conjugated_height_check(const RealMatrix& g, const TimeVector& t) {
  const Eigen::Index d = g.rows();
  if (g.cols() != d || static_cast<std::size_t>(d) != t.dim()) throw std::invalid_argument("dimension mismatch");
  if (!(g.cwiseAbs().maxCoeff() < 1.0 / (2.0 * static_cast<double>(d))))
    throw std::invalid_argument("perturbation must satisfy max |g_ij| < 1/(2d)");
  for (std::size_t i = 0; i < t.dim(); ++i)
    if (std::abs(t[i]) > 30) throw IllConditioned("time coordinate beyond 30");
  RealMatrix m = RealMatrix::Identity(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) += g(i, j) * std::exp(t[i] - t[j]);
  HeightResult h = shortest_sup_vector(RealLatticeBasis(m));
  return {h, h.value <= 2.0 + 1e-9};
}

}  // namespace divorb
