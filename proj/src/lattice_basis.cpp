#include "divorb/lattice_basis.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "divorb/errors.hpp"

namespace divorb {

RealLatticeBasis::RealLatticeBasis(RealMatrix rows) : rows_(std::move(rows)) {
  if (rows_.rows() == 0 || rows_.rows() != rows_.cols()) throw std::invalid_argument("basis must be a nonempty square matrix");
  if (!rows_.allFinite()) throw std::invalid_argument("basis has a non-finite entry");
  const double det = rows_.fullPivLu().determinant();
  if (det == 0 || !std::isfinite(det)) throw Singular("basis is singular");
}

RealLatticeBasis RealLatticeBasis::from_rational(const RationalMatrix& m) {
  RealMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = static_cast<double>(m(i, j));
  return RealLatticeBasis(std::move(r));
}

RealLatticeBasis RealLatticeBasis::identity(std::size_t n) {
  return RealLatticeBasis(RealMatrix::Identity(n, n));
}

namespace {

using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

void gram_schmidt(const LMatrix& b, LMatrix& mu, std::vector<long double>& norms) {
  const Eigen::Index n = b.rows();
  LMatrix star = b;
  mu.setZero(n, n);
  norms.assign(n, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < i; ++j) {
      mu(i, j) = b.row(i).dot(star.row(j)) / norms[j];
      star.row(i) -= mu(i, j) * star.row(j);
    }
    norms[i] = star.row(i).squaredNorm();
    if (!(norms[i] > 0)) throw IllConditioned("degenerate Gram-Schmidt vector");
  }
}

constexpr long long kTransformLimit = 1LL << 53;

}  // namespace

ReducedBasis lll_reduce(const RealMatrix& rows, double delta) {
  const Eigen::Index n = rows.rows();
  LMatrix b = rows.cast<long double>();
  IntegerTransform u = IntegerTransform::Identity(n, n);
  LMatrix mu;
  std::vector<long double> norms;
  gram_schmidt(b, mu, norms);
  Eigen::Index k = 1;
  long long iterations = 0;
  while (k < n) {
    if (++iterations > 100000) throw IllConditioned("LLL did not converge");
    for (Eigen::Index j = k - 1; j >= 0; --j) {
      if (std::abs(mu(k, j)) <= 0.5L) continue;
      long double r = std::nearbyint(mu(k, j));
      if (std::abs(r) > static_cast<long double>(kTransformLimit)) throw IllConditioned("LLL coefficient overflow");
      long long ri = static_cast<long long>(r);
      b.row(k) -= r * b.row(j);
      u.row(k) -= ri * u.row(j);
      for (Eigen::Index l = 0; l < j; ++l) mu(k, l) -= r * mu(j, l);
      mu(k, j) -= r;
    }
    if (norms[k] >= (static_cast<long double>(delta) - mu(k, k - 1) * mu(k, k - 1)) * norms[k - 1]) {
      ++k;
    } else {
      b.row(k).swap(b.row(k - 1));
      u.row(k).swap(u.row(k - 1));
      gram_schmidt(b, mu, norms);
      k = std::max<Eigen::Index>(k - 1, 1);
    }
  }
  if (u.cwiseAbs().maxCoeff() > kTransformLimit) throw IllConditioned("LLL transform overflow");
  if (integer_det(u) < 0) u.row(0) *= -1;
  LMatrix exact = u.cast<long double>() * rows.cast<long double>();
  return {exact.cast<double>(), u};
}

long long integer_det(const IntegerTransform& m) {
  const Eigen::Index n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
  // Bareiss fraction-free elimination in 128-bit arithmetic.
  std::vector<__int128> a(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  __int128 prev = 1;
  int sign = 1;
  for (Eigen::Index k = 0; k < n - 1; ++k) {
    if (a[k * n + k] == 0) {
      Eigen::Index p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (Eigen::Index j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i)
      for (Eigen::Index j = k + 1; j < n; ++j)
        a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
    prev = a[k * n + k];
  }
  return sign * static_cast<long long>(a[(n - 1) * n + (n - 1)]);
}

IntegerTransform integer_inverse(const IntegerTransform& unimodular) {
  const long long d = integer_det(unimodular);
  if (d != 1 && d != -1) throw std::invalid_argument("matrix is not unimodular");
  LMatrix inv = unimodular.cast<long double>().inverse();
  IntegerTransform out(unimodular.rows(), unimodular.cols());
  for (Eigen::Index i = 0; i < inv.rows(); ++i)
    for (Eigen::Index j = 0; j < inv.cols(); ++j) out(i, j) = std::llround(inv(i, j));
  if (!(out * unimodular).isIdentity()) throw IllConditioned("integer inverse lost precision");
  return out;
}

bool same_lattice(const RealMatrix& a, const RealMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  RealMatrix g = b * a.inverse();
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j)
      if (std::abs(g(i, j) - std::nearbyint(g(i, j))) > tol) return false;
  return std::abs(std::abs(g.determinant()) - 1.0) < tol;
}

double AxisLattice::tau() const {
  return std::accumulate(log_covol.begin(), log_covol.end(), 0.0) / static_cast<double>(log_covol.size());
}

double covol_axis(const RealLatticeBasis& basis, std::size_t axis, long long search_bound) {
  const std::size_t n = basis.dim();
  if (axis >= n) throw std::invalid_argument("axis out of range");
  Eigen::VectorXd r = basis.matrix().inverse().row(static_cast<Eigen::Index>(axis)).transpose();
  Eigen::Index lead = 0;
  r.cwiseAbs().maxCoeff(&lead);
  const double step = 1.0 / std::abs(r(lead));
  for (long long m = 1; m <= search_bound; ++m) {
    const double c = static_cast<double>(m) * step;
    bool integral = true;
    for (Eigen::Index j = 0; j < r.size() && integral; ++j) {
      const double v = c * r(j);
      integral = std::abs(v - std::nearbyint(v)) <= 1e-9 * std::max(1.0, std::abs(v));
    }
    if (integral) return c;
  }
  throw IllConditioned("no axis vector within the search bound");
}

}  // namespace divorb
