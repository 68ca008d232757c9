#include "divorb/families.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "divorb/diag_flow.hpp"

namespace divorb {

long long euler_phi(long long q) {
  if (q < 1) throw std::invalid_argument("q must be positive");
  long long result = q;
  long long m = q;
  for (long long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

std::vector<long long> unit_residues(long long q) {
  if (q < 1) throw std::invalid_argument("q must be positive");
  std::vector<long long> out;
  for (long long p = 1; p <= q; ++p)
    if (std::gcd(p, q) == 1) out.push_back(p);
  return out;
}

Family::Family(long long q, std::size_t n) : q_(q), n_(n), units_(unit_residues(q)) {
  if (n < 2) throw std::invalid_argument("dimension must be at least 2");
  size_ = 1;
  for (std::size_t i = 1; i < n; ++i) {
    if (size_ > std::numeric_limits<std::size_t>::max() / units_.size())
      throw std::overflow_error("family too large to enumerate");
    size_ *= units_.size();
  }
}

FamilyPoint Family::at(std::size_t index) const {
  if (index >= size_) throw std::out_of_range("family index out of range");
  FamilyPoint p{q_, std::vector<long long>(n_ - 1)};
  for (std::size_t i = n_ - 1; i-- > 0;) {
    p.residues[i] = units_[index % units_.size()];
    index /= units_.size();
  }
  return p;
}

void Family::for_each(const std::function<void(const FamilyPoint&)>& fn) const {
  for (std::size_t i = 0; i < size_; ++i) fn(at(i));
}

RationalMatrix u_matrix(const FamilyPoint& point) {
  const std::size_t n = point.dim();
  RationalMatrix m = RationalMatrix::identity(n);
  for (std::size_t j = 1; j < n; ++j) m(0, j) = BigRational(point.residues[j - 1], point.q);
  return m;
}

RealLatticeBasis u_basis(const FamilyPoint& point) {
  const std::size_t n = point.dim();
  RealMatrix m = RealMatrix::Identity(n, n);
  for (std::size_t j = 1; j < n; ++j)
    m(0, j) = static_cast<double>(point.residues[j - 1]) / static_cast<double>(point.q);
  return RealLatticeBasis(std::move(m));
}

RealLatticeBasis symmetrized_rep(const FamilyPoint& point) {
  const std::size_t n = point.dim();
  const double q = static_cast<double>(point.q);
  const double small = std::pow(q, (1.0 - static_cast<double>(n)) / static_cast<double>(n));
  RealMatrix m = RealMatrix::Identity(n, n) * std::pow(q, 1.0 / static_cast<double>(n));
  m(0, 0) = small;
  for (std::size_t j = 1; j < n; ++j) m(0, j) = small * static_cast<double>(point.residues[j - 1]);
  return RealLatticeBasis(std::move(m));
}

IntegerLattice integral_lattice(const FamilyPoint& point) {
  const std::size_t n = point.dim();
  IntMatrix m(n, n);
  m(0, 0) = 1;
  for (std::size_t j = 1; j < n; ++j) {
    m(0, j) = point.residues[j - 1];
    m(j, j) = point.q;
  }
  return IntegerLattice(m);
}

CensusResult census(const Family& family, const std::function<bool(const FamilyPoint&)>& predicate) {
  std::size_t selected = 0;
  family.for_each([&](const FamilyPoint& p) {
    if (predicate(p)) ++selected;
  });
  double ratio = std::numeric_limits<double>::quiet_NaN();
  if (family.size() > 1)
    ratio = selected == 0 ? -std::numeric_limits<double>::infinity()
                          : std::log(static_cast<double>(selected)) / std::log(static_cast<double>(family.size()));
  return {family.q(), family.size(), selected, ratio};
}

}  // namespace divorb
