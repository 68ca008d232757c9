#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "divorb/exact_lattice.hpp"
#include "divorb/lattice_basis.hpp"

namespace divorb {

long long euler_phi(long long q);
// Residues 1 <= p <= q coprime to q, ascending.
std::vector<long long> unit_residues(long long q);

struct FamilyPoint {
  long long q;
  std::vector<long long> residues;  // p_1, ..., p_{n-1}
  std::size_t dim() const { return residues.size() + 1; }
};

// The family Lambda_q: one point u_{p/q} per tuple of units mod q, in
// lexicographic order of the residue tuple.
class Family {
 public:
  Family(long long q, std::size_t n);

  long long q() const { return q_; }
  std::size_t dim() const { return n_; }
  std::size_t size() const { return size_; }
  const std::vector<long long>& units() const { return units_; }

  FamilyPoint at(std::size_t index) const;
  void for_each(const std::function<void(const FamilyPoint&)>& fn) const;

 private:
  long long q_;
  std::size_t n_;
  std::vector<long long> units_;
  std::size_t size_;
};

// Upper unitriangular matrix with first row (1, p_1/q, ..., p_{n-1}/q).
RationalMatrix u_matrix(const FamilyPoint& point);
RealLatticeBasis u_basis(const FamilyPoint& point);
// The same point moved by a_q(v): spanned by q^{1/n} Z^n and q^{(1-n)/n}(1, p).
RealLatticeBasis symmetrized_rep(const FamilyPoint& point);
// q Z^n + Z (1, p_1, ..., p_{n-1}).
IntegerLattice integral_lattice(const FamilyPoint& point);

struct CensusResult {
  long long q;
  std::size_t total;
  std::size_t selected;
  // ln(selected) / ln(total); -inf when nothing is selected, NaN when total <= 1.
  double log_ratio;
};

CensusResult census(const Family& family, const std::function<bool(const FamilyPoint&)>& predicate);

}  // namespace divorb
