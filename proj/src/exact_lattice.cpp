#include "divorb/exact_lattice.hpp"

#include <cmath>
#include <stdexcept>


#include "divorb/errors.hpp"

namespace divorb {
namespace {

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

BigInt big_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

BigInt big_lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  BigInt l = a / big_gcd(a, b) * b;
  return l < 0 ? BigInt(-l) : l;
}

// x*a + y*b = g = gcd(a, b) >= 0
void extended_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& x, BigInt& y) {
  BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  x = old_s;
  y = old_t;
}

void require_square(const IntMatrix& m) {
  if (!m.square() || m.rows() == 0) throw std::invalid_argument("basis must be a nonempty square matrix");
}

}  // namespace

IntMatrix hermite_normal_form(IntMatrix b) {
  require_square(b);
  const std::size_t n = b.rows();
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t r = 0; r < c; ++r) {
      if (b(r, c) == 0) continue;
      BigInt g, x, y;
      extended_gcd(b(c, c), b(r, c), g, x, y);
      BigInt a_g = b(c, c) / g;
      BigInt r_g = b(r, c) / g;
      for (std::size_t j = 0; j <= c; ++j) {
        BigInt top = x * b(c, j) + y * b(r, j);
        BigInt bottom = r_g * b(c, j) - a_g * b(r, j);
        b(c, j) = std::move(top);
        b(r, j) = std::move(bottom);
      }
    }
    if (b(c, c) == 0) throw Singular("basis is singular");
    if (b(c, c) < 0)
      for (std::size_t j = 0; j <= c; ++j) b(c, j) = -b(c, j);
  }
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = j; i-- > 0;) {
      BigInt k = floor_div(b(j, i), b(i, i));
      if (k == 0) continue;
      for (std::size_t l = 0; l <= i; ++l) b(j, l) -= k * b(i, l);
    }
  return b;
}

IntegerLattice::IntegerLattice(const IntMatrix& generators) : basis_(hermite_normal_form(generators)) {}

BigInt IntegerLattice::index() const {
  BigInt d = 1;
  for (std::size_t i = 0; i < dim(); ++i) d *= basis_(i, i);
  return d;
}

TypeVector smith_type(const IntMatrix& basis) {
  require_square(basis);
  IntMatrix a = basis;
  const std::size_t n = a.rows();
  TypeVector out;
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (a(i, j) != 0 && (pi == n || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == n) throw Singular("basis is singular");
      a.swap_rows(t, pi);
      a.swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        BigInt k = floor_div(a(i, t), a(t, t));
        for (std::size_t j = t; j < n; ++j) a(i, j) -= k * a(t, j);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        BigInt k = floor_div(a(t, j), a(t, t));
        for (std::size_t i = t; i < n; ++i) a(i, j) -= k * a(i, t);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (a(i, j) % a(t, t) != 0) {
            for (std::size_t l = t; l < n; ++l) a(t, l) += a(i, l);
            divides = false;
            break;
          }
      if (divides) break;
    }
    out.push_back(abs(a(t, t)));
  }
  return out;
}

TypeVector smith_type(const IntegerLattice& lattice) { return smith_type(lattice.basis()); }

IntegerLattice axis_primitive_rep(const IntegerLattice& lattice) {
  IntMatrix b = lattice.basis();
  const std::size_t n = b.rows();
  for (std::size_t j = 0; j < n; ++j) {
    BigInt g = 0;
    for (std::size_t i = 0; i < n; ++i) g = big_gcd(g, b(i, j));
    if (g == 0) throw Singular("zero column");
    for (std::size_t i = 0; i < n; ++i) b(i, j) /= g;
  }
  return IntegerLattice(b);
}

OrbitInvariants orbit_invariants(const IntegerLattice& lattice) {
  IntegerLattice rep = axis_primitive_rep(lattice);
  return {rep.index(), smith_type(rep)};
}

OrbitInvariants orbit_invariants(const RationalMatrix& basis) {
  return orbit_invariants(clear_denominators(basis));
}

IntegerLattice clear_denominators(const RationalMatrix& basis) {
  if (!basis.square() || basis.rows() == 0) throw std::invalid_argument("basis must be a nonempty square matrix");
  BigInt l = 1;
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < basis.cols(); ++j) l = big_lcm(l, denominator(basis(i, j)));
  IntMatrix m(basis.rows(), basis.cols());
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < basis.cols(); ++j) m(i, j) = numerator(basis(i, j)) * (l / denominator(basis(i, j)));
  return IntegerLattice(m);
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (!m.square()) throw std::invalid_argument("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw Singular("basis is singular");
    a.swap_rows(c, p);
    inv.swap_rows(c, p);
    BigRational pivot = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= pivot;
      inv(c, j) /= pivot;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      BigRational f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

BigRational covol_axis(const RationalMatrix& basis, std::size_t axis) {
  if (axis >= basis.rows()) throw std::invalid_argument("axis out of range");
  // c e_axis = k B  <=>  k = c * (row `axis` of B^-1); write that row as w / D
  // with w integral, then the admissible c form (D / gcd(w)) Z.
  RationalMatrix inv = inverse(basis);
  const std::size_t n = basis.rows();
  BigInt d = 1;
  for (std::size_t j = 0; j < n; ++j) d = big_lcm(d, denominator(inv(axis, j)));
  BigInt g = 0;
  for (std::size_t j = 0; j < n; ++j) g = big_gcd(g, numerator(inv(axis, j)) * (d / denominator(inv(axis, j))));
  return BigRational(d, g);
}

BigInt covol_axis(const IntegerLattice& lattice, std::size_t axis) {
  BigRational c = covol_axis(to_rational(lattice.basis()), axis);
  return numerator(c);
}

double log_of(const BigRational& x) {
  if (x <= 0) throw std::invalid_argument("log of a non-positive number");
  auto log_big = [](const BigInt& v) {
    std::size_t bits = msb(v);
    if (bits < 1000) return std::log(static_cast<double>(v));
    std::size_t shift = bits - 60;
    return std::log(static_cast<double>(BigInt(v >> shift))) + static_cast<double>(shift) * std::log(2.0);
  };
  return log_big(numerator(x)) - log_big(denominator(x));
}

double tau(const RationalMatrix& basis) {
  double s = 0;
  for (std::size_t i = 0; i < basis.rows(); ++i) s += log_of(covol_axis(basis, i));
  return s / static_cast<double>(basis.rows());
}

Region a_region(const RationalMatrix& basis) {
  std::vector<double> lower(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) lower[i] = -log_of(covol_axis(basis, i));
  return Region::axis(std::move(lower));
}

}  // namespace divorb
