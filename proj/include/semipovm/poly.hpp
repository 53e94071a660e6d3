#pragma once
// Univariate polynomials over the rationals with exact Sturm-sequence root
// counting and bisection-based root enclosure. Used on characteristic
// polynomials of Hermitian matrices, whose roots (eigenvalues) are real.
#include <vector>

#include "semipovm/interval.hpp"
#include "semipovm/rational.hpp"

namespace semipovm {

// Coefficients low to high; c.back() != 0 unless the polynomial is zero
// (empty coefficient vector).
struct RationalPoly {
  std::vector<Rational> c;

  static RationalPoly zero() { return RationalPoly{}; }
  static RationalPoly from_coeffs(std::vector<Rational> coeffs);

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
  const Rational& leading() const;
  Rational eval(const Rational& x) const;
  RationalPoly derivative() const;
};

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b);
RationalPoly operator-(const RationalPoly& a, const RationalPoly& b);
RationalPoly operator*(const RationalPoly& a, const RationalPoly& b);
bool operator==(const RationalPoly& a, const RationalPoly& b);

// Exact polynomial division: a = q*b + r with deg r < deg b. b != 0.
struct PolyDivMod {
  RationalPoly quot;
  RationalPoly rem;
};
PolyDivMod divmod(const RationalPoly& a, const RationalPoly& b);

// Monic gcd via the Euclidean algorithm.
RationalPoly poly_gcd(RationalPoly a, RationalPoly b);

// p / gcd(p, p'): same roots, all simple. (Root multiplicity is irrelevant
// for the sign and enclosure questions asked here.)
RationalPoly squarefree_part(const RationalPoly& p);

// Sturm chain of a squarefree polynomial: p, p', then negated remainders,
// each rescaled by a positive constant (which preserves sign variations).
std::vector<RationalPoly> sturm_chain(const RationalPoly& squarefree);

// Number of sign changes in the chain evaluated at x (zeros skipped).
int sign_variations_at(const std::vector<RationalPoly>& chain, const Rational& x);

// Number of roots of the squarefree polynomial in the half-open interval
// (a, b], for a < b, as V(a) - V(b).
int count_roots_in(const std::vector<RationalPoly>& chain, const Rational& a,
                   const Rational& b);

// Cauchy bound: every complex (hence real) root has |root| < bound.
Rational cauchy_root_bound(const RationalPoly& p);

// Enclosure of the largest real root of a squarefree polynomial with at least
// one real root, width <= 2^-k; a point interval when bisection lands on the
// root exactly. Error if no real root exists.
RationalInterval largest_root_enclosure(const RationalPoly& squarefree, unsigned k);

// Enclosure of the smallest real root (mirror of the above).
RationalInterval smallest_root_enclosure(const RationalPoly& squarefree, unsigned k);

// Sign of the smallest real root: -1, 0 or +1. Error if no real root exists.
int smallest_root_sign(const RationalPoly& squarefree);

}  // namespace semipovm
