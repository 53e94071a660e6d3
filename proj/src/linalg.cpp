#include "semipovm/linalg.hpp"

#include <algorithm>
#include <vector>

namespace semipovm {

HermitianMatrix hermitize(const ComplexMatrix& g) {
  if (g.dim() == 0) throw DimensionError("hermitize of an empty matrix");
  ComplexMatrix h = g + g.adjoint();
  const ComplexRational half(Rational(1, 2));
  return HermitianMatrix::trusted(half * h);
}

ComplexRational det(const ComplexMatrix& a) {
  int n = a.dim();
  if (n == 0) return ComplexRational(1);
  std::vector<std::vector<ComplexRational>> m(n, std::vector<ComplexRational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = a.at(i, j);
  ComplexRational result(1);
  int sign = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int row = col; row < n; ++row)
      if (!m[row][col].is_zero()) {
        pivot = row;
        break;
      }
    if (pivot < 0) return ComplexRational(0);
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      sign = -sign;
    }
    result = result * m[col][col];
    ComplexRational inv = ComplexRational(1) / m[col][col];
    for (int row = col + 1; row < n; ++row) {
      if (m[row][col].is_zero()) continue;
      ComplexRational f = m[row][col] * inv;
      for (int j = col; j < n; ++j) m[row][j] -= f * m[col][j];
    }
  }
  if (sign < 0) result = -result;
  return result;
}

namespace {

ComplexMatrix principal_submatrix(const HermitianMatrix& a, unsigned mask) {
  std::vector<int> keep;
  for (int i = 0; i < a.dim(); ++i)
    if (mask & (1u << i)) keep.push_back(i);
  ComplexMatrix s(static_cast<int>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      s.set(static_cast<int>(i), static_cast<int>(j), a.at(keep[i], keep[j]));
  return s;
}

Rational real_det(const ComplexMatrix& m) {
  ComplexRational d = det(m);
  if (d.im != 0) throw Error("principal minor of a Hermitian matrix came out non-real");
  return d.re;
}

}  // namespace

bool is_psd(const HermitianMatrix& a) {
  int n = a.dim();
  if (n == 0) return true;
  if (n > 30) throw UnsupportedError("is_psd limited to desk-scale dimensions");
  // Cheap necessary screens first: the diagonal of a PSD matrix is
  // nonnegative and a zero diagonal entry forces its whole row to vanish.
  for (int i = 0; i < n; ++i) {
    const ComplexRational& d = a.at(i, i);
    if (d.im != 0 || d.re < 0) return false;
  }
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (real_det(principal_submatrix(a, mask)) < 0) return false;
  }
  return true;
}

bool is_pd(const HermitianMatrix& a) {
  int n = a.dim();
  for (int k = 1; k <= n; ++k) {
    unsigned mask = (k == 32) ? 0xffffffffu : ((1u << k) - 1);
    if (real_det(principal_submatrix(a, mask)) <= 0) return false;
  }
  return n > 0;
}

bool loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("Loewner comparison dimension mismatch");
  return is_psd(b - a);
}

RationalPoly charpoly(const HermitianMatrix& a) {
  int n = a.dim();
  // Faddeev-LeVerrier: M <- I; repeat AM = A*M, c_{N-k} = -tr(AM)/k,
  // M <- AM + c_{N-k} I. Exact over the rationals.
  std::vector<Rational> c(static_cast<std::size_t>(n) + 1, Rational(0));
  c[n] = 1;
  ComplexMatrix m = ComplexMatrix::identity(n);
  for (int k = 1; k <= n; ++k) {
    ComplexMatrix am = a.matrix() * m;
    ComplexRational tr = am.trace();
    if (tr.im != 0) throw Error("characteristic polynomial came out non-real");
    Rational ck(-tr.re / k);
    c[n - k] = ck;
    ComplexMatrix shift = ComplexRational(ck) * ComplexMatrix::identity(n);
    m = am + shift;
  }
  return RationalPoly::from_coeffs(std::move(c));
}

int min_eigenvalue_sign(const HermitianMatrix& a) {
  if (a.dim() == 0) return 1;
  RationalPoly q = squarefree_part(charpoly(a));
  return smallest_root_sign(q);
}

RationalInterval max_eigenvalue_bounds(const HermitianMatrix& a, unsigned k) {
  if (a.is_diagonal()) {
    Rational best = a.at(0, 0).re;
    for (int i = 1; i < a.dim(); ++i) best = std::max(best, a.at(i, i).re);
    return RationalInterval::point(best);
  }
  RationalPoly q = squarefree_part(charpoly(a));
  return largest_root_enclosure(q, k);
}

RationalInterval min_eigenvalue_bounds(const HermitianMatrix& a, unsigned k) {
  if (a.is_diagonal()) {
    Rational best = a.at(0, 0).re;
    for (int i = 1; i < a.dim(); ++i) best = std::min(best, a.at(i, i).re);
    return RationalInterval::point(best);
  }
  RationalPoly q = squarefree_part(charpoly(a));
  return smallest_root_enclosure(q, k);
}

RationalInterval operator_norm_bounds(const HermitianMatrix& a, unsigned k) {
  if (a.dim() == 0 || a.is_zero()) return RationalInterval::point(Rational(0));
  if (a.is_diagonal()) {
    Rational best(0);
    for (int i = 0; i < a.dim(); ++i) best = std::max(best, Rational(abs(a.at(i, i).re)));
    return RationalInterval::point(best);
  }
  // norm = max(lambda_max, -lambda_min); each enclosure at width 2^-(k+1)
  // keeps the max within 2^-k.
  RationalInterval top = max_eigenvalue_bounds(a, k + 1);
  RationalInterval bot = min_eigenvalue_bounds(a, k + 1);
  RationalInterval result = interval_max(top, -bot);
  if (result.lo < 0) result.lo = 0;  // the norm is nonnegative
  return result;
}

ComplexMatrix commutator(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("commutator dimension mismatch");
  return a.matrix() * b.matrix() - b.matrix() * a.matrix();
}

bool is_unitary(const ComplexMatrix& u) {
  return u.adjoint() * u == ComplexMatrix::identity(u.dim());
}

HermitianMatrix conjugate(const ComplexMatrix& u, const HermitianMatrix& a) {
  if (u.dim() != a.dim()) throw DimensionError("conjugation dimension mismatch");
  if (!is_unitary(u)) throw ValidationError("conjugator is not unitary");
  ComplexMatrix r = u.adjoint() * a.matrix() * u;
  return HermitianMatrix(std::move(r));  // checked: exact algebra keeps it Hermitian
}

}  // namespace semipovm
