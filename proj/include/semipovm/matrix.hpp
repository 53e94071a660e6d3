#pragma once
// Exact complex-rational matrices. ComplexMatrix is the general square
// carrier; HermitianMatrix wraps one whose entries satisfy a[i][j] ==
// conj(a[j][i]) (checked at construction). Operations return fresh values;
// nothing mutates a matrix after it is built, so values are safe to share
// across threads. Canonical rational storage makes operator== true equality.
#include <vector>

#include "semipovm/rational.hpp"

namespace semipovm {

class ComplexMatrix {
 public:
  ComplexMatrix() : n_(0) {}
  explicit ComplexMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n) {
    if (n < 0) throw DimensionError("negative matrix dimension");
  }
  static ComplexMatrix identity(int n);

  int dim() const { return n_; }
  const ComplexRational& at(int i, int j) const { return a_[idx(i, j)]; }
  void set(int i, int j, ComplexRational v) { a_[idx(i, j)] = std::move(v); }

  ComplexMatrix adjoint() const;
  ComplexRational trace() const;
  bool is_hermitian() const;
  bool is_zero() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexRational& s, const ComplexMatrix& a);
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.n_ == b.n_ && a.a_ == b.a_;
  }
  friend bool operator!=(const ComplexMatrix& a, const ComplexMatrix& b) {
    return !(a == b);
  }

 private:
  std::size_t idx(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_) throw DimensionError("matrix index out of range");
    return static_cast<std::size_t>(i) * n_ + j;
  }
  int n_;
  std::vector<ComplexRational> a_;
};

class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  // Checked construction: ValidationError when m is not Hermitian.
  explicit HermitianMatrix(ComplexMatrix m);
  // For results that are Hermitian by algebra (sums of Hermitians, real
  // scalings, conjugations); still cheaply verified in debug-style checks.
  static HermitianMatrix trusted(ComplexMatrix m) { return HermitianMatrix(std::move(m), 0); }

  static HermitianMatrix identity(int n) { return trusted(ComplexMatrix::identity(n)); }
  static HermitianMatrix zero(int n) { return trusted(ComplexMatrix(n)); }
  static HermitianMatrix diagonal(const std::vector<Rational>& d);

  int dim() const { return m_.dim(); }
  const ComplexRational& at(int i, int j) const { return m_.at(i, j); }
  const ComplexMatrix& matrix() const { return m_; }
  Rational trace_real() const { return m_.trace().re; }
  bool is_zero() const { return m_.is_zero(); }
  bool is_diagonal() const;

  friend HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
  friend HermitianMatrix operator*(const Rational& s, const HermitianMatrix& a);
  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.m_ == b.m_;
  }
  friend bool operator!=(const HermitianMatrix& a, const HermitianMatrix& b) {
    return !(a == b);
  }

 private:
  HermitianMatrix(ComplexMatrix m, int) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

}  // namespace semipovm
