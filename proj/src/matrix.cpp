#include "semipovm/matrix.hpp"

namespace semipovm {

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, ComplexRational(1));
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r.set(i, j, at(j, i).conj());
  return r;
}

ComplexRational ComplexMatrix::trace() const {
  ComplexRational t;
  for (int i = 0; i < n_; ++i) t += at(i, i);
  return t;
}

bool ComplexMatrix::is_hermitian() const {
  for (int i = 0; i < n_; ++i)
    for (int j = i; j < n_; ++j)
      if (at(i, j) != at(j, i).conj()) return false;
  return true;
}

bool ComplexMatrix::is_zero() const {
  for (const auto& z : a_)
    if (!z.is_zero()) return false;
  return true;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.n_ != b.n_) throw DimensionError("matrix addition dimension mismatch");
  ComplexMatrix r(a.n_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
  return r;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.n_ != b.n_) throw DimensionError("matrix subtraction dimension mismatch");
  ComplexMatrix r(a.n_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
  return r;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.n_ != b.n_) throw DimensionError("matrix product dimension mismatch");
  int n = a.n_;
  ComplexMatrix r(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      const ComplexRational& aik = a.at(i, k);
      if (aik.is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (b.at(k, j).is_zero()) continue;
        r.a_[static_cast<std::size_t>(i) * n + j] += aik * b.at(k, j);
      }
    }
  return r;
}

ComplexMatrix operator*(const ComplexRational& s, const ComplexMatrix& a) {
  ComplexMatrix r(a.n_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = s * a.a_[i];
  return r;
}

HermitianMatrix::HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_hermitian())
    throw ValidationError("matrix is not Hermitian");
}

HermitianMatrix HermitianMatrix::diagonal(const std::vector<Rational>& d) {
  ComplexMatrix m(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    m.set(static_cast<int>(i), static_cast<int>(i), ComplexRational(d[i]));
  return trusted(std::move(m));
}

bool HermitianMatrix::is_diagonal() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = 0; j < dim(); ++j)
      if (i != j && !at(i, j).is_zero()) return false;
  return true;
}

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::trusted(a.m_ + b.m_);
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix::trusted(a.m_ - b.m_);
}

HermitianMatrix operator*(const Rational& s, const HermitianMatrix& a) {
  return HermitianMatrix::trusted(ComplexRational(s) * a.m_);
}

}  // namespace semipovm
