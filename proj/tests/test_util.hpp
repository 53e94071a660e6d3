#pragma once
// Deterministic random generators for tests. Everything produced here is
// exact: unit vectors and unitaries are built from Pythagorean-triple Givens
// rotations and rational unimodular phases, so norms and unitarity hold as
// rational identities, not approximations.
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "semipovm/ait.hpp"
#include "semipovm/matrix.hpp"
#include "semipovm/povm.hpp"
#include "semipovm/rational.hpp"

namespace testutil {

using semipovm::ComplexMatrix;
using semipovm::ComplexRational;
using semipovm::HermitianMatrix;
using semipovm::OperatorMap;
using semipovm::Rational;

inline Rational make_rat(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rand_rational(std::mt19937_64& rng, long lim = 6) {
  std::uniform_int_distribution<long> num(-lim, lim);
  std::uniform_int_distribution<long> den(1, lim);
  return make_rat(num(rng), den(rng));
}

inline ComplexRational rand_complex(std::mt19937_64& rng, long lim = 6) {
  Rational re = rand_rational(rng, lim);
  Rational im = rand_rational(rng, lim);
  return ComplexRational(re, im);
}

inline ComplexMatrix rand_square(std::mt19937_64& rng, int n, long lim = 4) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.set(i, j, rand_complex(rng, lim));
  return m;
}

inline HermitianMatrix rand_hermitian(std::mt19937_64& rng, int n, long lim = 4) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) {
    m.set(i, i, ComplexRational(rand_rational(rng, lim)));
    for (int j = i + 1; j < n; ++j) {
      ComplexRational z = rand_complex(rng, lim);
      m.set(i, j, z);
      m.set(j, i, z.conj());
    }
  }
  return HermitianMatrix(std::move(m));
}

// B^dagger B: positive semidefinite by construction.
inline HermitianMatrix rand_gram(std::mt19937_64& rng, int n, long lim = 3) {
  ComplexMatrix b = rand_square(rng, n, lim);
  return HermitianMatrix::trusted(b.adjoint() * b);
}

// (c, s, h) with c^2 + s^2 = h^2: cos = c/h, sin = s/h are exact.
inline std::pair<Rational, Rational> rand_cos_sin(std::mt19937_64& rng) {
  static const long kTriples[][3] = {
      {3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {20, 21, 29}, {7, 24, 25}};
  std::uniform_int_distribution<int> pick(0, 4);
  std::uniform_int_distribution<int> flip(0, 1);
  const long* t = kTriples[pick(rng)];
  Rational c = make_rat(t[0], t[2]);
  Rational s = make_rat(t[1], t[2]);
  if (flip(rng)) std::swap(c, s);
  if (flip(rng)) s = -s;
  return {c, s};
}

// Unimodular rational phase: |z|^2 == 1 exactly.
inline ComplexRational rand_phase(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 3);
  switch (pick(rng)) {
    case 0: return ComplexRational(1);
    case 1: return ComplexRational(Rational(0), Rational(1));
    case 2: {
      auto [c, s] = rand_cos_sin(rng);
      return ComplexRational(c, s);
    }
    default: return ComplexRational(-1);
  }
}

// Product of exact Givens rotations and phase matrices: U^dagger U == I holds
// as a rational identity.
inline ComplexMatrix rand_unitary(std::mt19937_64& rng, int n, int rounds = 5) {
  ComplexMatrix u = ComplexMatrix::identity(n);
  std::uniform_int_distribution<int> row(0, n - 1);
  for (int r = 0; r < rounds; ++r) {
    if (n >= 2) {
      int i = row(rng), j = row(rng);
      while (j == i) j = row(rng);
      auto [c, s] = rand_cos_sin(rng);
      ComplexMatrix g = ComplexMatrix::identity(n);
      g.set(i, i, ComplexRational(c));
      g.set(j, j, ComplexRational(c));
      g.set(i, j, ComplexRational(s));
      g.set(j, i, ComplexRational(Rational(-s)));
      u = g * u;
    }
    ComplexMatrix d = ComplexMatrix::identity(n);
    int k = row(rng);
    d.set(k, k, rand_phase(rng));
    u = d * u;
  }
  return u;
}

// Exact unit vector: a basis vector pushed around by rotations and phases.
inline std::vector<ComplexRational> rand_unit_vector(std::mt19937_64& rng, int n,
                                                     int rounds = 4) {
  std::vector<ComplexRational> v(static_cast<std::size_t>(n));
  std::uniform_int_distribution<int> row(0, n - 1);
  v[static_cast<std::size_t>(row(rng))] = ComplexRational(1);
  for (int r = 0; r < rounds; ++r) {
    if (n >= 2) {
      int i = row(rng), j = row(rng);
      while (j == i) j = row(rng);
      auto [c, s] = rand_cos_sin(rng);
      ComplexRational vi = v[static_cast<std::size_t>(i)];
      ComplexRational vj = v[static_cast<std::size_t>(j)];
      v[static_cast<std::size_t>(i)] = ComplexRational(c) * vi + ComplexRational(s) * vj;
      v[static_cast<std::size_t>(j)] =
          ComplexRational(Rational(-s)) * vi + ComplexRational(c) * vj;
    }
    int i = row(rng);
    v[static_cast<std::size_t>(i)] = rand_phase(rng) * v[static_cast<std::size_t>(i)];
  }
  return v;
}

// Random family of PSD matrices scaled so the total trace is < 1: always a
// valid sub-normalized measurement family.
inline OperatorMap rand_semipovm(std::mt19937_64& rng, int n, int count, long lim = 2) {
  std::vector<std::pair<std::string, HermitianMatrix>> elems;
  std::vector<HermitianMatrix> raw;
  Rational total(0);
  for (int i = 0; i < count; ++i) {
    HermitianMatrix g = rand_gram(rng, n, lim);
    total += g.trace_real();
    raw.push_back(g);
  }
  Rational scale = Rational(1) / (total + 1);
  std::vector<std::string> labels =
      semipovm::first_strings(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    elems.emplace_back(labels[static_cast<std::size_t>(i)],
                       scale * raw[static_cast<std::size_t>(i)]);
  return OperatorMap::make(n, std::move(elems));
}

}  // namespace testutil
