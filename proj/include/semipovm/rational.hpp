#pragma once
// Exact rational scalars: GMP-backed rationals kept in canonical reduced form
// (positive denominator, gcd(num, den) = 1) plus complex rationals a + ib.
// Everything downstream (matrices, orders, probabilities) is built on these,
// so equality here is true mathematical equality.
#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "semipovm/errors.hpp"

namespace semipovm {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p", "-p", "p/q" (decimal). Canonicalizes. Rejects empty input,
// stray characters and zero denominators with ParseError.
Rational parse_rational(const std::string& text);

// Canonical rendering: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& q);

// 2^e for any sign of e.
Rational pow2_rational(long e);

// floor(log2 x) for x > 0, computed exactly.
long floor_log2(const Rational& x);

// True iff x = 2^e for some integer e (x > 0).
bool is_power_of_two(const Rational& x);

inline int sign_of(const Rational& x) { return sgn(x); }

// a + ib with exact rational a, b.
struct ComplexRational {
  Rational re;
  Rational im;

  ComplexRational() : re(0), im(0) {}
  ComplexRational(const Rational& r) : re(r), im(0) {}  // NOLINT(implicit)
  ComplexRational(long r) : re(r), im(0) {}             // NOLINT(implicit)
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  ComplexRational conj() const { return ComplexRational(re, Rational(-im)); }
  // |z|^2, a nonnegative rational.
  Rational norm2() const { return Rational(re * re + im * im); }

  ComplexRational& operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexRational& operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return ComplexRational(Rational(a.re + b.re), Rational(a.im + b.im));
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return ComplexRational(Rational(a.re - b.re), Rational(a.im - b.im));
  }
  friend ComplexRational operator-(const ComplexRational& a) {
    return ComplexRational(Rational(-a.re), Rational(-a.im));
  }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return ComplexRational(Rational(a.re * b.re - a.im * b.im),
                           Rational(a.re * b.im + a.im * b.re));
  }
  // Exact complex division; DimensionError on division by zero.
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
    Rational n2 = b.norm2();
    if (n2 == 0) throw Error("complex division by zero");
    ComplexRational num = a * b.conj();
    return ComplexRational(Rational(num.re / n2), Rational(num.im / n2));
  }
  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) {
    return !(a == b);
  }
};

// "a", "bi", or "a+bi"/"a-bi" — for diagnostics only.
std::string format_complex(const ComplexRational& z);

}  // namespace semipovm
