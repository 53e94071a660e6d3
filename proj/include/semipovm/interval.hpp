#pragma once
// Certified rational enclosures. All exact quantities stay rational; the only
// irrational numbers in the library (operator norms, eigenvalues, base-2
// logarithms, square roots) are returned as intervals [lo, hi] with lo <= hi
// that provably contain the true value, with caller-chosen width 2^-k.
#include <string>

#include "semipovm/rational.hpp"

namespace semipovm {

struct RationalInterval {
  Rational lo;
  Rational hi;

  RationalInterval() : lo(0), hi(0) {}
  RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw Error("interval endpoints out of order");
  }
  static RationalInterval point(const Rational& r) { return RationalInterval(r, r); }

  Rational width() const { return Rational(hi - lo); }
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& r) const { return lo <= r && r <= hi; }
  bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }

  friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
    return RationalInterval(Rational(a.lo + b.lo), Rational(a.hi + b.hi));
  }
  friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
    return RationalInterval(Rational(a.lo - b.hi), Rational(a.hi - b.lo));
  }
  friend RationalInterval operator-(const RationalInterval& a) {
    return RationalInterval(Rational(-a.hi), Rational(-a.lo));
  }
  friend RationalInterval operator+(const RationalInterval& a, const Rational& r) {
    return RationalInterval(Rational(a.lo + r), Rational(a.hi + r));
  }
  friend bool operator==(const RationalInterval& a, const RationalInterval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// Sign-aware scaling: r may be negative.
RationalInterval scale(const RationalInterval& a, const Rational& r);
// Full interval product (min/max over endpoint products).
RationalInterval mul(const RationalInterval& a, const RationalInterval& b);
// a / b for b sign-definite (0 not in [b.lo, b.hi]); Error otherwise.
RationalInterval div(const RationalInterval& a, const RationalInterval& b);
// Enclosure of max(x, y) for x in a, y in b.
RationalInterval interval_max(const RationalInterval& a, const RationalInterval& b);
// Smallest interval containing both.
RationalInterval hull(const RationalInterval& a, const RationalInterval& b);

// Enclosure of log2(x) for rational x > 0, width <= 2^-k. Returns a point
// interval when x is a power of two. Repeated fixed-point squaring with
// directed rounding; exact integer arithmetic throughout.
RationalInterval log2_interval(const Rational& x, unsigned k);

// Enclosure of -log2(x), same guarantees.
RationalInterval neg_log2_interval(const Rational& x, unsigned k);

// Enclosure of sqrt(x) for rational x >= 0, width <= 2^-k. Returns a point
// interval when x is the square of a rational.
RationalInterval sqrt_interval(const Rational& x, unsigned k);

std::string format_interval(const RationalInterval& iv);  // "lo:hi", exact

}  // namespace semipovm
