#include "semipovm/interval.hpp"

#include <algorithm>

namespace semipovm {

RationalInterval scale(const RationalInterval& a, const Rational& r) {
  if (r >= 0) return RationalInterval(Rational(a.lo * r), Rational(a.hi * r));
  return RationalInterval(Rational(a.hi * r), Rational(a.lo * r));
}

RationalInterval mul(const RationalInterval& a, const RationalInterval& b) {
  Rational p1(a.lo * b.lo), p2(a.lo * b.hi), p3(a.hi * b.lo), p4(a.hi * b.hi);
  Rational lo = std::min(std::min(p1, p2), std::min(p3, p4));
  Rational hi = std::max(std::max(p1, p2), std::max(p3, p4));
  return RationalInterval(lo, hi);
}

RationalInterval div(const RationalInterval& a, const RationalInterval& b) {
  if (b.lo <= 0 && b.hi >= 0) throw Error("interval division by an interval containing zero");
  RationalInterval recip(Rational(1 / b.hi), Rational(1 / b.lo));
  return mul(a, recip);
}

RationalInterval interval_max(const RationalInterval& a, const RationalInterval& b) {
  return RationalInterval(std::max(a.lo, b.lo), std::max(a.hi, b.hi));
}

RationalInterval hull(const RationalInterval& a, const RationalInterval& b) {
  return RationalInterval(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

namespace {

// Enclosure of log2(y) for y in [1, 2), y != 1, to width <= 2^-k.
//
// Each endpoint is tracked as an exact dyadic m/2^F in [1, 2) times 2^(e/2^i)
// after i squarings: squaring doubles the pending exponent, a conditional
// renormalization re-enters [1, 2) and bumps the endpoint's own integer
// exponent. Rounding is directed (floor for the lower endpoint, ceil for the
// upper), so after K squarings
//   elo / 2^K  <=  log2(y)  <=  (ehi + 1) / 2^K.
RationalInterval log2_mantissa(const Rational& y, unsigned k) {
  for (unsigned frac_bits = k + 32;; frac_bits *= 2) {
    const unsigned K = k + 2;
    Integer one;
    mpz_ui_pow_ui(one.get_mpz_t(), 2, frac_bits);  // 2^F
    Integer two_f1 = one << 1;                     // 2^(F+1)
    // mlo/2^F <= y <= mhi/2^F
    Integer mlo = (y.get_num() << frac_bits) / y.get_den();  // floor
    Integer mhi = mlo;
    if (Rational(mlo, one) != y) mhi = mlo + 1;
    long elo = 0, ehi = 0;
    for (unsigned i = 0; i < K; ++i) {
      elo *= 2;
      ehi *= 2;
      mlo = (mlo * mlo) >> frac_bits;  // floor
      Integer t = mhi * mhi;
      mpz_cdiv_q_2exp(mhi.get_mpz_t(), t.get_mpz_t(), frac_bits);  // ceil
      if (mlo >= two_f1) {
        mpz_fdiv_q_2exp(mlo.get_mpz_t(), mlo.get_mpz_t(), 1);
        ++elo;
      }
      if (mhi >= two_f1) {
        Integer h = mhi;
        mpz_cdiv_q_2exp(mhi.get_mpz_t(), h.get_mpz_t(), 1);
        ++ehi;
      }
    }
    Rational denom = pow2_rational(static_cast<long>(K));
    Rational lo = Rational(elo) / denom;
    Rational hi = Rational(ehi + 1) / denom;
    if (hi - lo <= pow2_rational(-static_cast<long>(k)))
      return RationalInterval(lo, hi);
    // Guard bits were insufficient (does not happen in practice); retry wider.
  }
}

}  // namespace

RationalInterval log2_interval(const Rational& x, unsigned k) {
  if (x <= 0) throw Error("log2 of a non-positive rational");
  long e = floor_log2(x);
  Rational y(x / pow2_rational(e));  // y in [1, 2)
  if (y == 1) return RationalInterval::point(Rational(e));
  RationalInterval frac = log2_mantissa(y, k);
  return frac + Rational(e);
}

RationalInterval neg_log2_interval(const Rational& x, unsigned k) {
  return -log2_interval(x, k);
}

RationalInterval sqrt_interval(const Rational& x, unsigned k) {
  if (x < 0) throw Error("sqrt of a negative rational");
  if (x == 0) return RationalInterval::point(Rational(0));
  // sqrt(p/q) = sqrt(p*q)/q; scale by 4^j so the unit step is below 2^-k.
  const Integer& p = x.get_num();
  const Integer& q = x.get_den();
  unsigned long j = k + 1;
  Integer m = p * q;
  m <<= 2 * j;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());  // floor sqrt
  Integer den = q << j;
  Rational lo(r, den);
  lo.canonicalize();
  if (r * r == m) return RationalInterval::point(lo);
  Rational hi(r + 1, den);
  hi.canonicalize();
  return RationalInterval(lo, hi);
}

std::string format_interval(const RationalInterval& iv) {
  return format_rational(iv.lo) + ":" + format_rational(iv.hi);
}

}  // namespace semipovm
