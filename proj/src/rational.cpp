#include "semipovm/rational.hpp"

#include <cctype>

namespace semipovm {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  // Validate shape by hand: optional leading '-', digits, optional "/" and an
  // unsigned denominator. mpq_class::set_str accepts whitespace, '+' signs and
  // other bases; the interchange grammar is exactly "p", "-p", "p/q".
  auto check_int = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = (allow_sign && t[0] == '-') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!check_int(text, true)) throw ParseError("bad rational literal: " + text);
    Rational q;
    if (q.set_str(text, 10) != 0) throw ParseError("bad rational literal: " + text);
    q.canonicalize();
    return q;
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!check_int(num, true) || !check_int(den, false))
    throw ParseError("bad rational literal: " + text);
  Integer n, d;
  if (n.set_str(num, 10) != 0 || d.set_str(den, 10) != 0)
    throw ParseError("bad rational literal: " + text);
  if (d == 0) throw ParseError("zero denominator in rational literal: " + text);
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational pow2_rational(long e) {
  Integer z = 1;
  if (e >= 0) {
    z <<= static_cast<unsigned long>(e);
    return Rational(z);
  }
  z <<= static_cast<unsigned long>(-e);
  Rational q(1, z);
  q.canonicalize();
  return q;
}

long floor_log2(const Rational& x) {
  if (x <= 0) throw Error("floor_log2 requires a positive argument");
  const Integer& p = x.get_num();
  const Integer& q = x.get_den();
  // First guess from bit lengths, then correct by exact comparison.
  long e = static_cast<long>(mpz_sizeinbase(p.get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(q.get_mpz_t(), 2));
  auto geq_pow2 = [&](long k) {
    // x >= 2^k  <=>  p >= q * 2^k (k >= 0)  or  p * 2^-k >= q (k < 0)
    Integer lhs = p, rhs = q;
    if (k >= 0)
      rhs <<= static_cast<unsigned long>(k);
    else
      lhs <<= static_cast<unsigned long>(-k);
    return lhs >= rhs;
  };
  while (!geq_pow2(e)) --e;
  while (geq_pow2(e + 1)) ++e;
  return e;
}

bool is_power_of_two(const Rational& x) {
  if (x <= 0) return false;
  const Integer& p = x.get_num();
  const Integer& q = x.get_den();
  auto pow2 = [](const Integer& z) {
    return mpz_popcount(z.get_mpz_t()) == 1;
  };
  return (q == 1 && pow2(p)) || (p == 1 && pow2(q));
}

std::string format_complex(const ComplexRational& z) {
  if (z.im == 0) return format_rational(z.re);
  std::string im = format_rational(z.im) + "i";
  if (z.re == 0) return im;
  if (z.im > 0) return format_rational(z.re) + "+" + im;
  return format_rational(z.re) + im;  // the sign rides along with im
}

}  // namespace semipovm
