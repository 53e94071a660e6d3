#include "semipovm/poly.hpp"

#include <algorithm>

namespace semipovm {

namespace {

void trim(std::vector<Rational>& c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

// Rescale to an integer polynomial with content 1 (positive scale only, so
// all sign information is preserved). Keeps Sturm chains small.
void make_primitive(RationalPoly& p) {
  if (p.is_zero()) return;
  Integer den_lcm = 1;
  for (const auto& q : p.c) {
    Integer d = q.get_den();
    Integer g;
    mpz_gcd(g.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
    den_lcm = den_lcm / g * d;
  }
  Integer content = 0;
  std::vector<Integer> ints;
  ints.reserve(p.c.size());
  for (const auto& q : p.c) {
    Integer v = q.get_num() * (den_lcm / q.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    ints.push_back(v);
  }
  if (content == 0) content = 1;
  for (std::size_t i = 0; i < ints.size(); ++i) {
    Rational q(ints[i] / content);
    p.c[i] = q;
  }
}

}  // namespace

RationalPoly RationalPoly::from_coeffs(std::vector<Rational> coeffs) {
  trim(coeffs);
  return RationalPoly{std::move(coeffs)};
}

const Rational& RationalPoly::leading() const {
  if (is_zero()) throw Error("leading coefficient of the zero polynomial");
  return c.back();
}

Rational RationalPoly::eval(const Rational& x) const {
  Rational acc(0);
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RationalPoly RationalPoly::derivative() const {
  if (c.size() <= 1) return zero();
  std::vector<Rational> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = Rational(c[i] * static_cast<long>(i));
  trim(d);
  return RationalPoly{std::move(d)};
}

RationalPoly operator+(const RationalPoly& a, const RationalPoly& b) {
  std::vector<Rational> r(std::max(a.c.size(), b.c.size()), Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
  trim(r);
  return RationalPoly{std::move(r)};
}

RationalPoly operator-(const RationalPoly& a, const RationalPoly& b) {
  std::vector<Rational> r(std::max(a.c.size(), b.c.size()), Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
  for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
  trim(r);
  return RationalPoly{std::move(r)};
}

RationalPoly operator*(const RationalPoly& a, const RationalPoly& b) {
  if (a.is_zero() || b.is_zero()) return RationalPoly::zero();
  std::vector<Rational> r(a.c.size() + b.c.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c.size(); ++i)
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  trim(r);
  return RationalPoly{std::move(r)};
}

bool operator==(const RationalPoly& a, const RationalPoly& b) { return a.c == b.c; }

PolyDivMod divmod(const RationalPoly& a, const RationalPoly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  std::vector<Rational> rem = a.c;
  std::vector<Rational> quot;
  int db = b.degree();
  if (a.degree() >= db) quot.assign(a.degree() - db + 1, Rational(0));
  while (static_cast<int>(rem.size()) - 1 >= db) {
    trim(rem);
    if (static_cast<int>(rem.size()) - 1 < db) break;
    std::size_t dr = rem.size() - 1;
    Rational coef(rem.back() / b.leading());
    quot[dr - db] = coef;
    for (int i = 0; i <= db; ++i)
      rem[dr - db + i] -= coef * b.c[i];
    rem.pop_back();  // leading term cancels exactly
  }
  trim(rem);
  trim(quot);
  return PolyDivMod{RationalPoly{std::move(quot)}, RationalPoly{std::move(rem)}};
}

RationalPoly poly_gcd(RationalPoly a, RationalPoly b) {
  make_primitive(a);
  make_primitive(b);
  while (!b.is_zero()) {
    RationalPoly r = divmod(a, b).rem;
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  // Monic normalization.
  Rational lead = a.leading();
  for (auto& q : a.c) q /= lead;
  return a;
}

RationalPoly squarefree_part(const RationalPoly& p) {
  if (p.degree() <= 1) return p;
  RationalPoly g = poly_gcd(p, p.derivative());
  if (g.degree() <= 0) return p;
  return divmod(p, g).quot;
}

std::vector<RationalPoly> sturm_chain(const RationalPoly& squarefree) {
  std::vector<RationalPoly> chain;
  if (squarefree.is_zero()) return chain;
  chain.push_back(squarefree);
  RationalPoly d = squarefree.derivative();
  if (d.is_zero()) return chain;
  chain.push_back(d);
  while (true) {
    const RationalPoly& p2 = chain[chain.size() - 2];
    const RationalPoly& p1 = chain[chain.size() - 1];
    RationalPoly r = divmod(p2, p1).rem;
    if (r.is_zero()) break;
    // Negate, then rescale by a positive constant.
    for (auto& q : r.c) q = -q;
    make_primitive(r);
    chain.push_back(std::move(r));
  }
  return chain;
}

int sign_variations_at(const std::vector<RationalPoly>& chain, const Rational& x) {
  int variations = 0;
  int prev = 0;
  for (const auto& p : chain) {
    int s = sgn(p.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++variations;
    prev = s;
  }
  return variations;
}

int count_roots_in(const std::vector<RationalPoly>& chain, const Rational& a,
                   const Rational& b) {
  if (!(a < b)) throw Error("count_roots_in requires a < b");
  return sign_variations_at(chain, a) - sign_variations_at(chain, b);
}

Rational cauchy_root_bound(const RationalPoly& p) {
  if (p.is_zero()) throw Error("root bound of the zero polynomial");
  Rational m(0);
  for (std::size_t i = 0; i + 1 < p.c.size(); ++i) {
    Rational a(abs(p.c[i] / p.leading()));
    if (a > m) m = a;
  }
  return Rational(m + 1);
}

namespace {

// Bisection for the extreme root. `chain` is the Sturm chain of q, all roots
// of q lie in (-bound, bound). Maintains the invariant: largest root in
// (lo, hi]. count(x) := number of roots in (x, bound].
RationalInterval largest_root_impl(const RationalPoly& q,
                                   const std::vector<RationalPoly>& chain,
                                   const Rational& bound, unsigned k) {
  Rational lo(-bound), hi(bound);
  if (count_roots_in(chain, lo, hi) < 1) throw Error("polynomial has no real root");
  const Rational target_width = pow2_rational(-static_cast<long>(k));
  while (hi - lo > target_width) {
    Rational mid((lo + hi) / 2);
    if (q.eval(mid) == 0 && count_roots_in(chain, mid, bound) == 0)
      return RationalInterval::point(mid);  // bisection landed on the top root
    if (count_roots_in(chain, mid, bound) >= 1)
      lo = mid;
    else
      hi = mid;
  }
  return RationalInterval(lo, hi);
}

RationalPoly reflect(const RationalPoly& p) {  // p(-x)
  RationalPoly r = p;
  for (std::size_t i = 0; i < r.c.size(); ++i)
    if (i % 2 == 1) r.c[i] = -r.c[i];
  return r;
}

}  // namespace

RationalInterval largest_root_enclosure(const RationalPoly& squarefree, unsigned k) {
  auto chain = sturm_chain(squarefree);
  Rational bound = cauchy_root_bound(squarefree);
  return largest_root_impl(squarefree, chain, bound, k);
}

RationalInterval smallest_root_enclosure(const RationalPoly& squarefree, unsigned k) {
  RationalPoly m = reflect(squarefree);
  RationalInterval top = largest_root_enclosure(m, k);
  return -top;
}

int smallest_root_sign(const RationalPoly& squarefree) {
  auto chain = sturm_chain(squarefree);
  Rational bound = cauchy_root_bound(squarefree);
  if (count_roots_in(chain, Rational(-bound), bound) < 1)
    throw Error("polynomial has no real root");
  bool root_at_zero = squarefree.eval(Rational(0)) == 0;
  int upto_zero = count_roots_in(chain, Rational(-bound), Rational(0));  // roots in (-B, 0]
  int negative = upto_zero - (root_at_zero ? 1 : 0);
  if (negative > 0) return -1;
  return root_at_zero ? 0 : 1;
}

}  // namespace semipovm
