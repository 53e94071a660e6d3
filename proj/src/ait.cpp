#include "semipovm/ait.hpp"

#include <sstream>

namespace semipovm {

Integer phi(const std::string& s) {
  Integer n = 1;
  for (char c : s) {
    if (c != '0' && c != '1') throw ParseError("phi expects a binary string");
    n <<= 1;
    if (c == '1') n += 1;
  }
  return n - 1;
}

std::string phi_inv(const Integer& n) {
  if (n < 0) throw Error("phi_inv of a negative number");
  Integer m = n + 1;
  std::string bits = m.get_str(2);  // starts with '1'
  return bits.substr(1);
}

std::string successor(const std::string& s) { return phi_inv(phi(s) + 1); }

std::vector<std::string> first_strings(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(phi_inv(Integer(static_cast<unsigned long>(i))));
  return out;
}

Integer cantor_pair(const Integer& a, const Integer& b) {
  Integer s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Integer, Integer> cantor_unpair(const Integer& z) {
  if (z < 0) throw Error("cantor_unpair of a negative number");
  // w = floor((sqrt(8z+1) - 1)/2); exact integer sqrt.
  Integer disc = 8 * z + 1;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), disc.get_mpz_t());
  Integer w = (root - 1) / 2;
  Integer tri = w * (w + 1) / 2;
  Integer b = z - tri;
  Integer a = w - b;
  return {a, b};
}

std::string pair_strings(const std::string& s, const std::string& t) {
  return phi_inv(cantor_pair(phi(s), phi(t)));
}

std::pair<std::string, std::string> unpair_string(const std::string& u) {
  auto [a, b] = cantor_unpair(phi(u));
  return {phi_inv(a), phi_inv(b)};
}

SemimeasureReport validate_semimeasure(const ScalarStageEnumerator& e, unsigned stages,
                                       const std::vector<std::string>& support) {
  if (stages == 0) throw Error("validate_semimeasure requires at least one stage");
  SemimeasureReport rep;
  std::vector<std::vector<Rational>> values(stages);
  for (unsigned n = 0; n < stages; ++n) {
    Rational sum(0);
    values[n].reserve(support.size());
    for (const auto& s : support) {
      Rational v = e.stage_fn(n, s);
      values[n].push_back(v);
      sum += v;
    }
    if (sum > 1) rep.stages_exceeding_one.push_back(n);
    rep.stage_sums.push_back(sum);
  }
  if (e.declared_monotone) {
    for (unsigned n = 0; n + 1 < stages; ++n)
      for (std::size_t i = 0; i < support.size(); ++i)
        if (values[n + 1][i] < values[n][i])
          rep.monotonicity_violations.emplace_back(n, support[i]);
  }
  rep.pass = rep.stages_exceeding_one.empty() && rep.monotonicity_violations.empty();
  return rep;
}

namespace {

AitValue from_table(const ComplexityTable& t, const std::string& s) {
  auto k = t.k_upper(s);
  if (!k) return std::nullopt;
  return static_cast<long>(*k);
}

AitValue sub(AitValue a, AitValue b) {
  if (!a || !b) return std::nullopt;
  return *a - *b;
}

AitValue add(AitValue a, AitValue b) {
  if (!a || !b) return std::nullopt;
  return *a + *b;
}

void accumulate(AitAggregate& agg, AitValue v, Rational& sum) {
  if (!v) {
    ++agg.infinite;
    return;
  }
  if (agg.finite == 0) {
    agg.min = agg.max = *v;
  } else {
    agg.min = std::min(agg.min, *v);
    agg.max = std::max(agg.max, *v);
  }
  ++agg.finite;
  sum += Rational(*v);
}

void finish(AitAggregate& agg, const Rational& sum) {
  if (agg.finite > 0) agg.mean = Rational(sum / static_cast<unsigned long>(agg.finite));
}

std::string show(AitValue v) { return v ? std::to_string(*v) : std::string("inf"); }

}  // namespace

AitValue AitTable::khat(const std::string& s) const { return from_table(*base_, s); }

AitValue AitTable::khat_joint(const std::string& s, const std::string& t) const {
  return from_table(*base_, pair_strings(s, t));
}

AitValue AitTable::khat_cond(const std::string& s, const std::string& t) const {
  // khat(s|t) = khat(t,s) - khat(t)
  return sub(khat_joint(t, s), khat(t));
}

AitValue AitTable::khat_mutual(const std::string& s, const std::string& t) const {
  // khat(s:t) = khat(s) + khat(t) - khat(s,t)
  return sub(add(khat(s), khat(t)), khat_joint(s, t));
}

AitMetrics ait_metrics(const AitTable& t, const std::string& s, const std::string& u) {
  return AitMetrics{t.khat_joint(s, u), t.khat_cond(s, u), t.khat_mutual(s, u)};
}

AitIdentityReport ait_identity_report(const AitTable& t,
                                      const std::vector<std::string>& sample) {
  AitIdentityReport rep;
  Rational sum_joint(0), sum_mutual(0), sum_cond(0);
  for (const auto& s : sample)
    for (const auto& u : sample) {
      ++rep.pairs;
      accumulate(rep.joint_swap_diff, sub(t.khat_joint(s, u), t.khat_joint(u, s)), sum_joint);
      accumulate(rep.mutual_swap_diff, sub(t.khat_mutual(s, u), t.khat_mutual(u, s)),
                 sum_mutual);
      accumulate(rep.conditional, t.khat_cond(s, u), sum_cond);
    }
  finish(rep.joint_swap_diff, sum_joint);
  finish(rep.mutual_swap_diff, sum_mutual);
  finish(rep.conditional, sum_cond);
  return rep;
}

std::string ait_report_csv(const AitTable& t, const std::vector<std::string>& sample) {
  std::ostringstream os;
  os << "s,t,metric,value\n";
  for (const auto& s : sample)
    for (const auto& u : sample) {
      AitMetrics m = ait_metrics(t, s, u);
      os << s << "," << u << ",khat_s," << show(t.khat(s)) << "\n";
      os << s << "," << u << ",khat_t," << show(t.khat(u)) << "\n";
      os << s << "," << u << ",joint," << show(m.joint) << "\n";
      os << s << "," << u << ",conditional," << show(m.conditional) << "\n";
      os << s << "," << u << ",mutual," << show(m.mutual) << "\n";
    }
  return os.str();
}

}  // namespace semipovm
