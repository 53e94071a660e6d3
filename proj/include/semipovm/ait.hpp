#pragma once
// String/number codec and the scalar algorithmic-information calculus.
//
// Finite binary strings are identified with naturals by phi(s) = (the numeral
// "1"+s read in binary) - 1, so the canonical order lambda, "0", "1", "00",
// "01", ... is exactly increasing phi-code (length-then-lex). Pairing is the
// Cantor bijection on phi-codes. On top of an enumerated halting table this
// yields staged joint / conditional / mutual complexity approximants whose
// definitional identities hold exactly wherever the entries are finite.
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "semipovm/prefix_machine.hpp"
#include "semipovm/rational.hpp"

namespace semipovm {

// phi(s): "1"+s as a binary numeral, minus 1. Bijection onto the naturals.
Integer phi(const std::string& s);
std::string phi_inv(const Integer& n);

// Successor in the canonical order (lambda, "0", "1", "00", ...).
std::string successor(const std::string& s);

// The first n strings in canonical order (phi-codes 0..n-1).
std::vector<std::string> first_strings(std::size_t n);

// Cantor pairing (a+b)(a+b+1)/2 + b and its exact inverse.
Integer cantor_pair(const Integer& a, const Integer& b);
std::pair<Integer, Integer> cantor_unpair(const Integer& z);

// <s,t> = phi_inv(Cantor(phi(s), phi(t))); unpair inverts exactly.
std::string pair_strings(const std::string& s, const std::string& t);
std::pair<std::string, std::string> unpair_string(const std::string& u);

// A total stage function (n, s) -> rational approximating a semi-measure from
// below. `declared_monotone` asserts f(n,s) <= f(n+1,s); the validator checks
// it on the sampled window when declared.
struct ScalarStageEnumerator {
  std::function<Rational(unsigned n, const std::string& s)> stage_fn;
  bool declared_monotone = false;
};

struct SemimeasureReport {
  std::vector<Rational> stage_sums;  // partial sum over the support, per stage
  // (stage, string) pairs where f(n+1,s) < f(n,s) despite declared_monotone.
  std::vector<std::pair<unsigned, std::string>> monotonicity_violations;
  std::vector<unsigned> stages_exceeding_one;  // stages whose support sum > 1
  bool pass = false;
};

/// Finite-support necessary conditions for a lower-computable semi-measure:
// per-stage sums <= 1, and stagewise monotonicity when declared.
SemimeasureReport validate_semimeasure(const ScalarStageEnumerator& e, unsigned stages,
                                       const std::vector<std::string>& support);

// nullopt encodes an infinite (not-yet-witnessed) complexity value.
using AitValue = std::optional<long>;

// Staged complexity calculus over an enumerated halting table.
// khat(s) is the table's shortest-program upper bound; joint values go
// through the pairing bijection; conditional and mutual values are defined
// by khat(s|t) = khat(t,s) - khat(t) and khat(s:t) = khat(s) + khat(t) -
// khat(s,t), with infinity propagating.
class AitTable {
 public:
  explicit AitTable(const ComplexityTable& base) : base_(&base) {}

  AitValue khat(const std::string& s) const;
  AitValue khat_joint(const std::string& s, const std::string& t) const;
  AitValue khat_cond(const std::string& s, const std::string& t) const;
  AitValue khat_mutual(const std::string& s, const std::string& t) const;
  const ComplexityTable& base() const { return *base_; }

 private:
  const ComplexityTable* base_;
};

struct AitMetrics {
  AitValue joint;        // khat(s,u)
  AitValue conditional;  // khat(s|u)
  AitValue mutual;       // khat(s:u)
};
AitMetrics ait_metrics(const AitTable& t, const std::string& s, const std::string& u);

struct AitAggregate {
  long min = 0;
  long max = 0;
  Rational mean;       // exact
  std::size_t finite = 0;
  std::size_t infinite = 0;
};

// Empirical ranges over a sample: swap-differences of joint and mutual values
// and the conditional values themselves. Bounded-spread claims are reported,
// never asserted (the additive constants are machine-relative).
struct AitIdentityReport {
  AitAggregate joint_swap_diff;   // khat(s,t) - khat(t,s)
  AitAggregate mutual_swap_diff;  // khat(s:t) - khat(t:s)
  AitAggregate conditional;       // khat(s|t)
  std::size_t pairs = 0;
};
AitIdentityReport ait_identity_report(const AitTable& t, const std::vector<std::string>& sample);

// Per-pair metric rows as CSV with columns: s, t, metric, value ("inf" for
// missing entries). Metrics: khat_s, khat_t, joint, conditional, mutual.
std::string ait_report_csv(const AitTable& t, const std::vector<std::string>& sample);

}  // namespace semipovm
