#pragma once
// Quantum states, exact Born statistics, seeded outcome sampling, and the
// verification harness: per-string complexity/probability bound reports,
// construction-specific optimality assertions, the entrywise matrix
// -log2 M(s) enclosure, and unitary-conjugation invariance checks.
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "semipovm/constructions.hpp"
#include "semipovm/povm.hpp"

namespace semipovm {

class DensityMatrix {
 public:
  // ValidationError unless m is PSD with exact unit trace.
  explicit DensityMatrix(HermitianMatrix m);
  static DensityMatrix maximally_mixed(int n);

  int dim() const { return m_.dim(); }
  const HermitianMatrix& matrix() const { return m_; }

 private:
  HermitianMatrix m_;
};

class PureState {
 public:
  // ValidationError unless <psi|psi> = 1 exactly. States with irrational
  // normalizers enter as density matrices instead.
  explicit PureState(std::vector<ComplexRational> amplitudes);

  int dim() const { return (int)amps_.size(); }
  const std::vector<ComplexRational>& amplitudes() const { return amps_; }
  DensityMatrix projector() const;  // |psi><psi|

 private:
  std::vector<ComplexRational> amps_;
};

// Exact tr(rho E). E must be PSD and dimensions must match.
Rational outcome_prob(const DensityMatrix& rho, const HermitianMatrix& e);

// Exact <psi|E|psi>; equals outcome_prob(|psi><psi|, E).
Rational pure_prob(const PureState& psi, const HermitianMatrix& e);

// The pinched scalar family s -> <x|M_stage(s)|x>; monotone in the stage
// whenever the underlying scalar map is.
ScalarStageEnumerator pinch_to_semimeasure(const UniversalApprox& u, const PureState& x);

struct SampleCounts {
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  std::map<std::string, std::uint64_t, CanonicalLess> counts;  // every label present
};

// I.i.d. outcome draws with exact probabilities tr(rho Q(s)). Q must be an
// exact POVM. A seeded 64-bit generator supplies a bit stream consumed
// MSB-first; each draw refines a dyadic interval against the exact rational
// CDF, so results are bit-reproducible for a fixed seed.
SampleCounts sample_outcomes(const DensityMatrix& rho, const OperatorMap& q,
                             std::uint64_t trials, std::uint64_t seed);

struct BoundRow {
  std::string s;
  Rational prob;                          // tr(rho Q(s)), exact
  std::optional<std::uint64_t> k_upper;   // nullopt = unwitnessed (infinite)
  Rational p_lower;
  // k_upper + log2(prob): set iff k_upper finite and prob > 0. When unset,
  // the flags below say which infinity applies.
  std::optional<RationalInterval> row_d;
  bool d_plus_inf = false;   // prob > 0 but k_upper infinite
  bool d_minus_inf = false;  // prob == 0
  // prob / p_lower: set iff p_lower > 0. Unset with prob > 0 means the ratio
  // is infinite; unset with prob == 0 means the row is vacuous.
  std::optional<Rational> row_c;
};

struct BoundReport {
  std::vector<BoundRow> rows;  // canonical label order
  // Maxima over rows where the quantity is finite; nullopt when no such row.
  std::optional<RationalInterval> d_observed;
  std::optional<Rational> c_observed;
  std::size_t infinite_d_rows = 0;  // rows with d_plus_inf
  std::size_t infinite_c_rows = 0;  // rows with prob > 0 but p_lower == 0
  unsigned precision = 0;           // log2 enclosure width request
};

// Per-label prob / k_upper / p_lower rows against the table, with observed
// witnesses for the additive (d) and multiplicative (c) constants. Q must
// validate; nothing in the report is asserted here.
BoundReport verify_main_bounds(const DensityMatrix& rho, const OperatorMap& q,
                               const ComplexityTable& table, unsigned precision = 32);

// Exact chain check for measurement families built from the scalar
// construction: for every non-defect label s, tr(rho Q(s)) <= m_stage(s) and
// m_stage(s) <= ext.p_lower(s). AssertionFailure names the violating label.
struct ScalarChainContext {
  std::map<std::string, Rational, CanonicalLess> m_stage;
  std::string defect_label;
};
void assert_scalar_chain(const DensityMatrix& rho, const OperatorMap& q,
                         const ScalarChainContext& chain, const ComplexityTable& ext);

struct OptimalityRow {
  std::string s;
  Rational m_value;      // m_stage(s)
  Rational trace_value;  // tr(rho M_stage(s))
  std::optional<RationalInterval> neg_log2_trace;  // set when trace > 0
  std::optional<std::uint64_t> k_upper;            // set when a table is supplied
};

struct OptimalityReport {
  ConstructionKind kind = ConstructionKind::Scalar;
  Rational c1, c2;  // certified sandwich constants
  std::vector<OptimalityRow> rows;
};

// Scalar kind: asserts tr(rho M(s)) = m(s) exactly (c1 = c2 = 1).
// Noncommuting kind: asserts the Loewner sandwich
// (c/2) m(s) I <= M(s) <= m(s) I with the supplied certified c, and the trace
// sandwich it implies for this rho. The -log2 trace column is reported, not
// asserted. AssertionFailure names the violating label.
OptimalityReport verify_optimality(const DensityMatrix& rho, const UniversalApprox& u,
                                   const std::vector<std::string>& support,
                                   unsigned stage, const Rational& certified_c = 0,
                                   const ComplexityTable* table = nullptr,
                                   unsigned precision = 16);

struct MatrixKResult {
  std::vector<std::vector<RationalInterval>> entries;  // -log2 M(s), entrywise
  std::optional<std::uint64_t> k_upper;  // comparison row when a table is given
};

// Entrywise interval enclosure of -log2 M_stage(s) with widths <= 2^-k,
// via exact spectral decomposition: diagonal matrices entrywise, and real
// 2x2-block + diagonal matrices (the noncommuting default shape) in closed
// form. StageError when M_stage(s) is not positive definite;
// UnsupportedError for shapes outside that class.
MatrixKResult matrix_K(const UniversalApprox& u, const std::string& s, unsigned stage,
                       unsigned k, const ComplexityTable* table = nullptr);

struct ConjugationReport {
  std::size_t labels_checked = 0;
  bool semipovm_preserved = false;
};

// Asserts tr(U rho U^dagger M(s)) = tr(rho U^dagger M(s) U) exactly for every
// s in the support, and that the conjugated family still validates as a
// semi-POVM there. AssertionFailure names the first violating label.
ConjugationReport conjugation_invariance_check(const DensityMatrix& rho,
                                               const UniversalApprox& u,
                                               const ComplexMatrix& u_mat,
                                               const std::vector<std::string>& support,
                                               unsigned stage);

}  // namespace semipovm
