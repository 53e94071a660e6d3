#pragma once
// Explicit universal semi-POVM constructions over a staged scalar map m:
// the scalar family s -> m(s)I, and the noncommuting family
// M(s) = (m(s)/2)(2^-phi(s) G + H) for fixed 0 < G <= I, 0 < H <= I with
// [G,H] != 0, whose members pairwise fail to commute whenever m > 0. Also the
// stagewise approximation sequence F_n, its POVM completion G_n over the
// first n+1 strings, the diagonal semi-density matrix built from m under the
// phi indexing, and the dovetailed trace-deficiency search.
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "semipovm/ait.hpp"
#include "semipovm/povm.hpp"

namespace semipovm {

// Stage n of the halting-mass map: sum of 2^-|p| over recorded programs for s
// of length <= n. Monotone in n; equals the table's p_lower for n >= max_len.
ScalarStageEnumerator staged_from_table(const ComplexityTable& table);

// Constant-in-stage map from explicit values; absent labels give 0.
ScalarStageEnumerator staged_from_map(std::map<std::string, Rational, CanonicalLess> values);

enum class ConstructionKind { Scalar, Noncommuting };

struct UniversalApprox {
  ConstructionKind kind = ConstructionKind::Scalar;
  ScalarStageEnumerator m;
  int dim = 0;
  HermitianMatrix g;  // noncommuting kind only
  HermitianMatrix h;  // noncommuting kind only

  static UniversalApprox scalar(ScalarStageEnumerator m, int dim);
  // Validates 0 < G <= I, 0 < H <= I (exact PD / Loewner checks) and
  // [G,H] != 0; requires dim >= 2.
  static UniversalApprox noncommuting(ScalarStageEnumerator m, int dim,
                                      HermitianMatrix g, HermitianMatrix h);
};

// Reproducible defaults: G = diag(1, 1/2, ..., 1/2) and
// H = (1/2)I + (1/4)(E_12 + E_21); both 0 < . <= I, and [G,H] != 0 for n >= 2.
HermitianMatrix default_g(int n);
HermitianMatrix default_h(int n);

// m_stage(s) * I. The stage value must lie in [0,1].
HermitianMatrix scalar_universal(const ScalarStageEnumerator& m, int dim,
                                 const std::string& s, unsigned stage);

// (m_stage(s)/2)(2^-phi(s) G + H), exact rationals throughout.
HermitianMatrix noncommuting_universal(const UniversalApprox& u, const std::string& s,
                                       unsigned stage);

// Dispatch on u.kind.
HermitianMatrix construction_stage(const UniversalApprox& u, const std::string& s,
                                   unsigned stage);

// The M-stage family over an explicit support, as an OperatorMap (unvalidated;
// callers validate when a semi-POVM is required).
OperatorMap construction_map(const UniversalApprox& u,
                             const std::vector<std::string>& support, unsigned stage);

// [M(s),M(t)] - (1/4) m(s) m(t) (2^-phi(s) - 2^-phi(t)) [G,H]; exactly the
// zero matrix when the construction is consistent. Noncommuting kind only.
ComplexMatrix commutator_identity_residual(const UniversalApprox& u, const std::string& s,
                                           const std::string& t, unsigned stage);

// Largest binary rational c in [0,1] with c*I <= H, found by `iters` rounds of
// bisection with exact PSD tests on H - c*I. Requires H PSD.
Rational certify_lower_spectral_bound(const HermitianMatrix& h, unsigned iters);

struct ApproxElement {
  std::string label;
  unsigned tau = 0;               // stage the search settled on
  HermitianMatrix f;              // F_n(label) = M_tau(label) - 2^-tau I
  HermitianMatrix m_at_tau;       // M_tau(label)
};

struct ApproxStage {
  unsigned n = 0;
  OperatorMap f_map;
  std::vector<ApproxElement> elements;  // canonical label order
};

// F_n over the support: per label, tau(0) is the least stage >= 1 making
// g(j) = M_j - 2^-j I positive definite, and tau(k+1) the least stage above
// tau(k) keeping g positive definite and Loewner-above g(tau(k)). tau is
// strictly increasing, so tau(n) >= n+1 and M_tau - F_n = 2^-tau I < 2^-n I.
// Each stage search probes at most stage_budget candidates (BudgetError).
ApproxStage approx_sequence(const UniversalApprox& u, unsigned n,
                            const std::vector<std::string>& support,
                            unsigned stage_budget = 4096);

// G_n: requires f's support to be exactly the first n strings; places the
// defect I - sum on the (n+1)-th string. Validates as an exact POVM.
OperatorMap povm_sequence(const OperatorMap& f, unsigned n);

struct SemiDensityApprox {
  int dim = 0;
  HermitianMatrix sigma;  // diag(m(phi^-1(1)), ..., m(phi^-1(dim)))
  unsigned stage = 0;
};

// Diagonal semi-density matrix from the first `dim` strings under the
// 1-based phi indexing ("0","1","00",...). Trace must be <= 1.
SemiDensityApprox semi_density_sigma(const ScalarStageEnumerator& m, int dim,
                                     unsigned stage);

// Staged diagonal family f_jj(N,k) for N = 1..max_dim, 1-based j <= N, with
// f_jj(N,k) non-decreasing in k and below the limit entry (caller contract).
struct StagedDiagonalFamily {
  unsigned max_dim = 0;
  std::function<Rational(unsigned n, unsigned j, unsigned k)> entry_fn;
};

// Family whose N-th member is diag(m(phi^-1(1)), ..., m(phi^-1(N))) at stage k.
StagedDiagonalFamily family_from_staged_scalar(const ScalarStageEnumerator& m,
                                               unsigned max_dim);

struct DeficiencyWitness {
  unsigned n = 0;  // matrix size probed
  unsigned i = 0;  // 1-based diagonal index certified small
  unsigned k = 0;  // stage at which the probe fired
  Rational bound;  // 1 - sum_{j != i} f_jj(n,k), an upper bound on mu_ii(n)
};

// Dovetail over rounds k = 0,1,2,...; within a round N = 1..max_dim and
// i = 1..N in order. Fires at the first probe with
// 1 - sum_{j != i} f_jj(N,k) < eps; nullopt once probe_budget probes pass.
std::optional<DeficiencyWitness> trace_deficiency_search(
    const StagedDiagonalFamily& family, const Rational& eps, unsigned long probe_budget);

// U^dagger M_stage(s) U; exact unitarity of U is checked.
HermitianMatrix conjugate_construction(const UniversalApprox& u, const ComplexMatrix& u_mat,
                                       const std::string& s, unsigned stage);

}  // namespace semipovm
