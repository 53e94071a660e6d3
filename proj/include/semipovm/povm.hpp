#pragma once
// Finitely-supported operator-valued maps on binary strings.
//
// An OperatorMap R assigns a Hermitian matrix to each label in a finite
// support (absent labels mean the zero matrix). R is a semi-POVM when every
// element is PSD and the element sum is <= I in the Loewner order, and a POVM
// when the sum equals I exactly. A semi-POVM is completed to a POVM by
// shifting every element to the successor label and placing I - sum on the
// empty-string label. Flattening divides each element's operator norm by the
// dimension, producing a (staged) semi-measure. Monotonization turns a
// stagewise approximation from below into a Loewner-non-decreasing one by the
// shift g(n,s) = f(n,s) - 2^-n I and a bounded search for comparable stages.
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "semipovm/ait.hpp"
#include "semipovm/interval.hpp"
#include "semipovm/linalg.hpp"

namespace semipovm {

struct OperatorMap {
  int dim = 0;
  // Sorted by canonical label order; labels distinct.
  std::vector<std::pair<std::string, HermitianMatrix>> elements;

  // Sorts, checks label uniqueness and per-element dimensions.
  static OperatorMap make(int dim,
                          std::vector<std::pair<std::string, HermitianMatrix>> elems);

  const HermitianMatrix* find(const std::string& label) const;
  HermitianMatrix sum() const;  // zero(dim) when empty
  std::vector<std::string> labels() const;
};

// Validation certificate: which elements passed the PSD check, the exact
// element sum, the defect I - sum, and whether the map is an exact POVM.
struct SemiPovmCert {
  std::vector<std::pair<std::string, bool>> psd_checked;
  HermitianMatrix sum;
  HermitianMatrix defect;
  bool is_povm = false;
};

// Checks every element is PSD and the sum is <= I. ValidationError names the
// offending label (or "sum") on failure; on success the certificate's defect
// is PSD and is_povm marks exact equality with I.
SemiPovmCert validate(const OperatorMap& r);

// Q(lambda) = I - sum, Q(successor(s)) = R(s). Output validates with
// is_povm = true; the zero defect element is retained unless keep_zero is
// false (dropping zero elements never changes the sum).
OperatorMap complete_to_povm(const OperatorMap& r, bool keep_zero = true);

// Per-label enclosure of ||R(s)|| / dim, each of width <= 2^-k.
std::map<std::string, RationalInterval, CanonicalLess> flatten(const OperatorMap& r,
                                                               unsigned k);

enum class StageMode { BelowLimit, Monotone };

// Total stage function (n, s) -> Hermitian matrix. BelowLimit mode promises
// f(n,s) <= R(s) for the (declared) limit R; Monotone mode promises
// f(n,s) <= f(n+1,s).
struct MatrixStageEnumerator {
  int dim = 0;
  StageMode mode = StageMode::BelowLimit;
  std::function<HermitianMatrix(unsigned n, const std::string& s)> stage_fn;
};

// Monotonization: h(n,s) = g(tau(n,s), s) with g(n,s) = f(n,s) - 2^-n I,
// tau(0,s) = 0 and tau(n+1,s) the least m > tau(n,s) with g(tau(n,s),s) <=
// g(m,s) (exact Loewner checks). The search for each next stage scans at most
// `stage_budget` candidate stages; exhausting it raises BudgetError. The
// output enumerator is Monotone and converges to the same limit.
MatrixStageEnumerator monotonize(const MatrixStageEnumerator& e, unsigned stage_budget);

// From a computable approximator G with ||R(s) - G(s,k)|| < 2^-k (caller
// contract) to a below-limit enumerator (s,k) -> hermitize(G(s,k)) - 2^-k I.
MatrixStageEnumerator lower_enum_from_computable(
    std::function<ComplexMatrix(const std::string& s, unsigned k)> g, int dim);

}  // namespace semipovm
