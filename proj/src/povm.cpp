#include "semipovm/povm.hpp"

#include <algorithm>
#include <mutex>

#include "semipovm/errors.hpp"

namespace semipovm {

OperatorMap OperatorMap::make(
    int dim, std::vector<std::pair<std::string, HermitianMatrix>> elems) {
  if (dim <= 0) throw DimensionError("operator map dimension must be positive");
  for (const auto& [label, mat] : elems) {
    for (char c : label)
      if (c != '0' && c != '1')
        throw ValidationError("label is not a binary string", label);
    if (mat.dim() != dim)
      throw DimensionError("element dimension mismatch for label \"" + label + "\"");
  }
  std::sort(elems.begin(), elems.end(), [](const auto& a, const auto& b) {
    return CanonicalLess{}(a.first, b.first);
  });
  for (size_t i = 1; i < elems.size(); ++i)
    if (elems[i - 1].first == elems[i].first)
      throw ValidationError("duplicate label", elems[i].first);
  OperatorMap r;
  r.dim = dim;
  r.elements = std::move(elems);
  return r;
}

const HermitianMatrix* OperatorMap::find(const std::string& label) const {
  auto it = std::lower_bound(
      elements.begin(), elements.end(), label,
      [](const auto& e, const std::string& l) { return CanonicalLess{}(e.first, l); });
  if (it != elements.end() && it->first == label) return &it->second;
  return nullptr;
}

HermitianMatrix OperatorMap::sum() const {
  HermitianMatrix acc = HermitianMatrix::zero(dim);
  for (const auto& [label, mat] : elements) acc = acc + mat;
  return acc;
}

std::vector<std::string> OperatorMap::labels() const {
  std::vector<std::string> out;
  out.reserve(elements.size());
  for (const auto& [label, mat] : elements) out.push_back(label);
  return out;
}

SemiPovmCert validate(const OperatorMap& r) {
  SemiPovmCert cert;
  for (const auto& [label, mat] : r.elements) {
    bool ok = is_psd(mat);
    cert.psd_checked.emplace_back(label, ok);
    if (!ok) throw ValidationError("element is not positive semidefinite", label);
  }
  cert.sum = r.sum();
  HermitianMatrix id = HermitianMatrix::identity(r.dim);
  cert.defect = id - cert.sum;
  if (!is_psd(cert.defect))
    throw ValidationError("element sum exceeds identity", "sum");
  cert.is_povm = (cert.sum == id);
  return cert;
}

OperatorMap complete_to_povm(const OperatorMap& r, bool keep_zero) {
  SemiPovmCert cert = validate(r);
  std::vector<std::pair<std::string, HermitianMatrix>> elems;
  elems.reserve(r.elements.size() + 1);
  if (keep_zero || !cert.defect.is_zero()) elems.emplace_back("", cert.defect);
  for (const auto& [label, mat] : r.elements) {
    if (!keep_zero && mat.is_zero()) continue;
    elems.emplace_back(successor(label), mat);
  }
  return OperatorMap::make(r.dim, std::move(elems));
}

std::map<std::string, RationalInterval, CanonicalLess> flatten(const OperatorMap& r,
                                                               unsigned k) {
  std::map<std::string, RationalInterval, CanonicalLess> out;
  Rational inv_dim(1, r.dim);
  // ||R|| / dim to width 2^-k needs the norm itself to width <= 2^-k * dim;
  // requesting k + ceil(log2(dim)) extra bits on the norm is always enough.
  unsigned extra = 0;
  while ((1 << extra) < r.dim) ++extra;
  for (const auto& [label, mat] : r.elements)
    out.emplace(label, scale(operator_norm_bounds(mat, k + extra), inv_dim));
  return out;
}

namespace {

// Shared lazily-extended tau table for one monotonized enumerator.
struct MonotoneState {
  MatrixStageEnumerator base;
  unsigned stage_budget;
  std::mutex mu;
  // Per label: chosen stages tau(0..n) and the cached g(tau(n), s).
  std::map<std::string, std::pair<std::vector<unsigned>, HermitianMatrix>> memo;
};

HermitianMatrix shifted_stage(const MatrixStageEnumerator& base, unsigned n,
                              const std::string& s) {
  HermitianMatrix f = base.stage_fn(n, s);
  if (f.dim() != base.dim)
    throw DimensionError("stage function returned wrong dimension");
  return f - pow2_rational(-(long)n) * HermitianMatrix::identity(base.dim);
}

}  // namespace

MatrixStageEnumerator monotonize(const MatrixStageEnumerator& e,
                                 unsigned stage_budget) {
  auto state = std::make_shared<MonotoneState>();
  state->base = e;
  state->stage_budget = stage_budget;

  MatrixStageEnumerator out;
  out.dim = e.dim;
  out.mode = StageMode::Monotone;
  out.stage_fn = [state](unsigned n, const std::string& s) -> HermitianMatrix {
    std::lock_guard<std::mutex> lock(state->mu);
    auto& [taus, last] = state->memo[s];
    if (taus.empty()) {
      taus.push_back(0);
      last = shifted_stage(state->base, 0, s);
    }
    while (taus.size() <= n) {
      unsigned lo = taus.back() + 1;
      bool found = false;
      for (unsigned m = lo; m < lo + state->stage_budget; ++m) {
        HermitianMatrix cand = shifted_stage(state->base, m, s);
        if (loewner_leq(last, cand)) {
          taus.push_back(m);
          last = cand;
          found = true;
          break;
        }
      }
      if (!found)
        throw BudgetError("monotonization stage search exhausted its budget for \"" +
                          s + "\"");
    }
    if (taus.size() == n + 1) return last;
    // Earlier stage than the cached frontier: recompute from its tau.
    return shifted_stage(state->base, taus[n], s);
  };
  return out;
}

MatrixStageEnumerator lower_enum_from_computable(
    std::function<ComplexMatrix(const std::string& s, unsigned k)> g, int dim) {
  if (dim <= 0) throw DimensionError("enumerator dimension must be positive");
  MatrixStageEnumerator out;
  out.dim = dim;
  out.mode = StageMode::BelowLimit;
  out.stage_fn = [g = std::move(g), dim](unsigned k,
                                         const std::string& s) -> HermitianMatrix {
    HermitianMatrix h = hermitize(g(s, k));
    if (h.dim() != dim)
      throw DimensionError("approximator returned wrong dimension");
    return h - pow2_rational(-(long)k) * HermitianMatrix::identity(dim);
  };
  return out;
}

}  // namespace semipovm
