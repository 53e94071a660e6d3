#include "semipovm/constructions.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "semipovm/errors.hpp"
#include "semipovm/linalg.hpp"

namespace semipovm {

ScalarStageEnumerator staged_from_table(const ComplexityTable& table) {
  // Per output: (program length, cumulative mass) breakpoints, length-sorted.
  auto index = std::make_shared<
      std::map<std::string, std::vector<std::pair<unsigned, Rational>>, CanonicalLess>>();
  for (const auto& rec : table.records) {
    auto& bps = (*index)[rec.output];
    Rational mass = pow2_rational(-(long)rec.bits.size());
    if (!bps.empty() && bps.back().first == rec.bits.size())
      bps.back().second += mass;
    else
      bps.emplace_back((unsigned)rec.bits.size(),
                       (bps.empty() ? Rational(0) : bps.back().second) + mass);
  }
  ScalarStageEnumerator e;
  e.declared_monotone = true;
  e.stage_fn = [index](unsigned n, const std::string& s) -> Rational {
    auto it = index->find(s);
    if (it == index->end()) return Rational(0);
    const auto& bps = it->second;
    // Largest breakpoint with length <= n.
    auto ub = std::upper_bound(bps.begin(), bps.end(), n,
                               [](unsigned v, const auto& bp) { return v < bp.first; });
    if (ub == bps.begin()) return Rational(0);
    return std::prev(ub)->second;
  };
  return e;
}

ScalarStageEnumerator staged_from_map(
    std::map<std::string, Rational, CanonicalLess> values) {
  auto held = std::make_shared<std::map<std::string, Rational, CanonicalLess>>(
      std::move(values));
  ScalarStageEnumerator e;
  e.declared_monotone = true;
  e.stage_fn = [held](unsigned, const std::string& s) -> Rational {
    auto it = held->find(s);
    return it == held->end() ? Rational(0) : it->second;
  };
  return e;
}

UniversalApprox UniversalApprox::scalar(ScalarStageEnumerator m, int dim) {
  if (dim <= 0) throw DimensionError("construction dimension must be positive");
  UniversalApprox u;
  u.kind = ConstructionKind::Scalar;
  u.m = std::move(m);
  u.dim = dim;
  return u;
}

UniversalApprox UniversalApprox::noncommuting(ScalarStageEnumerator m, int dim,
                                              HermitianMatrix g, HermitianMatrix h) {
  if (dim < 2)
    throw ValidationError("noncommuting construction needs dimension >= 2", "dim");
  if (g.dim() != dim || h.dim() != dim)
    throw DimensionError("G/H dimension mismatch");
  HermitianMatrix id = HermitianMatrix::identity(dim);
  if (!is_pd(g) || !loewner_leq(g, id))
    throw ValidationError("G must satisfy 0 < G <= I", "G");
  if (!is_pd(h) || !loewner_leq(h, id))
    throw ValidationError("H must satisfy 0 < H <= I", "H");
  if (commutator(g, h).is_zero())
    throw ValidationError("G and H must not commute", "GH");
  UniversalApprox u;
  u.kind = ConstructionKind::Noncommuting;
  u.m = std::move(m);
  u.dim = dim;
  u.g = std::move(g);
  u.h = std::move(h);
  return u;
}

HermitianMatrix default_g(int n) {
  std::vector<Rational> d(n, Rational(1, 2));
  if (n > 0) d[0] = 1;
  return HermitianMatrix::diagonal(d);
}

HermitianMatrix default_h(int n) {
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, ComplexRational(Rational(1, 2)));
  if (n >= 2) {
    m.set(0, 1, ComplexRational(Rational(1, 4)));
    m.set(1, 0, ComplexRational(Rational(1, 4)));
  }
  return HermitianMatrix(std::move(m));
}

namespace {

Rational stage_value(const ScalarStageEnumerator& m, unsigned stage,
                     const std::string& s) {
  Rational v = m.stage_fn(stage, s);
  if (v < 0 || v > 1)
    throw ValidationError("stage value outside [0,1]", s);
  return v;
}

}  // namespace

HermitianMatrix scalar_universal(const ScalarStageEnumerator& m, int dim,
                                 const std::string& s, unsigned stage) {
  if (dim <= 0) throw DimensionError("construction dimension must be positive");
  return stage_value(m, stage, s) * HermitianMatrix::identity(dim);
}

HermitianMatrix noncommuting_universal(const UniversalApprox& u, const std::string& s,
                                       unsigned stage) {
  if (u.kind != ConstructionKind::Noncommuting)
    throw ValidationError("construction is not the noncommuting kind", s);
  Rational mv = stage_value(u.m, stage, s);
  if (mv == 0) return HermitianMatrix::zero(u.dim);
  Integer code = phi(s);
  if (!code.fits_slong_p() || code.get_si() > 1000000)
    throw UnsupportedError("string code too large for exact 2^-phi scaling");
  Rational w = pow2_rational(-code.get_si());
  return (mv / 2) * (w * u.g + u.h);
}

HermitianMatrix construction_stage(const UniversalApprox& u, const std::string& s,
                                   unsigned stage) {
  if (u.kind == ConstructionKind::Scalar)
    return scalar_universal(u.m, u.dim, s, stage);
  return noncommuting_universal(u, s, stage);
}

OperatorMap construction_map(const UniversalApprox& u,
                             const std::vector<std::string>& support, unsigned stage) {
  std::vector<std::pair<std::string, HermitianMatrix>> elems;
  elems.reserve(support.size());
  for (const auto& s : support) elems.emplace_back(s, construction_stage(u, s, stage));
  return OperatorMap::make(u.dim, std::move(elems));
}

ComplexMatrix commutator_identity_residual(const UniversalApprox& u, const std::string& s,
                                           const std::string& t, unsigned stage) {
  if (u.kind != ConstructionKind::Noncommuting)
    throw ValidationError("commutator identity applies to the noncommuting kind", s);
  HermitianMatrix ms = noncommuting_universal(u, s, stage);
  HermitianMatrix mt = noncommuting_universal(u, t, stage);
  ComplexMatrix lhs = commutator(ms, mt);

  Rational mvs = stage_value(u.m, stage, s);
  Rational mvt = stage_value(u.m, stage, t);
  Rational coeff = 0;
  if (mvs != 0 && mvt != 0) {
    Integer cs = phi(s), ct = phi(t);
    coeff = mvs * mvt * (pow2_rational(-cs.get_si()) - pow2_rational(-ct.get_si())) / 4;
  }
  ComplexMatrix rhs = ComplexRational(coeff) * commutator(u.g, u.h);
  return lhs - rhs;
}

Rational certify_lower_spectral_bound(const HermitianMatrix& h, unsigned iters) {
  HermitianMatrix id = HermitianMatrix::identity(h.dim());
  if (!is_psd(h)) throw ValidationError("matrix is not PSD", "H");
  if (is_psd(h - id)) return 1;
  Rational lo = 0, hi = 1;  // lo*I <= H holds; hi*I <= H fails
  for (unsigned i = 0; i < iters; ++i) {
    Rational mid = (lo + hi) / 2;
    if (is_psd(h - mid * id))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

ApproxStage approx_sequence(const UniversalApprox& u, unsigned n,
                            const std::vector<std::string>& support,
                            unsigned stage_budget) {
  HermitianMatrix id = HermitianMatrix::identity(u.dim);
  auto shifted = [&](unsigned j, const std::string& s) {
    return construction_stage(u, s, j) - pow2_rational(-(long)j) * id;
  };

  ApproxStage out;
  out.n = n;
  std::vector<std::pair<std::string, HermitianMatrix>> elems;
  for (const auto& s : support) {
    unsigned tau = 0;
    HermitianMatrix cur;
    bool have = false;
    // tau(0): least j >= 1 with g(j,s) positive definite.
    for (unsigned j = 1; j <= stage_budget; ++j) {
      HermitianMatrix cand = shifted(j, s);
      if (is_pd(cand)) {
        tau = j;
        cur = cand;
        have = true;
        break;
      }
    }
    if (!have)
      throw BudgetError("no positive-definite stage within budget for \"" + s + "\"");
    for (unsigned step = 1; step <= n; ++step) {
      bool found = false;
      for (unsigned j = tau + 1; j <= tau + stage_budget; ++j) {
        HermitianMatrix cand = shifted(j, s);
        if (is_pd(cand) && loewner_leq(cur, cand)) {
          tau = j;
          cur = cand;
          found = true;
          break;
        }
      }
      if (!found)
        throw BudgetError("stage search exhausted its budget for \"" + s + "\"");
    }
    out.elements.push_back({s, tau, cur, construction_stage(u, s, tau)});
    elems.emplace_back(s, cur);
  }
  std::sort(out.elements.begin(), out.elements.end(), [](const auto& a, const auto& b) {
    return CanonicalLess{}(a.label, b.label);
  });
  out.f_map = OperatorMap::make(u.dim, std::move(elems));
  return out;
}

OperatorMap povm_sequence(const OperatorMap& f, unsigned n) {
  std::vector<std::string> expected = first_strings(n);
  if (f.labels() != expected)
    throw ValidationError("sequence support must be exactly the first strings",
                          "support");
  SemiPovmCert cert = validate(f);
  std::vector<std::pair<std::string, HermitianMatrix>> elems(f.elements);
  elems.emplace_back(phi_inv(Integer(n)), cert.defect);
  OperatorMap g = OperatorMap::make(f.dim, std::move(elems));
  SemiPovmCert gcert = validate(g);
  if (!gcert.is_povm)
    throw ValidationError("completion failed to reach the identity", "sum");
  return g;
}

SemiDensityApprox semi_density_sigma(const ScalarStageEnumerator& m, int dim,
                                     unsigned stage) {
  if (dim <= 0) throw DimensionError("dimension must be positive");
  std::vector<Rational> d;
  d.reserve(dim);
  Rational total = 0;
  for (int i = 1; i <= dim; ++i) {
    Rational v = stage_value(m, stage, phi_inv(Integer(i)));
    total += v;
    d.push_back(v);
  }
  if (total > 1)
    throw ValidationError("diagonal mass exceeds 1", "sigma");
  SemiDensityApprox out;
  out.dim = dim;
  out.sigma = HermitianMatrix::diagonal(d);
  out.stage = stage;
  return out;
}

StagedDiagonalFamily family_from_staged_scalar(const ScalarStageEnumerator& m,
                                               unsigned max_dim) {
  StagedDiagonalFamily fam;
  fam.max_dim = max_dim;
  fam.entry_fn = [m](unsigned, unsigned j, unsigned k) -> Rational {
    return m.stage_fn(k, phi_inv(Integer(j)));
  };
  return fam;
}

std::optional<DeficiencyWitness> trace_deficiency_search(
    const StagedDiagonalFamily& family, const Rational& eps,
    unsigned long probe_budget) {
  unsigned long probes = 0;
  for (unsigned k = 0;; ++k) {
    for (unsigned n = 1; n <= family.max_dim; ++n) {
      // One pass of stage values for this (N, k); reused across the i-loop.
      std::vector<Rational> f(n);
      Rational total = 0;
      for (unsigned j = 1; j <= n; ++j) {
        f[j - 1] = family.entry_fn(n, j, k);
        total += f[j - 1];
      }
      for (unsigned i = 1; i <= n; ++i) {
        if (probes >= probe_budget) return std::nullopt;
        ++probes;
        Rational bound = 1 - (total - f[i - 1]);
        if (bound < eps) return DeficiencyWitness{n, i, k, bound};
      }
    }
  }
}

HermitianMatrix conjugate_construction(const UniversalApprox& u, const ComplexMatrix& u_mat,
                                       const std::string& s, unsigned stage) {
  return conjugate(u_mat, construction_stage(u, s, stage));
}

}  // namespace semipovm
