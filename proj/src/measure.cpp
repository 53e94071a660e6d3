#include "semipovm/measure.hpp"

#include <algorithm>
#include <random>

#include "semipovm/errors.hpp"
#include "semipovm/linalg.hpp"

namespace semipovm {

DensityMatrix::DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
  if (!is_psd(m_)) throw ValidationError("state is not PSD", "rho");
  if (m_.trace_real() != 1) throw ValidationError("state trace is not 1", "rho");
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  return DensityMatrix(Rational(1, n) * HermitianMatrix::identity(n));
}

PureState::PureState(std::vector<ComplexRational> amplitudes)
    : amps_(std::move(amplitudes)) {
  if (amps_.empty()) throw DimensionError("empty state vector");
  Rational norm = 0;
  for (const auto& a : amps_) norm += a.norm2();
  if (norm != 1) throw ValidationError("state vector is not normalized", "psi");
}

DensityMatrix PureState::projector() const {
  ComplexMatrix p((int)amps_.size());
  for (int i = 0; i < (int)amps_.size(); ++i)
    for (int j = 0; j < (int)amps_.size(); ++j)
      p.set(i, j, amps_[i] * amps_[j].conj());
  return DensityMatrix(HermitianMatrix(std::move(p)));
}

namespace {

// tr(AB) for Hermitian A, B is exactly real.
Rational real_trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionError("trace product dimension mismatch");
  ComplexRational t;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) t = t + a.at(i, j) * b.at(j, i);
  if (t.im != 0) throw Error("trace of a Hermitian product came out complex");
  return t.re;
}

}  // namespace

Rational outcome_prob(const DensityMatrix& rho, const HermitianMatrix& e) {
  if (rho.dim() != e.dim()) throw DimensionError("state/effect dimension mismatch");
  if (!is_psd(e)) throw ValidationError("effect is not PSD", "effect");
  return real_trace_product(rho.matrix(), e);
}

Rational pure_prob(const PureState& psi, const HermitianMatrix& e) {
  if (psi.dim() != e.dim()) throw DimensionError("state/effect dimension mismatch");
  if (!is_psd(e)) throw ValidationError("effect is not PSD", "effect");
  ComplexRational acc;
  for (int i = 0; i < psi.dim(); ++i) {
    ComplexRational row;
    for (int j = 0; j < psi.dim(); ++j)
      row = row + e.at(i, j) * psi.amplitudes()[j];
    acc = acc + psi.amplitudes()[i].conj() * row;
  }
  if (acc.im != 0) throw Error("expectation of a Hermitian effect came out complex");
  return acc.re;
}

ScalarStageEnumerator pinch_to_semimeasure(const UniversalApprox& u, const PureState& x) {
  if (x.dim() != u.dim) throw DimensionError("state/construction dimension mismatch");
  ScalarStageEnumerator e;
  e.declared_monotone = u.m.declared_monotone;
  e.stage_fn = [u, x](unsigned n, const std::string& s) -> Rational {
    return pure_prob(x, construction_stage(u, s, n));
  };
  return e;
}

namespace {

// MSB-first bit stream over a seeded 64-bit generator.
struct BitStream {
  std::mt19937_64 eng;
  std::uint64_t word = 0;
  int left = 0;
  explicit BitStream(std::uint64_t seed) : eng(seed) {}
  int next() {
    if (left == 0) {
      word = eng();
      left = 64;
    }
    --left;
    return (int)((word >> left) & 1u);
  }
};

}  // namespace

SampleCounts sample_outcomes(const DensityMatrix& rho, const OperatorMap& q,
                             std::uint64_t trials, std::uint64_t seed) {
  SemiPovmCert cert = validate(q);
  if (!cert.is_povm)
    throw ValidationError("measurement family must sum to the identity", "sum");
  if (rho.dim() != q.dim) throw DimensionError("state/measurement dimension mismatch");

  // Exact CDF over labels in canonical order; total mass is exactly 1.
  std::vector<Rational> cdf;
  cdf.reserve(q.elements.size());
  Rational acc = 0;
  for (const auto& [label, e] : q.elements) {
    acc += real_trace_product(rho.matrix(), e);
    cdf.push_back(acc);
  }
  if (acc != 1) throw Error("POVM outcome probabilities failed to sum to 1");

  SampleCounts out;
  out.seed = seed;
  out.trials = trials;
  for (const auto& [label, e] : q.elements) out.counts[label] = 0;

  BitStream bits(seed);
  for (std::uint64_t t = 0; t < trials; ++t) {
    // Refine the dyadic interval [a, a+1)/2^b until it sits inside one CDF
    // cell [cdf[j-1], cdf[j]); empty cells can never capture it.
    Integer a = 0;
    Integer den = 1;
    long depth = 0;
    for (;;) {
      Rational low(a, den);
      low.canonicalize();
      auto it = std::upper_bound(cdf.begin(), cdf.end(), low);
      if (it == cdf.end()) throw Error("sample point escaped the CDF");
      std::size_t j = (std::size_t)(it - cdf.begin());
      Rational high(a + 1, den);
      high.canonicalize();
      if (high <= *it) {
        const std::string& label = q.elements[j].first;
        ++out.counts[label];
        break;
      }
      a = a * 2 + bits.next();
      den *= 2;
      if (++depth > 100000) throw Error("sampling failed to resolve");
    }
  }
  return out;
}

BoundReport verify_main_bounds(const DensityMatrix& rho, const OperatorMap& q,
                               const ComplexityTable& table, unsigned precision) {
  validate(q);
  BoundReport rep;
  rep.precision = precision;
  for (const auto& [label, e] : q.elements) {
    BoundRow row;
    row.s = label;
    row.prob = real_trace_product(rho.matrix(), e);
    row.k_upper = table.k_upper(label);
    row.p_lower = table.p_lower(label);

    if (row.prob == 0) {
      row.d_minus_inf = true;
    } else if (!row.k_upper) {
      row.d_plus_inf = true;
      ++rep.infinite_d_rows;
    } else {
      row.row_d = log2_interval(row.prob, precision) + Rational((long)*row.k_upper);
      rep.d_observed = rep.d_observed ? interval_max(*rep.d_observed, *row.row_d)
                                      : *row.row_d;
    }

    if (row.p_lower > 0) {
      row.row_c = row.prob / row.p_lower;
      rep.c_observed =
          rep.c_observed ? std::max(*rep.c_observed, *row.row_c) : *row.row_c;
    } else if (row.prob > 0) {
      ++rep.infinite_c_rows;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

void assert_scalar_chain(const DensityMatrix& rho, const OperatorMap& q,
                         const ScalarChainContext& chain, const ComplexityTable& ext) {
  for (const auto& [label, e] : q.elements) {
    if (label == chain.defect_label) continue;
    auto it = chain.m_stage.find(label);
    if (it == chain.m_stage.end())
      throw AssertionFailure("label lacks a stage value", label);
    Rational prob = real_trace_product(rho.matrix(), e);
    if (prob > it->second)
      throw AssertionFailure("outcome probability exceeds the stage mass", label);
    if (it->second > ext.p_lower(label))
      throw AssertionFailure("stage mass exceeds the extended halting mass", label);
  }
}

OptimalityReport verify_optimality(const DensityMatrix& rho, const UniversalApprox& u,
                                   const std::vector<std::string>& support,
                                   unsigned stage, const Rational& certified_c,
                                   const ComplexityTable* table, unsigned precision) {
  OptimalityReport rep;
  rep.kind = u.kind;
  HermitianMatrix id = HermitianMatrix::identity(u.dim);

  if (u.kind == ConstructionKind::Scalar) {
    rep.c1 = 1;
    rep.c2 = 1;
  } else {
    if (certified_c < 0 || !is_psd(u.h - certified_c * id))
      throw ValidationError("constant is not a certified spectral lower bound", "c");
    rep.c1 = certified_c / 2;
    rep.c2 = 1;
  }

  for (const auto& s : support) {
    Rational m_val = u.m.stage_fn(stage, s);
    HermitianMatrix m_op = construction_stage(u, s, stage);
    Rational tr = real_trace_product(rho.matrix(), m_op);

    if (u.kind == ConstructionKind::Scalar) {
      if (tr != m_val)
        throw AssertionFailure("trace deviates from the scalar stage value", s);
    } else {
      if (!loewner_leq((rep.c1 * m_val) * id, m_op))
        throw AssertionFailure("lower sandwich bound failed", s);
      if (!loewner_leq(m_op, m_val * id))
        throw AssertionFailure("upper sandwich bound failed", s);
      if (tr < rep.c1 * m_val || tr > rep.c2 * m_val)
        throw AssertionFailure("trace escaped the certified sandwich", s);
    }

    OptimalityRow row;
    row.s = s;
    row.m_value = m_val;
    row.trace_value = tr;
    if (tr > 0) row.neg_log2_trace = neg_log2_interval(tr, precision);
    if (table) row.k_upper = table->k_upper(s);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

namespace {

// Enclosure of -log2 over a positive interval: -log2 is decreasing.
RationalInterval neg_log2_over(const RationalInterval& x, unsigned prec) {
  RationalInterval at_lo = log2_interval(x.lo, prec);
  RationalInterval at_hi = log2_interval(x.hi, prec);
  return RationalInterval(Rational(-at_hi.hi), Rational(-at_lo.lo));
}

bool widths_within(const std::vector<std::vector<RationalInterval>>& m,
                   const Rational& w) {
  for (const auto& row : m)
    for (const auto& e : row)
      if (e.width() > w) return false;
  return true;
}

}  // namespace

MatrixKResult matrix_K(const UniversalApprox& u, const std::string& s, unsigned stage,
                       unsigned k, const ComplexityTable* table) {
  HermitianMatrix m = construction_stage(u, s, stage);
  if (!is_pd(m)) throw StageError("stage matrix is not positive definite");
  int n = m.dim();

  MatrixKResult res;
  if (table) res.k_upper = table->k_upper(s);
  res.entries.assign(n, std::vector<RationalInterval>(n, RationalInterval::point(0)));

  if (m.is_diagonal()) {
    for (int i = 0; i < n; ++i)
      res.entries[i][i] = neg_log2_interval(m.at(i, i).re, k);
    return res;
  }

  // Supported non-diagonal shape: real entries, with the only off-diagonal
  // coupling in the leading 2x2 block (the noncommuting default).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (m.at(i, j).im != 0)
        throw UnsupportedError("matrix logarithm for complex couplings");
      bool in_block = (i < 2 && j < 2);
      if (i != j && !in_block && m.at(i, j).re != 0)
        throw UnsupportedError("matrix logarithm outside block-diagonal shape");
    }

  const Rational a = m.at(0, 0).re, b = m.at(0, 1).re, d = m.at(1, 1).re;
  const Rational h = (a + d) / 2;
  const Rational disc = (a - d) * (a - d) / 4 + b * b;  // > 0 since b != 0
  const Rational target = pow2_rational(-(long)k);

  for (unsigned prec = k + 8;; prec *= 2) {
    if (prec > (1u << 24)) throw Error("matrix logarithm failed to converge");
    RationalInterval rt = sqrt_interval(disc, prec);
    if (rt.lo <= 0) continue;
    RationalInterval lam_p(h + rt.lo, h + rt.hi);
    RationalInterval lam_m(h - rt.hi, h - rt.lo);
    if (lam_m.lo <= 0) continue;  // true lambda_min > 0 by positive definiteness

    RationalInterval gap(2 * rt.lo, 2 * rt.hi);
    // P+ = (A2 - lambda_- I)/gap entrywise; P- = I - P+.
    RationalInterval pp00 = div(RationalInterval(a - lam_m.hi, a - lam_m.lo), gap);
    RationalInterval pp01 = div(RationalInterval::point(b), gap);
    RationalInterval pp11 = div(RationalInterval(d - lam_m.hi, d - lam_m.lo), gap);
    RationalInterval pm00 = RationalInterval::point(1) - pp00;
    RationalInterval pm01 = -pp01;
    RationalInterval pm11 = RationalInterval::point(1) - pp11;

    RationalInterval fp = neg_log2_over(lam_p, prec);
    RationalInterval fm = neg_log2_over(lam_m, prec);

    std::vector<std::vector<RationalInterval>> block(2);
    block[0] = {mul(fp, pp00) + mul(fm, pm00), mul(fp, pp01) + mul(fm, pm01)};
    block[1] = {block[0][1], mul(fp, pp11) + mul(fm, pm11)};
    if (!widths_within(block, target)) continue;

    res.entries[0][0] = block[0][0];
    res.entries[0][1] = block[0][1];
    res.entries[1][0] = block[1][0];
    res.entries[1][1] = block[1][1];
    for (int i = 2; i < n; ++i)
      res.entries[i][i] = neg_log2_interval(m.at(i, i).re, k);
    return res;
  }
}

ConjugationReport conjugation_invariance_check(const DensityMatrix& rho,
                                               const UniversalApprox& u,
                                               const ComplexMatrix& u_mat,
                                               const std::vector<std::string>& support,
                                               unsigned stage) {
  if (!is_unitary(u_mat)) throw ValidationError("conjugator is not unitary", "U");
  HermitianMatrix rotated_state =
      HermitianMatrix(u_mat * rho.matrix().matrix() * u_mat.adjoint());

  std::vector<std::pair<std::string, HermitianMatrix>> conj_elems;
  ConjugationReport rep;
  for (const auto& s : support) {
    HermitianMatrix m_op = construction_stage(u, s, stage);
    HermitianMatrix rotated_op = conjugate(u_mat, m_op);
    Rational lhs = real_trace_product(rotated_state, m_op);
    Rational rhs = real_trace_product(rho.matrix(), rotated_op);
    if (lhs != rhs)
      throw AssertionFailure("conjugation broke the outcome probability", s);
    conj_elems.emplace_back(s, std::move(rotated_op));
    ++rep.labels_checked;
  }
  try {
    validate(OperatorMap::make(u.dim, std::move(conj_elems)));
  } catch (const ValidationError& e) {
    throw AssertionFailure("conjugated family failed validation", e.offender);
  }
  rep.semipovm_preserved = true;
  return rep;
}

}  // namespace semipovm
