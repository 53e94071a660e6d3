#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "semipovm/constructions.hpp"
#include "semipovm/errors.hpp"
#include "semipovm/linalg.hpp"
#include "semipovm/prefix_machine.hpp"
#include "test_util.hpp"

using namespace semipovm;
using testutil::make_rat;

namespace {

ScalarStageEnumerator const_mass(std::map<std::string, Rational, CanonicalLess> v) {
  return staged_from_map(std::move(v));
}

HermitianMatrix h2x2(const Rational& a, const Rational& b, const Rational& c) {
  ComplexMatrix m(2);
  m.set(0, 0, ComplexRational(a));
  m.set(0, 1, ComplexRational(b));
  m.set(1, 0, ComplexRational(b));
  m.set(1, 1, ComplexRational(c));
  return HermitianMatrix(m);
}

}  // namespace

TEST_CASE("staged mass from an enumerated table") {
  ComplexityTable table = enumerate(14, 1000);
  ScalarStageEnumerator m = staged_from_table(table);
  CHECK(m.declared_monotone);

  // Below length 3 nothing halts; at 3 only HALT itself prints lambda.
  CHECK(m.stage_fn(2, "") == 0);
  CHECK(m.stage_fn(3, "") == make_rat(1, 8));
  CHECK(m.stage_fn(14, "") == table.p_lower(""));
  CHECK(m.stage_fn(30, "") == table.p_lower(""));  // saturates past max_len
  CHECK(m.stage_fn(14, "0") == table.p_lower("0"));
  CHECK(m.stage_fn(5, std::string(40, '1')) == 0);

  for (unsigned n = 0; n < 14; ++n)
    CHECK(m.stage_fn(n, "") <= m.stage_fn(n + 1, ""));

  SemimeasureReport rep = validate_semimeasure(m, 15, first_strings(8));
  CHECK(rep.pass);
}

TEST_CASE("staged mass from explicit values") {
  ScalarStageEnumerator m = const_mass({{"", make_rat(1, 4)}, {"0", make_rat(1, 8)}});
  CHECK(m.stage_fn(0, "") == make_rat(1, 4));
  CHECK(m.stage_fn(9, "") == make_rat(1, 4));  // constant across stages
  CHECK(m.stage_fn(0, "1") == 0);              // absent label
  CHECK(m.declared_monotone);
}

TEST_CASE("default G and H") {
  for (int n = 2; n <= 4; ++n) {
    HermitianMatrix g = default_g(n);
    HermitianMatrix h = default_h(n);
    CHECK(g.at(0, 0) == ComplexRational(Rational(1)));
    for (int i = 1; i < n; ++i) CHECK(g.at(i, i) == ComplexRational(make_rat(1, 2)));
    CHECK(h.at(0, 1) == ComplexRational(make_rat(1, 4)));
    CHECK(h.at(0, 0) == ComplexRational(make_rat(1, 2)));

    CHECK(is_pd(g));
    CHECK(is_pd(h));
    CHECK(loewner_leq(g, HermitianMatrix::identity(n)));
    CHECK(loewner_leq(h, HermitianMatrix::identity(n)));
    CHECK(!commutator(g, h).is_zero());
  }
}

TEST_CASE("scalar construction is a mass multiple of the identity") {
  ScalarStageEnumerator m = const_mass({{"", make_rat(1, 4)}});
  UniversalApprox u = UniversalApprox::scalar(m, 3);
  HermitianMatrix s = construction_stage(u, "", 5);
  CHECK(s == (make_rat(1, 4) * HermitianMatrix::identity(3)));
  CHECK(construction_stage(u, "0", 5) == HermitianMatrix::zero(3));

  ScalarStageEnumerator bad = const_mass({{"", Rational(2)}});
  UniversalApprox ub = UniversalApprox::scalar(bad, 2);
  CHECK_THROWS_AS(construction_stage(ub, "", 0), ValidationError);
  CHECK_THROWS_AS(UniversalApprox::scalar(m, 0), DimensionError);
}

TEST_CASE("noncommuting construction reproduces the worked 2x2 value") {
  ScalarStageEnumerator m = const_mass({{"", make_rat(1, 4)}, {"0", make_rat(1, 8)}});
  UniversalApprox u =
      UniversalApprox::noncommuting(m, 2, default_g(2), default_h(2));

  // M(lambda) = (1/8)(G + H) = [[3/16, 1/32], [1/32, 1/8]].
  HermitianMatrix ml = construction_stage(u, "", 3);
  CHECK(ml == h2x2(make_rat(3, 16), make_rat(1, 32), make_rat(1, 8)));

  // M("0") = (1/16)(G/2 + H): phi("0") = 1 halves the G part.
  HermitianMatrix m0 = noncommuting_universal(u, "0", 3);
  HermitianMatrix expect = make_rat(1, 16) * (make_rat(1, 2) * default_g(2) + default_h(2));
  CHECK(m0 == expect);

  // Zero mass gives the zero matrix regardless of phi.
  CHECK(noncommuting_universal(u, "11", 3) == HermitianMatrix::zero(2));

  // The family members genuinely do not commute.
  CHECK(!commutator(ml, m0).is_zero());

  // Loewner sandwich (c/2) m I <= M <= m I with c = 1/4 for the defaults.
  Rational c = certify_lower_spectral_bound(default_h(2), 8);
  HermitianMatrix lower = Rational(c * make_rat(1, 4) / 2) * HermitianMatrix::identity(2);
  HermitianMatrix upper = make_rat(1, 4) * HermitianMatrix::identity(2);
  CHECK(loewner_leq(lower, ml));
  CHECK(loewner_leq(ml, upper));
}

TEST_CASE("noncommuting construction validates its ingredients") {
  ScalarStageEnumerator m = const_mass({{"", make_rat(1, 4)}});
  HermitianMatrix g = default_g(2), h = default_h(2);

  CHECK_THROWS_AS(UniversalApprox::noncommuting(m, 1, g, h), ValidationError);
  CHECK_THROWS_AS(
      UniversalApprox::noncommuting(m, 2, Rational(2) * HermitianMatrix::identity(2), h),
      ValidationError);
  CHECK_THROWS_AS(UniversalApprox::noncommuting(m, 2, HermitianMatrix::zero(2), h),
                  ValidationError);
  CHECK_THROWS_AS(UniversalApprox::noncommuting(m, 2, g, g), ValidationError);
  CHECK_THROWS_AS(UniversalApprox::noncommuting(m, 2, g, default_h(3)), DimensionError);

  // phi(s) beyond the exact-scaling guard is refused, not approximated.
  std::string far(64, '1');
  ScalarStageEnumerator mf = const_mass({{far, make_rat(1, 4)}});
  UniversalApprox uf = UniversalApprox::noncommuting(mf, 2, g, h);
  CHECK_THROWS_AS(noncommuting_universal(uf, far, 1), UnsupportedError);
  // Zero-mass labels short-circuit to the zero matrix before the guard.
  UniversalApprox u = UniversalApprox::noncommuting(m, 2, g, h);
  CHECK(noncommuting_universal(u, far, 1) == HermitianMatrix::zero(2));
}

TEST_CASE("construction map collects the family over a support") {
  ScalarStageEnumerator m = const_mass(
      {{"", make_rat(1, 4)}, {"0", make_rat(1, 8)}, {"1", make_rat(1, 16)}});
  UniversalApprox u = UniversalApprox::scalar(m, 2);
  OperatorMap fam = construction_map(u, {"1", "", "0"}, 2);
  auto labels = fam.labels();
  REQUIRE(labels.size() == 3);
  CHECK(labels[0] == "");
  CHECK(labels[1] == "0");
  CHECK(labels[2] == "1");
  CHECK(*fam.find("1") == (make_rat(1, 16) * HermitianMatrix::identity(2)));
  CHECK(validate(fam).is_povm == false);
}

TEST_CASE("commutator identity residual vanishes") {
  ScalarStageEnumerator m = const_mass({{"", make_rat(1, 4)},
                                        {"0", make_rat(1, 8)},
                                        {"1", make_rat(1, 16)},
                                        {"00", make_rat(1, 32)}});
  UniversalApprox u = UniversalApprox::noncommuting(m, 3, default_g(3), default_h(3));

  auto support = first_strings(4);
  for (const auto& s : support)
    for (const auto& t : support) {
      ComplexMatrix res = commutator_identity_residual(u, s, t, 4);
      CHECK(res.is_zero());
    }

  // And explicitly: [M(s),M(t)] = (1/4) m(s) m(t) (2^-phi(s) - 2^-phi(t)) [G,H].
  HermitianMatrix ms = construction_stage(u, "", 4);
  HermitianMatrix mt = construction_stage(u, "0", 4);
  ComplexMatrix lhs = commutator(ms, mt);
  Rational coeff = make_rat(1, 4) * make_rat(1, 4) * make_rat(1, 8) *
                   (pow2_rational(0) - pow2_rational(-1));
  ComplexMatrix rhs = ComplexRational(coeff) * commutator(default_g(3), default_h(3));
  CHECK(lhs == rhs);

  UniversalApprox sc = UniversalApprox::scalar(m, 2);
  CHECK_THROWS_AS(commutator_identity_residual(sc, "", "0", 1), ValidationError);
}

TEST_CASE("certified lower spectral bounds") {
  CHECK(certify_lower_spectral_bound(default_h(2), 2) == make_rat(1, 4));
  CHECK(certify_lower_spectral_bound(default_h(2), 10) == make_rat(1, 4));
  CHECK(certify_lower_spectral_bound(HermitianMatrix::identity(3), 4) == 1);
  CHECK(certify_lower_spectral_bound(HermitianMatrix::zero(2), 6) == 0);

  HermitianMatrix d = HermitianMatrix::diagonal({make_rat(1, 3), Rational(1)});
  Rational c = certify_lower_spectral_bound(d, 8);
  CHECK(c <= make_rat(1, 3));
  CHECK(c >= make_rat(1, 3) - pow2_rational(-8));
  CHECK(is_psd(d - c * HermitianMatrix::identity(2)));

  CHECK_THROWS_AS(
      certify_lower_spectral_bound(Rational(-1) * HermitianMatrix::identity(2), 4),
      ValidationError);
}

TEST_CASE("approximation sequence stages strictly increase") {
  ScalarStageEnumerator m = const_mass(
      {{"", make_rat(1, 4)}, {"0", make_rat(1, 8)}, {"1", make_rat(1, 16)}});
  UniversalApprox u = UniversalApprox::scalar(m, 2);
  auto support = first_strings(3);

  ApproxStage st = approx_sequence(u, 2, support);
  CHECK(st.n == 2);
  REQUIRE(st.elements.size() == 3);

  // Constant scalar mass c: g(j) = (c - 2^-j) I turns PD at the first j with
  // 2^-j < c, then stays comparable, so tau(n) counts up from there.
  CHECK(st.elements[0].label == "");
  CHECK(st.elements[0].tau == 5);  // tau(0)=3 -> 4 -> 5
  CHECK(st.elements[1].tau == 6);  // mass 1/8: tau(0)=4
  CHECK(st.elements[2].tau == 7);  // mass 1/16: tau(0)=5

  for (const auto& el : st.elements) {
    CHECK(el.tau >= st.n + 1);
    // M_tau - F_n = 2^-tau I < 2^-n I, exactly.
    HermitianMatrix diff = el.m_at_tau - el.f;
    CHECK(diff == (pow2_rational(-(long)el.tau) * HermitianMatrix::identity(2)));
    CHECK(loewner_leq(diff, pow2_rational(-(long)st.n) * HermitianMatrix::identity(2)));
    CHECK(diff != (pow2_rational(-(long)st.n) * HermitianMatrix::identity(2)));
    CHECK(is_pd(el.f));
  }

  CHECK(validate(st.f_map).is_povm == false);

  // Later n only improves every element in the Loewner order.
  ApproxStage st3 = approx_sequence(u, 3, support);
  for (std::size_t i = 0; i < st.elements.size(); ++i) {
    CHECK(st3.elements[i].tau > st.elements[i].tau);
    CHECK(loewner_leq(st.elements[i].f, st3.elements[i].f));
  }

  // Zero mass never turns PD: the budget is exhausted honestly.
  ScalarStageEnumerator z = const_mass({{"", Rational(0)}});
  UniversalApprox uz = UniversalApprox::scalar(z, 2);
  CHECK_THROWS_AS(approx_sequence(uz, 1, {""}, 32), BudgetError);
}

TEST_CASE("approximation sequence in the noncommuting family") {
  ScalarStageEnumerator m = const_mass({{"", make_rat(1, 4)}, {"0", make_rat(1, 8)}});
  UniversalApprox u = UniversalApprox::noncommuting(m, 2, default_g(2), default_h(2));

  ApproxStage st = approx_sequence(u, 2, first_strings(2));
  for (const auto& el : st.elements) {
    CHECK(is_pd(el.f));
    CHECK(loewner_leq(el.f, el.m_at_tau));
    CHECK((el.m_at_tau - el.f) ==
          (pow2_rational(-(long)el.tau) * HermitianMatrix::identity(2)));
  }
  SemiPovmCert cert = validate(st.f_map);
  CHECK(is_psd(cert.defect));
}

TEST_CASE("povm sequence completes over the next string") {
  ScalarStageEnumerator m = const_mass(
      {{"", make_rat(1, 4)}, {"0", make_rat(1, 8)}, {"1", make_rat(1, 16)}});
  UniversalApprox u = UniversalApprox::scalar(m, 2);
  ApproxStage st = approx_sequence(u, 3, first_strings(3));

  OperatorMap g3 = povm_sequence(st.f_map, 3);
  auto labels = g3.labels();
  REQUIRE(labels.size() == 4);
  CHECK(labels[0] == "");
  CHECK(labels[1] == "0");
  CHECK(labels[2] == "1");
  CHECK(labels[3] == "00");  // phi_inv(3): the defect label
  CHECK(validate(g3).is_povm);
  CHECK(g3.sum() == HermitianMatrix::identity(2));
  CHECK(*g3.find("") == *st.f_map.find(""));

  CHECK_THROWS_AS(povm_sequence(st.f_map, 2), ValidationError);
  OperatorMap wrong = OperatorMap::make(
      2, {{"1", make_rat(1, 4) * HermitianMatrix::identity(2)}});
  CHECK_THROWS_AS(povm_sequence(wrong, 1), ValidationError);
}

TEST_CASE("diagonal semi-density from the staged mass") {
  ScalarStageEnumerator m = const_mass({{"0", make_rat(1, 2)},
                                        {"1", make_rat(1, 4)},
                                        {"00", make_rat(1, 8)},
                                        {"01", make_rat(1, 16)}});
  SemiDensityApprox sd = semi_density_sigma(m, 4, 7);
  CHECK(sd.dim == 4);
  CHECK(sd.stage == 7);
  CHECK(sd.sigma == HermitianMatrix::diagonal({make_rat(1, 2), make_rat(1, 4),
                                               make_rat(1, 8), make_rat(1, 16)}));
  CHECK(sd.sigma.trace_real() < 1);

  ComplexityTable table = enumerate(14, 1000);
  ScalarStageEnumerator tm = staged_from_table(table);
  SemiDensityApprox tsd = semi_density_sigma(tm, 6, 14);
  CHECK(tsd.sigma.is_diagonal());
  CHECK(tsd.sigma.trace_real() <= 1);
  CHECK(tsd.sigma.at(0, 0).re == table.p_lower("0"));
  CHECK(tsd.sigma.at(2, 2).re == table.p_lower("00"));

  ScalarStageEnumerator fat = const_mass({{"0", Rational(1)}, {"1", make_rat(1, 2)}});
  CHECK_THROWS_AS(semi_density_sigma(fat, 2, 0), ValidationError);
}

TEST_CASE("trace deficiency search dovetails to a witness") {
  // Uniform rows: member N has every diagonal entry 1/N. The first probe with
  // 1 - (N-1)/N < 1/4 is N = 5, i = 1, still in round k = 0.
  StagedDiagonalFamily uniform{
      8, [](unsigned n, unsigned, unsigned) -> Rational { return Rational(1) / Rational(n); }};
  auto w = trace_deficiency_search(uniform, make_rat(1, 4), 10000);
  REQUIRE(w.has_value());
  CHECK(w->n == 5);
  CHECK(w->i == 1);
  CHECK(w->k == 0);
  CHECK(w->bound == make_rat(1, 5));

  // Ten probes are not enough to reach N = 5 (it takes eleven).
  CHECK(!trace_deficiency_search(uniform, make_rat(1, 4), 10).has_value());

  // Staged entries approach 1/N from below: the witness appears only once the
  // stage k = 4 makes the partial sums heavy enough, at N = 7.
  StagedDiagonalFamily staged{
      8, [](unsigned n, unsigned, unsigned k) -> Rational {
        return Rational(1) / Rational(n) * (Rational(1) - pow2_rational(-(long)k));
      }};
  auto sw = trace_deficiency_search(staged, make_rat(1, 5), 100000);
  REQUIRE(sw.has_value());
  CHECK(sw->k == 4);
  CHECK(sw->n == 7);
  CHECK(sw->i == 1);
  CHECK(sw->bound == make_rat(11, 56));

  // No mass anywhere: nothing ever fires.
  StagedDiagonalFamily empty{
      4, [](unsigned, unsigned, unsigned) { return Rational(0); }};
  CHECK(!trace_deficiency_search(empty, make_rat(1, 4), 500).has_value());

  // family_from_staged_scalar mirrors the scalar mass under phi indexing.
  ScalarStageEnumerator m = const_mass({{"0", make_rat(1, 2)}, {"1", make_rat(1, 4)}});
  StagedDiagonalFamily fam = family_from_staged_scalar(m, 4);
  CHECK(fam.max_dim == 4);
  CHECK(fam.entry_fn(2, 1, 0) == make_rat(1, 2));
  CHECK(fam.entry_fn(2, 2, 3) == make_rat(1, 4));
  CHECK(fam.entry_fn(4, 3, 0) == 0);
}

TEST_CASE("conjugated construction members") {
  ScalarStageEnumerator m = const_mass({{"", make_rat(1, 4)}});
  UniversalApprox u = UniversalApprox::noncommuting(m, 2, default_g(2), default_h(2));

  ComplexMatrix rot(2);
  rot.set(0, 0, ComplexRational(make_rat(3, 5)));
  rot.set(0, 1, ComplexRational(make_rat(4, 5)));
  rot.set(1, 0, ComplexRational(make_rat(-4, 5)));
  rot.set(1, 1, ComplexRational(make_rat(3, 5)));

  HermitianMatrix direct = conjugate(rot, construction_stage(u, "", 2));
  CHECK(conjugate_construction(u, rot, "", 2) == direct);
  CHECK(direct.trace_real() == construction_stage(u, "", 2).trace_real());

  ComplexMatrix shear(2);
  shear.set(0, 0, ComplexRational(Rational(1)));
  shear.set(0, 1, ComplexRational(Rational(1)));
  shear.set(1, 1, ComplexRational(Rational(1)));
  CHECK_THROWS_AS(conjugate_construction(u, shear, "", 2), ValidationError);
}
