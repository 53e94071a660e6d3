#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "semipovm/errors.hpp"
#include "semipovm/prefix_machine.hpp"
#include "semipovm/rational.hpp"
#include "test_util.hpp"

using namespace semipovm;
using testutil::make_rat;

namespace {

RunResult go(const std::string& bits, std::uint64_t steps = 1000) {
  return run(Program{bits}, steps);
}

}  // namespace

TEST_CASE("single instructions") {
  RunResult r = go("000");  // HALT
  CHECK(r.status == RunStatus::Halted);
  CHECK(r.output == "");
  CHECK(r.steps == 1);

  r = go("10001101");  // LITERAL "01"
  CHECK(r.status == RunStatus::Halted);
  CHECK(r.output == "01");
  CHECK(r.steps == 1);

  r = go("001010000");  // APPEND0, APPEND1, HALT
  CHECK(r.status == RunStatus::Halted);
  CHECK(r.output == "01");
  CHECK(r.steps == 3);

  r = go("011000");  // NOOP, HALT
  CHECK(r.status == RunStatus::Halted);
  CHECK(r.output == "");
  CHECK(r.steps == 2);
}

TEST_CASE("invalid programs") {
  RunResult r = go("");
  CHECK(r.status == RunStatus::InvalidProgram);
  CHECK(r.reason == InvalidReason::Incomplete);

  r = go("00");
  CHECK(r.status == RunStatus::InvalidProgram);
  CHECK(r.reason == InvalidReason::Incomplete);

  r = go("0000");  // HALT with a leftover bit
  CHECK(r.status == RunStatus::InvalidProgram);
  CHECK(r.reason == InvalidReason::TrailingBits);

  r = go("110");
  CHECK(r.status == RunStatus::InvalidProgram);
  CHECK(r.reason == InvalidReason::DeadDecode);

  r = go("111000");
  CHECK(r.status == RunStatus::InvalidProgram);
  CHECK(r.reason == InvalidReason::DeadDecode);

  r = go("100");  // LITERAL with no operand
  CHECK(r.status == RunStatus::InvalidProgram);
  CHECK(r.reason == InvalidReason::Incomplete);
}

TEST_CASE("branch-back always revisits, hence diverges") {
  CHECK(diverging_program() == "1011");
  RunResult r = go("1011");
  CHECK(r.status == RunStatus::StillRunning);

  // NOOP, then BRANCHBACK 1 to the NOOP: an instruction repeats.
  r = go("0111011");
  CHECK(r.status == RunStatus::StillRunning);
  CHECK(r.steps <= 3);  // divergence is proven, not timed out
}

TEST_CASE("literal programs round-trip") {
  CHECK(literal_program("01") == "10001101");
  CHECK(literal_program("") == "1001");

  for (const std::string& s :
       {std::string(""), std::string("0"), std::string("1"), std::string("0110"),
        std::string("1010011"), std::string("000000000000")}) {
    std::string p = literal_program(s);
    RunResult r = go(p);
    REQUIRE(r.status == RunStatus::Halted);
    CHECK(r.output == s);
    // Exact-consumption makes every extension invalid: prefix freedom.
    RunResult ext = go(p + "0");
    CHECK(ext.status == RunStatus::InvalidProgram);
    CHECK(ext.reason == InvalidReason::TrailingBits);
  }
}

TEST_CASE("enumeration at L=14") {
  ComplexityTable t = enumerate(14, 1000);
  CHECK(t.max_len == 14);
  CHECK(t.max_steps == 1000);
  CHECK(t.records.size() == 302);
  CHECK(t.kraft() == make_rat(2937, 8192));
  CHECK(t.kraft() <= 1);

  REQUIRE(t.k_upper("").has_value());
  CHECK(*t.k_upper("") == 3);  // "000"
  REQUIRE(t.k_upper("0").has_value());
  CHECK(*t.k_upper("0") == 6);  // "001000"
  CHECK(t.p_lower("") == make_rat(1755, 8192));
  CHECK(t.p_lower("") >= pow2_rational(-3));
  CHECK(!t.k_upper(std::string(40, '1')).has_value());
  CHECK(t.p_lower(std::string(40, '1')) == 0);

  CHECK(prefix_free_check(t.records));
  CHECK(kraft_sum(t.records) == t.kraft());

  // Records arrive in canonical program order and re-execute exactly.
  CanonicalLess less;
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    if (i > 0) CHECK(less(t.records[i - 1].bits, t.records[i].bits));
    RunResult r = go(t.records[i].bits, t.max_steps);
    REQUIRE(r.status == RunStatus::Halted);
    CHECK(r.output == t.records[i].output);
    CHECK(r.steps == t.records[i].steps);
  }

  // p_lower is the exact mass split of the Kraft sum.
  Rational mass(0);
  for (const auto& [s, kv] : t.outputs()) mass += kv.second;
  CHECK(mass == t.kraft());
}

TEST_CASE("k_upper is witnessed by a shortest record") {
  ComplexityTable t = enumerate(14, 1000);
  for (const auto& [s, kv] : t.outputs()) {
    bool witnessed = false;
    for (const auto& rec : t.records)
      if (rec.output == s && rec.bits.size() == kv.first) witnessed = true;
    CHECK(witnessed);
    for (const auto& rec : t.records)
      if (rec.output == s) CHECK(rec.bits.size() >= kv.first);
  }
}

TEST_CASE("extend reproduces a fresh enumeration") {
  ComplexityTable base = enumerate(14, 1000);
  ComplexityTable grown = extend(base, 16, 1000);
  ComplexityTable fresh = enumerate(16, 1000);
  CHECK(grown == fresh);
  CHECK(grown.kraft() == fresh.kraft());

  ComplexityTable same = extend(base, 14, 1000);
  CHECK(same == base);

  CHECK_THROWS_AS(extend(base, 12, 1000), ValidationError);
  CHECK_THROWS_AS(extend(base, 14, 500), ValidationError);

  // A tampered base is caught by re-execution.
  ComplexityTable bad = base;
  bad.records[0].output = "11111";
  CHECK_THROWS_AS(extend(bad, 16, 1000), ValidationError);
}

TEST_CASE("enumeration budgets") {
  CHECK_THROWS_AS(enumerate(25, 1000), BudgetError);  // default cap is 24
  CHECK_THROWS_AS(enumerate(14, 2000000), BudgetError);

  EnumerationLimits tight;
  tight.max_record_bytes = 64;  // far below what 302 records need
  CHECK_THROWS_AS(enumerate(14, 1000, tight), BudgetError);

  EnumerationLimits loose;
  loose.max_len_cap = 30;
  loose.max_steps_cap = 10000000;
  ComplexityTable t = enumerate(10, 1000, loose);
  CHECK(prefix_free_check(t.records));
}

TEST_CASE("kraft_sum rejects non-prefix-free sets") {
  std::vector<HaltRecord> recs = {{"000", "", 1}, {"0000", "", 1}};
  CHECK(!prefix_free_check(recs));
  CHECK_THROWS_AS(kraft_sum(recs), ValidationError);

  std::vector<HaltRecord> ok = {{"000", "", 1}, {"0010", "x", 1}};
  CHECK(prefix_free_check(ok));
  CHECK(kraft_sum(ok) == make_rat(1, 8) + make_rat(1, 16));
}

TEST_CASE("larger budgets keep the kraft sum under one") {
  ComplexityTable t = enumerate(18, 10000);
  CHECK(t.kraft() <= 1);
  CHECK(prefix_free_check(t.records));
  // More budget, more mass.
  ComplexityTable small = enumerate(14, 1000);
  CHECK(t.kraft() >= small.kraft());
  for (const auto& [s, kv] : small.outputs()) {
    REQUIRE(t.k_upper(s).has_value());
    CHECK(*t.k_upper(s) <= kv.first);
    CHECK(t.p_lower(s) >= kv.second);
  }
}
