#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <unistd.h>

#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "semipovm/errors.hpp"
#include "semipovm/json_io.hpp"
#include "semipovm/prefix_machine.hpp"
#include "test_util.hpp"

using namespace semipovm;
using nlohmann::json;
using testutil::make_rat;

namespace {

ComplexRational cr(const Rational& re, const Rational& im) { return ComplexRational(re, im); }

// Scratch directory for the file-based helpers, wiped per test case.
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("semipovm-json-" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("matrix json round-trips exactly and emits rational strings") {
  ComplexMatrix m(2);
  m.set(0, 0, cr(make_rat(3, 16), Rational(0)));
  m.set(0, 1, cr(make_rat(1, 32), make_rat(-2, 7)));
  m.set(1, 0, cr(make_rat(1, 32), make_rat(2, 7)));
  m.set(1, 1, cr(make_rat(1, 8), Rational(0)));

  json j = matrix_to_json(m);
  CHECK(j.at("dim") == 2);
  CHECK(j.at("entries").size() == 2);
  CHECK(j.at("entries").at(0).at(1).at("re") == "1/32");
  CHECK(j.at("entries").at(0).at(1).at("im") == "-2/7");
  CHECK(j.at("entries").at(0).at(0).at("im") == "0");

  ComplexMatrix back = matrix_from_json(j);
  CHECK(back == m);

  // Serialization is a function of the value alone: same matrix, same bytes.
  CHECK(matrix_to_json(back).dump() == j.dump());
}

TEST_CASE("matrix json readers are strict") {
  json good = matrix_to_json(ComplexMatrix::identity(2));

  json zero_dim = good;
  zero_dim["dim"] = 0;
  CHECK_THROWS_AS(matrix_from_json(zero_dim), ParseError);

  json huge_dim = good;
  huge_dim["dim"] = 4096;
  CHECK_THROWS_AS(matrix_from_json(huge_dim), ParseError);

  json short_rows = good;
  short_rows["entries"].erase(1);
  CHECK_THROWS_AS(matrix_from_json(short_rows), ParseError);

  json ragged = good;
  ragged["entries"][0].erase(1);
  CHECK_THROWS_AS(matrix_from_json(ragged), ParseError);

  json missing_re = good;
  missing_re["entries"][0][0].erase("re");
  CHECK_THROWS_WITH_AS(matrix_from_json(missing_re), doctest::Contains("missing field"),
                       ParseError);

  json decimal = good;
  decimal["entries"][0][0]["re"] = "1.5";
  CHECK_THROWS_AS(matrix_from_json(decimal), ParseError);

  json numeric_cell = good;
  numeric_cell["entries"][0][0]["re"] = 1;
  CHECK_THROWS_WITH_AS(matrix_from_json(numeric_cell), doctest::Contains("must be a string"),
                       ParseError);

  CHECK_THROWS_AS(matrix_from_json(json::array()), ParseError);
}

TEST_CASE("operator map json round-trips through validation") {
  std::mt19937_64 rng(20240816);
  OperatorMap r = testutil::rand_semipovm(rng, 2, 3);

  json j = operator_map_to_json(r);
  OperatorMap back = operator_map_from_json(j);
  CHECK(back.dim == r.dim);
  REQUIRE(back.elements.size() == r.elements.size());
  for (std::size_t i = 0; i < r.elements.size(); ++i) {
    CHECK(back.elements[i].first == r.elements[i].first);
    CHECK(back.elements[i].second == r.elements[i].second);
  }

  // Readers re-sort, so element order in the file is not load-bearing.
  json shuffled = j;
  std::swap(shuffled["elements"][0], shuffled["elements"][2]);
  OperatorMap resorted = operator_map_from_json(shuffled);
  CHECK(resorted.labels() == r.labels());
}

TEST_CASE("operator map json rejects bad labels, duplicates, and non-hermitian entries") {
  OperatorMap r = OperatorMap::make(
      2, {{"", HermitianMatrix::diagonal({make_rat(1, 4), make_rat(1, 8)})}});
  json good = operator_map_to_json(r);

  json bad_label = good;
  bad_label["elements"][0]["label"] = "01x";
  CHECK_THROWS_WITH_AS(operator_map_from_json(bad_label), doctest::Contains("binary"),
                       ParseError);

  json dup = good;
  dup["elements"].push_back(good["elements"][0]);
  CHECK_THROWS_AS(operator_map_from_json(dup), ValidationError);

  json skew = good;
  skew["elements"][0]["matrix"]["entries"][0][1]["re"] = "1";
  CHECK_THROWS_AS(operator_map_from_json(skew), ValidationError);

  json mixed_dim = good;
  mixed_dim["dim"] = 3;
  CHECK_THROWS_AS(operator_map_from_json(mixed_dim), DimensionError);
}

TEST_CASE("complexity table json round-trips with budgets and index intact") {
  ComplexityTable t = enumerate(10, 1000);
  json j = table_to_json(t);
  CHECK(j.at("max_len") == 10);
  CHECK(j.at("max_steps") == 1000);
  CHECK(j.at("records").size() == t.records.size());

  ComplexityTable back = table_from_json(j);
  CHECK(back == t);
  CHECK(back.k_upper("") == t.k_upper(""));
  CHECK(back.p_lower("") == t.p_lower(""));
  CHECK(back.kraft() == t.kraft());
}

TEST_CASE("complexity table json readers are strict") {
  json good = table_to_json(enumerate(8, 1000));

  json reordered = good;
  std::swap(reordered["records"][0], reordered["records"][1]);
  CHECK_THROWS_WITH_AS(table_from_json(reordered),
                       doctest::Contains("canonical program order"), ParseError);

  json overlong = good;
  overlong["max_len"] = 4;  // several records are longer than this budget
  CHECK_THROWS_WITH_AS(table_from_json(overlong), doctest::Contains("budget"), ParseError);

  json silly_len = good;
  silly_len["max_len"] = 31;
  CHECK_THROWS_AS(table_from_json(silly_len), ParseError);

  json bad_bits = good;
  bad_bits["records"][0]["bits"] = "0b01";
  CHECK_THROWS_AS(table_from_json(bad_bits), ParseError);

  json negative_steps = good;
  negative_steps["records"][0]["steps"] = -3;
  CHECK_THROWS_WITH_AS(table_from_json(negative_steps),
                       doctest::Contains("non-negative integer"), ParseError);

  json no_records = good;
  no_records.erase("records");
  CHECK_THROWS_AS(table_from_json(no_records), ParseError);
}

TEST_CASE("sample counts serialize in canonical label order") {
  SampleCounts c;
  c.seed = 7;
  c.trials = 100;
  c.counts["1"] = 40;
  c.counts["00"] = 10;
  c.counts[""] = 50;

  json j = counts_to_json(c);
  CHECK(j.at("seed") == 7);
  CHECK(j.at("trials") == 100);
  REQUIRE(j.at("counts").size() == 3);
  CHECK(j["counts"][0]["label"] == "");
  CHECK(j["counts"][0]["count"] == 50);
  CHECK(j["counts"][1]["label"] == "1");
  CHECK(j["counts"][2]["label"] == "00");
}

TEST_CASE("bound report csv follows the fixed header and infinity conventions") {
  BoundReport r;
  r.precision = 16;

  BoundRow finite;
  finite.s = "";
  finite.prob = make_rat(3, 4);
  finite.k_upper = 3;
  finite.p_lower = make_rat(1, 8);
  finite.row_d = RationalInterval(make_rat(5, 2), make_rat(8, 3));
  finite.row_c = Rational(6);

  BoundRow unwitnessed;  // prob > 0, no program found: d = +inf
  unwitnessed.s = "0";
  unwitnessed.prob = make_rat(1, 4);
  unwitnessed.k_upper = std::nullopt;
  unwitnessed.p_lower = 0;
  unwitnessed.d_plus_inf = true;

  BoundRow nullprob;  // prob == 0: d = -inf, ratio 0
  nullprob.s = "1";
  nullprob.prob = 0;
  nullprob.k_upper = 5;
  nullprob.p_lower = make_rat(1, 16);
  nullprob.d_minus_inf = true;
  nullprob.row_c = Rational(0);

  r.rows = {finite, unwitnessed, nullprob};
  r.d_observed = finite.row_d;
  r.c_observed = finite.row_c;
  r.infinite_d_rows = 1;
  r.infinite_c_rows = 1;

  std::string csv = bound_report_to_csv(r);
  CHECK(csv == "s,prob_num,prob_den,k_upper,p_lower_num,p_lower_den,row_d,row_c\n"
               ",3,4,3,1,8,5/2:8/3,6\n"
               "0,1,4,inf,0,1,inf,inf\n"
               "1,0,1,5,1,16,-inf,0\n");
}

TEST_CASE("bound report json carries nullable witnesses") {
  BoundReport empty;
  empty.precision = 32;
  json je = bound_report_to_json(empty);
  CHECK(je.at("rows").empty());
  CHECK(je.at("d_observed").is_null());
  CHECK(je.at("c_observed").is_null());
  CHECK(je.at("precision") == 32);

  BoundReport r;
  BoundRow row;
  row.s = "01";
  row.prob = make_rat(1, 2);
  row.k_upper = std::nullopt;
  row.p_lower = make_rat(1, 4);
  row.d_plus_inf = true;
  row.row_c = Rational(2);
  r.rows = {row};
  r.c_observed = Rational(2);
  r.infinite_d_rows = 1;

  json j = bound_report_to_json(r);
  CHECK(j["rows"][0]["k_upper"] == "inf");
  CHECK(j["rows"][0]["row_d"] == "inf");
  CHECK(j["rows"][0]["row_c"] == "2");
  CHECK(j["rows"][0]["prob"] == "1/2");
  CHECK(j["c_observed"] == "2");
  CHECK(j["d_observed"].is_null());
  CHECK(j["infinite_d_rows"] == 1);
  CHECK(j["infinite_c_rows"] == 0);
}

TEST_CASE("config text parses key=value lines with comments and trimming") {
  auto cfg = parse_config_text(
      "# construction defaults\n"
      "kind = scalar\n"
      "\n"
      "  dim=2\t\n"
      "table = runs/table.json  \n");
  CHECK(cfg.size() == 3);
  CHECK(cfg.at("kind") == "scalar");
  CHECK(cfg.at("dim") == "2");
  CHECK(cfg.at("table") == "runs/table.json");

  CHECK(parse_config_text("").empty());
  CHECK(parse_config_text("# only a comment\n").empty());
  CHECK_THROWS_WITH_AS(parse_config_text("kind scalar\n"), doctest::Contains("'='"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_config_text("= 2\n"), doctest::Contains("key"), ParseError);
  CHECK_THROWS_WITH_AS(parse_config_text("dim=2\ndim=3\n"), doctest::Contains("duplicate"),
                       ParseError);
}

TEST_CASE("file helpers round-trip and wrap parse failures") {
  TempDir tmp;

  json j = {{"alpha", "1/2"}, {"beta", 3}};
  save_json(tmp.file("x.json"), j);
  std::string raw = read_text_file(tmp.file("x.json"));
  CHECK(raw.back() == '\n');
  CHECK(load_json(tmp.file("x.json")) == j);

  write_text_file(tmp.file("y.txt"), "dim=2\n");
  CHECK(read_text_file(tmp.file("y.txt")) == "dim=2\n");

  write_text_file(tmp.file("bad.json"), "{not json");
  CHECK_THROWS_WITH_AS(load_json(tmp.file("bad.json")), doctest::Contains("invalid JSON"),
                       ParseError);
  CHECK_THROWS_WITH_AS(load_json(tmp.file("absent.json")), doctest::Contains("cannot read"),
                       ParseError);
}
