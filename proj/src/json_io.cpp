#include "semipovm/json_io.hpp"

#include <fstream>
#include <sstream>

#include "semipovm/errors.hpp"

namespace semipovm {

namespace {

using nlohmann::json;

const json& require_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::uint64_t require_uint(const json& j, const char* key) {
  const json& v = require_field(j, key);
  // In-memory values built from int land as signed numbers; accept them when
  // non-negative so writer output round-trips without a disk hop.
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0)
    return (std::uint64_t)v.get<std::int64_t>();
  throw ParseError(std::string("field \"") + key + "\" must be a non-negative integer");
}

std::string require_str(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_string())
    throw ParseError(std::string("field \"") + key + "\" must be a string");
  return v.get<std::string>();
}

int require_dim(const json& j) {
  std::uint64_t d = require_uint(j, "dim");
  if (d == 0 || d > 1024) throw ParseError("\"dim\" out of range");
  return (int)d;
}

std::string require_bits(const json& j, const char* key) {
  std::string s = require_str(j, key);
  for (char c : s)
    if (c != '0' && c != '1')
      throw ParseError(std::string("field \"") + key + "\" must be a binary string");
  return s;
}

std::string rat_str(const Rational& r) { return format_rational(r); }

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.dim(); ++j)
      row.push_back({{"im", rat_str(m.at(i, j).im)}, {"re", rat_str(m.at(i, j).re)}});
    rows.push_back(std::move(row));
  }
  return {{"dim", m.dim()}, {"entries", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  int n = require_dim(j);
  const json& rows = require_field(j, "entries");
  if (!rows.is_array() || (int)rows.size() != n)
    throw ParseError("\"entries\" must be a dim-sized array of rows");
  ComplexMatrix m(n);
  for (int i = 0; i < n; ++i) {
    const json& row = rows.at(i);
    if (!row.is_array() || (int)row.size() != n)
      throw ParseError("matrix row has the wrong length");
    for (int k = 0; k < n; ++k) {
      const json& cell = row.at(k);
      m.set(i, k, ComplexRational(parse_rational(require_str(cell, "re")),
                                  parse_rational(require_str(cell, "im"))));
    }
  }
  return m;
}

json operator_map_to_json(const OperatorMap& r) {
  json elems = json::array();
  for (const auto& [label, mat] : r.elements)
    elems.push_back({{"label", label}, {"matrix", matrix_to_json(mat.matrix())}});
  return {{"dim", r.dim}, {"elements", std::move(elems)}};
}

OperatorMap operator_map_from_json(const json& j) {
  int n = require_dim(j);
  const json& elems = require_field(j, "elements");
  if (!elems.is_array()) throw ParseError("\"elements\" must be an array");
  std::vector<std::pair<std::string, HermitianMatrix>> out;
  out.reserve(elems.size());
  for (const json& e : elems) {
    std::string label = require_bits(e, "label");
    ComplexMatrix m = matrix_from_json(require_field(e, "matrix"));
    out.emplace_back(std::move(label), HermitianMatrix(std::move(m)));
  }
  return OperatorMap::make(n, std::move(out));
}

json table_to_json(const ComplexityTable& t) {
  json recs = json::array();
  for (const auto& r : t.records)
    recs.push_back({{"bits", r.bits}, {"output", r.output}, {"steps", r.steps}});
  return {{"max_len", t.max_len}, {"max_steps", t.max_steps}, {"records", std::move(recs)}};
}

ComplexityTable table_from_json(const json& j) {
  ComplexityTable t;
  std::uint64_t len = require_uint(j, "max_len");
  if (len > 30) throw ParseError("\"max_len\" out of range");
  t.max_len = (unsigned)len;
  t.max_steps = require_uint(j, "max_steps");
  const json& recs = require_field(j, "records");
  if (!recs.is_array()) throw ParseError("\"records\" must be an array");
  t.records.reserve(recs.size());
  for (const json& r : recs) {
    HaltRecord rec;
    rec.bits = require_bits(r, "bits");
    rec.output = require_bits(r, "output");
    rec.steps = require_uint(r, "steps");
    if (rec.bits.size() > t.max_len)
      throw ParseError("record exceeds the declared program-length budget");
    t.records.push_back(std::move(rec));
  }
  CanonicalLess less;
  for (std::size_t i = 1; i < t.records.size(); ++i)
    if (!less(t.records[i - 1].bits, t.records[i].bits))
      throw ParseError("records out of canonical program order");
  t.rebuild_index();
  return t;
}

json counts_to_json(const SampleCounts& c) {
  json arr = json::array();
  for (const auto& [label, count] : c.counts)
    arr.push_back({{"count", count}, {"label", label}});
  return {{"counts", std::move(arr)}, {"seed", c.seed}, {"trials", c.trials}};
}

namespace {

json row_d_json(const BoundRow& r) {
  if (r.row_d) return format_interval(*r.row_d);
  if (r.d_plus_inf) return "inf";
  return "-inf";
}

json row_c_json(const BoundRow& r) {
  if (r.row_c) return rat_str(*r.row_c);
  if (r.prob > 0) return "inf";
  return "0";
}

}  // namespace

json bound_report_to_json(const BoundReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json jr = {{"p_lower", rat_str(row.p_lower)},
               {"prob", rat_str(row.prob)},
               {"row_c", row_c_json(row)},
               {"row_d", row_d_json(row)},
               {"s", row.s}};
    if (row.k_upper)
      jr["k_upper"] = *row.k_upper;
    else
      jr["k_upper"] = "inf";
    rows.push_back(std::move(jr));
  }
  json out = {{"infinite_c_rows", r.infinite_c_rows},
              {"infinite_d_rows", r.infinite_d_rows},
              {"precision", r.precision},
              {"rows", std::move(rows)}};
  out["c_observed"] = r.c_observed ? json(rat_str(*r.c_observed)) : json(nullptr);
  out["d_observed"] = r.d_observed ? json(format_interval(*r.d_observed)) : json(nullptr);
  return out;
}

std::string bound_report_to_csv(const BoundReport& r) {
  std::ostringstream os;
  os << "s,prob_num,prob_den,k_upper,p_lower_num,p_lower_den,row_d,row_c\n";
  for (const auto& row : r.rows) {
    os << row.s << ',' << row.prob.get_num() << ',' << row.prob.get_den() << ',';
    if (row.k_upper)
      os << *row.k_upper;
    else
      os << "inf";
    os << ',' << row.p_lower.get_num() << ',' << row.p_lower.get_den() << ','
       << row_d_json(row).get<std::string>() << ','
       << row_c_json(row).get<std::string>() << '\n';
  }
  return os.str();
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
}

void save_json(const std::string& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
  if (!out) throw Error("write failed: " + path);
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  auto trim = [](std::string s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos) throw ParseError("config line lacks '=': " + t);
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    if (key.empty()) throw ParseError("config line lacks a key: " + t);
    if (!out.emplace(key, val).second) throw ParseError("duplicate config key: " + key);
  }
  return out;
}

}  // namespace semipovm
