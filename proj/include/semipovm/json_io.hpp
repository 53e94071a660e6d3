#pragma once
// External file formats. Everything round-trips through exact rational
// strings ("p" or "p/q"); no floats anywhere. Writers emit a fixed key order
// so identical inputs give byte-identical files; readers are strict and throw
// ParseError on malformed payloads (ValidationError when a matrix claimed
// Hermitian is not).
#include <map>
#include <string>

#include "json.hpp"
#include "semipovm/measure.hpp"
#include "semipovm/povm.hpp"
#include "semipovm/prefix_machine.hpp"

namespace semipovm {

// {"dim":N,"entries":[[{"im":"r/s","re":"p/q"},...],...]}
nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

// {"dim":N,"elements":[{"label":"010","matrix":{...}},...]}; lambda is "".
// Reading re-checks Hermiticity of every element.
nlohmann::json operator_map_to_json(const OperatorMap& r);
OperatorMap operator_map_from_json(const nlohmann::json& j);

// {"max_len":L,"max_steps":T,"records":[{"bits":"...","output":"...","steps":n}]}
// Records must be in canonical (length, lex) program order.
nlohmann::json table_to_json(const ComplexityTable& t);
ComplexityTable table_from_json(const nlohmann::json& j);

// {"counts":[{"count":n,"label":"..."},...],"seed":...,"trials":...}
nlohmann::json counts_to_json(const SampleCounts& c);

nlohmann::json bound_report_to_json(const BoundReport& r);

// CSV with header s,prob_num,prob_den,k_upper,p_lower_num,p_lower_den,row_d,row_c.
// Intervals are "lo:hi"; unwitnessed complexities are "inf"; row_d is "inf" /
// "-inf" at the infinite rows; row_c is "inf" when the ratio diverges and "0"
// on vacuous (prob = 0, p_lower = 0) rows.
std::string bound_report_to_csv(const BoundReport& r);

// AIT metric rows (s,t,metric,value) live in ait_report_csv (ait.hpp).

// Whole-file helpers. load_json wraps parse failures in ParseError.
nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// key=value lines; '#' starts a comment; blank lines skipped. Duplicate keys
// are a ParseError.
std::map<std::string, std::string> parse_config_text(const std::string& text);

}  // namespace semipovm
