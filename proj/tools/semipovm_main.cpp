// Batch front end: enumerate | construct | verify | sample | report.
// Every started command writes <out>/manifest.json echoing the effective
// configuration, the tool version, produced files, and an ok/error status.
// Exit codes: 0 success, 2 usage/parse, 3 budget, 4 validation, 5 assertion.
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semipovm/ait.hpp"
#include "semipovm/constructions.hpp"
#include "semipovm/errors.hpp"
#include "semipovm/json_io.hpp"
#include "semipovm/measure.hpp"
#include "semipovm/prefix_machine.hpp"
#include "semipovm/version.hpp"

namespace {

using namespace semipovm;
using nlohmann::json;

int map_exit(const std::exception& e) {
  if (dynamic_cast<const AssertionFailure*>(&e)) return 5;
  if (dynamic_cast<const BudgetError*>(&e)) return 3;
  if (dynamic_cast<const ParseError*>(&e)) return 2;
  if (dynamic_cast<const ValidationError*>(&e)) return 4;
  if (dynamic_cast<const DimensionError*>(&e)) return 4;
  if (dynamic_cast<const StageError*>(&e)) return 4;
  if (dynamic_cast<const UnsupportedError*>(&e)) return 4;
  return 1;
}

EnumerationLimits limits_from_env() {
  EnumerationLimits lim;
  if (const char* v = std::getenv("SEMIPOVM_MAX_MEM")) {
    char* end = nullptr;
    unsigned long long bytes = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0')
      throw ParseError("SEMIPOVM_MAX_MEM must be a decimal byte count");
    lim.max_record_bytes = (std::size_t)bytes;
  }
  return lim;
}

// All strings of length <= l in canonical order.
std::vector<std::string> strings_up_to(unsigned l) {
  if (l > 20) throw ParseError("support length out of range");
  return first_strings((std::size_t{1} << (l + 1)) - 1);
}

struct RunContext {
  std::string out_dir;
  json config = json::object();
  std::vector<std::string> outputs;

  std::string path(const std::string& name) const { return out_dir + "/" + name; }
  void emit(const std::string& name, const json& j) {
    save_json(path(name), j);
    outputs.push_back(name);
  }
  void emit_text(const std::string& name, const std::string& text) {
    write_text_file(path(name), text);
    outputs.push_back(name);
  }
  void manifest(const std::string& command, const std::string& status,
                const std::string& error_msg) const {
    json j = {{"command", command},
              {"config", config},
              {"outputs", outputs},
              {"status", status},
              {"tool", {{"name", kToolName}, {"version", kToolVersion}}}};
    if (!error_msg.empty()) j["error"] = error_msg;
    save_json(out_dir + "/manifest.json", j);
  }
};

DensityMatrix load_rho(const std::string& arg, int dim) {
  if (arg == "maximally-mixed") return DensityMatrix::maximally_mixed(dim);
  HermitianMatrix h(matrix_from_json(load_json(arg)));
  if (h.dim() != dim) throw DimensionError("state dimension does not match");
  return DensityMatrix(std::move(h));
}

json aggregate_to_json(const AitAggregate& a) {
  return {{"finite", a.finite},
          {"infinite", a.infinite},
          {"max", a.max},
          {"mean", format_rational(a.mean)},
          {"min", a.min}};
}

// ---- enumerate ----------------------------------------------------------

struct EnumerateArgs {
  unsigned max_len = 0;
  std::uint64_t max_steps = 0;
  std::string resume;
};

void run_enumerate(const EnumerateArgs& a, RunContext& ctx) {
  EnumerationLimits lim = limits_from_env();
  ComplexityTable table;
  if (a.resume.empty()) {
    table = enumerate(a.max_len, a.max_steps, lim);
  } else {
    ComplexityTable base = table_from_json(load_json(a.resume));
    table = extend(base, a.max_len, a.max_steps, lim);
  }
  ctx.emit("table.json", table_to_json(table));

  json summary = {{"halting_programs", table.records.size()},
                  {"kraft", format_rational(table.kraft())},
                  {"max_len", table.max_len},
                  {"max_steps", table.max_steps},
                  {"outputs", table.outputs().size()}};
  std::uint64_t kmin = 0, kmax = 0;
  bool any = false;
  for (const auto& [s, kp] : table.outputs()) {
    (void)s;
    if (!any) {
      kmin = kmax = kp.first;
      any = true;
    } else {
      kmin = std::min(kmin, kp.first);
      kmax = std::max(kmax, kp.first);
    }
  }
  summary["k_upper_min"] = any ? json(kmin) : json(nullptr);
  summary["k_upper_max"] = any ? json(kmax) : json(nullptr);
  ctx.emit("summary.json", summary);

  std::cout << "enumerate: programs=" << table.records.size()
            << " outputs=" << table.outputs().size()
            << " kraft=" << format_rational(table.kraft()) << "\n";
}

// ---- construct ----------------------------------------------------------

struct ConstructArgs {
  std::string kind = "scalar";
  int dim = 2;
  std::string table_path;
  unsigned support_len = 2;
  std::string gh_path;
  int seq_n = -1;
  long stage = -1;  // -1: use the table's max_len
};

UniversalApprox build_construction(const ConstructArgs& a, const ComplexityTable& table) {
  ScalarStageEnumerator m = staged_from_table(table);
  if (a.kind == "scalar") return UniversalApprox::scalar(std::move(m), a.dim);
  if (a.kind != "noncommuting") throw ParseError("unknown kind: " + a.kind);
  HermitianMatrix g = default_g(a.dim), h = default_h(a.dim);
  if (!a.gh_path.empty()) {
    json j = load_json(a.gh_path);
    if (!j.is_object() || !j.contains("g") || !j.contains("h"))
      throw ParseError("expected an object with \"g\" and \"h\" matrices");
    g = HermitianMatrix(matrix_from_json(j.at("g")));
    h = HermitianMatrix(matrix_from_json(j.at("h")));
  }
  return UniversalApprox::noncommuting(std::move(m), a.dim, std::move(g), std::move(h));
}

void run_construct(const ConstructArgs& a, RunContext& ctx) {
  ComplexityTable table = table_from_json(load_json(a.table_path));
  UniversalApprox u = build_construction(a, table);
  unsigned stage = a.stage < 0 ? table.max_len : (unsigned)a.stage;

  OperatorMap m_map = construction_map(u, strings_up_to(a.support_len), stage);
  validate(m_map);
  ctx.emit("m_map.json", operator_map_to_json(m_map));

  if (a.seq_n >= 0) {
    unsigned n = (unsigned)a.seq_n;
    ApproxStage st = approx_sequence(u, n, first_strings(n));
    validate(st.f_map);
    OperatorMap g_n = povm_sequence(st.f_map, n);
    ctx.emit("f_n.json", operator_map_to_json(st.f_map));
    ctx.emit("g_n.json", operator_map_to_json(g_n));

    json chain_rows = json::array();
    for (const auto& el : st.elements) {
      Rational m_val = u.m.stage_fn(el.tau, el.label);
      chain_rows.push_back({{"label", el.label},
                            {"tau", el.tau},
                            {"value", format_rational(m_val)}});
    }
    json chain = {{"defect_label", phi_inv(Integer(n))},
                  {"m_stage", std::move(chain_rows)}};
    ctx.emit("chain.json", chain);
  }

  std::cout << "construct: kind=" << a.kind << " dim=" << a.dim << " stage=" << stage
            << " elements=" << m_map.elements.size() << "\n";
}

// ---- verify -------------------------------------------------------------

struct VerifyArgs {
  std::string povm_path;
  std::string rho = "maximally-mixed";
  std::string table_path;
  std::string chain_path;
  unsigned precision = 32;
};

ScalarChainContext chain_from_json(const json& j) {
  ScalarChainContext ctx;
  if (!j.is_object() || !j.contains("defect_label") || !j.contains("m_stage"))
    throw ParseError("chain file needs \"defect_label\" and \"m_stage\"");
  ctx.defect_label = j.at("defect_label").get<std::string>();
  for (const json& row : j.at("m_stage")) {
    std::string label = row.at("label").get<std::string>();
    Rational v = parse_rational(row.at("value").get<std::string>());
    if (!ctx.m_stage.emplace(std::move(label), std::move(v)).second)
      throw ParseError("duplicate chain label");
  }
  return ctx;
}

void run_verify(const VerifyArgs& a, RunContext& ctx) {
  OperatorMap q = operator_map_from_json(load_json(a.povm_path));
  validate(q);
  DensityMatrix rho = load_rho(a.rho, q.dim);
  ComplexityTable table = table_from_json(load_json(a.table_path));

  BoundReport rep = verify_main_bounds(rho, q, table, a.precision);
  ctx.emit_text("report.csv", bound_report_to_csv(rep));
  json jrep = bound_report_to_json(rep);
  jrep["status"] = "ok";

  if (!a.chain_path.empty()) {
    ScalarChainContext chain = chain_from_json(load_json(a.chain_path));
    try {
      assert_scalar_chain(rho, q, chain, table);
    } catch (const AssertionFailure& e) {
      jrep["status"] = "assertion-failed";
      ctx.emit("report.json", jrep);
      throw;
    }
  }
  ctx.emit("report.json", jrep);

  std::cout << "verify: rows=" << rep.rows.size() << " d_observed="
            << (rep.d_observed ? format_interval(*rep.d_observed) : "none")
            << " c_observed="
            << (rep.c_observed ? format_rational(*rep.c_observed) : "none") << "\n";
}

// ---- sample -------------------------------------------------------------

struct SampleArgs {
  std::string povm_path;
  std::string rho = "maximally-mixed";
  std::uint64_t trials = 0;
  std::uint64_t seed = 1;
};

void run_sample(const SampleArgs& a, RunContext& ctx) {
  OperatorMap q = operator_map_from_json(load_json(a.povm_path));
  DensityMatrix rho = load_rho(a.rho, q.dim);
  SampleCounts counts = sample_outcomes(rho, q, a.trials, a.seed);
  ctx.emit("counts.json", counts_to_json(counts));
  std::cout << "sample: trials=" << a.trials << " outcomes=" << counts.counts.size()
            << "\n";
}

// ---- report -------------------------------------------------------------

struct ReportArgs {
  std::string table_path;
  unsigned str_len = 3;
};

void run_report(const ReportArgs& a, RunContext& ctx) {
  ComplexityTable table = table_from_json(load_json(a.table_path));
  AitTable at(table);
  std::vector<std::string> sample = strings_up_to(a.str_len);

  ctx.emit_text("ait_report.csv", ait_report_csv(at, sample));
  AitIdentityReport rep = ait_identity_report(at, sample);
  json summary = {{"conditional", aggregate_to_json(rep.conditional)},
                  {"joint_swap_diff", aggregate_to_json(rep.joint_swap_diff)},
                  {"mutual_swap_diff", aggregate_to_json(rep.mutual_swap_diff)},
                  {"pairs", rep.pairs}};
  ctx.emit("ait_summary.json", summary);

  std::cout << "report: strings=" << sample.size() << " pairs=" << rep.pairs << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact semi-POVM construction and verification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_dir = ".";
  app.add_option("--out", out_dir, "output directory (created if missing)");

  EnumerateArgs ea;
  CLI::App* enumerate_cmd =
      app.add_subcommand("enumerate", "run every short program, build the halting table");
  enumerate_cmd->add_option("--max-len", ea.max_len, "program length budget")->required();
  enumerate_cmd->add_option("--max-steps", ea.max_steps, "per-program step budget")
      ->required();
  enumerate_cmd->add_option("--resume", ea.resume, "existing table to extend");

  ConstructArgs ca;
  CLI::App* construct_cmd =
      app.add_subcommand("construct", "build operator families from a halting table");
  construct_cmd->add_option("--kind", ca.kind, "scalar | noncommuting");
  construct_cmd->add_option("--dim", ca.dim, "Hilbert-space dimension");
  CLI::Option* ct = construct_cmd->add_option("--table", ca.table_path, "halting table");
  construct_cmd->add_option("--support-len", ca.support_len,
                            "include all strings up to this length");
  construct_cmd->add_option("--gh", ca.gh_path, "JSON file with \"g\" and \"h\" matrices");
  construct_cmd->add_option("--seq-n", ca.seq_n, "also emit F_n, G_n and the stage chain");
  construct_cmd->add_option("--stage", ca.stage, "stage budget for m (default: table max_len)");
  std::string config_path;
  construct_cmd->add_option("--config", config_path, "key=value defaults file");

  VerifyArgs va;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "bound reports and exact chain assertions");
  verify_cmd->add_option("--povm", va.povm_path, "operator map file")->required();
  verify_cmd->add_option("--rho", va.rho, "density matrix file or \"maximally-mixed\"");
  verify_cmd->add_option("--table", va.table_path, "halting table")->required();
  verify_cmd->add_option("--chain", va.chain_path, "stage chain file (enables assertions)");
  verify_cmd->add_option("--precision", va.precision, "log2 enclosure precision bits");

  SampleArgs sa;
  CLI::App* sample_cmd = app.add_subcommand("sample", "draw outcomes from exact Born statistics");
  sample_cmd->add_option("--povm", sa.povm_path, "operator map file (must be a POVM)")
      ->required();
  sample_cmd->add_option("--rho", sa.rho, "density matrix file or \"maximally-mixed\"");
  sample_cmd->add_option("--trials", sa.trials, "number of draws")->required();
  sample_cmd->add_option("--seed", sa.seed, "64-bit generator seed");

  ReportArgs ra;
  CLI::App* report_cmd =
      app.add_subcommand("report", "complexity-calculus identity report from a table");
  report_cmd->add_option("--table", ra.table_path, "halting table")->required();
  report_cmd->add_option("--str-len", ra.str_len, "include all strings up to this length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  RunContext ctx;
  std::string command;
  try {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw Error("cannot create output directory: " + out_dir);
    ctx.out_dir = out_dir;

    if (*enumerate_cmd) {
      command = "enumerate";
      ctx.config = {{"max_len", ea.max_len},
                    {"max_steps", ea.max_steps},
                    {"out", out_dir},
                    {"resume", ea.resume}};
      run_enumerate(ea, ctx);
    } else if (*construct_cmd) {
      command = "construct";
      if (!config_path.empty()) {
        auto cfg = parse_config_text(read_text_file(config_path));
        auto take = [&](const char* key, auto setter) {
          auto it = cfg.find(key);
          if (it != cfg.end()) setter(it->second);
        };
        if (construct_cmd->count("--kind") == 0)
          take("kind", [&](const std::string& v) { ca.kind = v; });
        if (construct_cmd->count("--dim") == 0)
          take("dim", [&](const std::string& v) { ca.dim = std::stoi(v); });
        if (ct->count() == 0)
          take("table", [&](const std::string& v) { ca.table_path = v; });
        if (construct_cmd->count("--support-len") == 0)
          take("support_len", [&](const std::string& v) { ca.support_len = std::stoul(v); });
        if (construct_cmd->count("--gh") == 0)
          take("gh", [&](const std::string& v) { ca.gh_path = v; });
        if (construct_cmd->count("--seq-n") == 0)
          take("seq_n", [&](const std::string& v) { ca.seq_n = std::stoi(v); });
        if (construct_cmd->count("--stage") == 0)
          take("stage", [&](const std::string& v) { ca.stage = std::stol(v); });
      }
      if (ca.table_path.empty()) throw ParseError("construct needs --table");
      ctx.config = {{"dim", ca.dim},
                    {"gh", ca.gh_path},
                    {"kind", ca.kind},
                    {"out", out_dir},
                    {"seq_n", ca.seq_n},
                    {"stage", ca.stage},
                    {"support_len", ca.support_len},
                    {"table", ca.table_path}};
      run_construct(ca, ctx);
    } else if (*verify_cmd) {
      command = "verify";
      ctx.config = {{"chain", va.chain_path},
                    {"out", out_dir},
                    {"povm", va.povm_path},
                    {"precision", va.precision},
                    {"rho", va.rho},
                    {"table", va.table_path}};
      run_verify(va, ctx);
    } else if (*sample_cmd) {
      command = "sample";
      ctx.config = {{"out", out_dir},
                    {"povm", sa.povm_path},
                    {"rho", sa.rho},
                    {"seed", sa.seed},
                    {"trials", sa.trials}};
      run_sample(sa, ctx);
    } else if (*report_cmd) {
      command = "report";
      ctx.config = {{"out", out_dir}, {"str_len", ra.str_len}, {"table", ra.table_path}};
      run_report(ra, ctx);
    }
    ctx.manifest(command, "ok", "");
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (!ctx.out_dir.empty()) {
      try {
        ctx.manifest(command, "error", e.what());
      } catch (...) {
      }
    }
    return map_exit(e);
  }
}
