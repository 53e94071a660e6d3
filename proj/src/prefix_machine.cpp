#include "semipovm/prefix_machine.hpp"

#include <algorithm>

namespace semipovm {

namespace {

enum Op : int {
  kHalt = 0,
  kAppend0 = 1,
  kAppend1 = 2,
  kNoop = 3,
  kLiteral = 4,
  kBranchBack = 5,
};

struct Instr {
  int op = 0;
  std::uint64_t operand = 0;       // branch distance
  std::size_t payload_begin = 0;   // literal payload, as [begin, end) bit range
  std::size_t payload_end = 0;
  std::size_t end = 0;             // first bit offset after this instruction
};

// Shared decoder/executor. `out` is caller-provided scratch so the enumeration
// loop runs allocation-free in the steady state.
RunStatus run_impl(std::string_view p, std::uint64_t max_steps, std::string& out,
                   std::uint64_t& steps, InvalidReason& reason) {
  out.clear();
  steps = 0;
  reason = InvalidReason::None;

  std::size_t pos = 0;  // decode frontier (bits consumed so far)
  std::vector<Instr> code;
  std::vector<bool> visited;
  std::size_t ip = 0;

  auto read_bit = [&](std::size_t i) { return p[i] == '1'; };
  // Elias gamma: z leading zeros, a one, then z more bits; decodes to a value
  // in [2^z, 2^(z+1)). Returns false when the bits run out (incomplete).
  auto read_gamma = [&](std::uint64_t& value) {
    std::size_t z = 0;
    while (pos < p.size() && !read_bit(pos)) {
      ++pos;
      ++z;
    }
    if (pos == p.size() || z > 62) return false;
    ++pos;  // the leading one
    if (pos + z > p.size()) return false;
    std::uint64_t v = 1;
    for (std::size_t i = 0; i < z; ++i) v = (v << 1) | (read_bit(pos + i) ? 1u : 0u);
    pos += z;
    value = v;
    return true;
  };

  while (true) {
    if (ip == code.size()) {
      // Decode the next instruction at the frontier.
      if (pos == p.size()) {
        reason = InvalidReason::Incomplete;  // fell off the end before halting
        return RunStatus::InvalidProgram;
      }
      if (pos + 3 > p.size()) {
        reason = InvalidReason::Incomplete;
        return RunStatus::InvalidProgram;
      }
      int op = (read_bit(pos) ? 4 : 0) | (read_bit(pos + 1) ? 2 : 0) | (read_bit(pos + 2) ? 1 : 0);
      pos += 3;
      if (op > kBranchBack) {
        reason = InvalidReason::DeadDecode;
        return RunStatus::InvalidProgram;
      }
      Instr ins;
      ins.op = op;
      if (op == kLiteral) {
        std::uint64_t v = 0;
        if (!read_gamma(v)) {
          reason = InvalidReason::Incomplete;
          return RunStatus::InvalidProgram;
        }
        std::uint64_t len = v - 1;
        if (pos + len > p.size()) {
          reason = InvalidReason::Incomplete;
          return RunStatus::InvalidProgram;
        }
        ins.payload_begin = pos;
        ins.payload_end = pos + len;
        pos += len;
      } else if (op == kBranchBack) {
        std::uint64_t d = 0;
        if (!read_gamma(d)) {
          reason = InvalidReason::Incomplete;
          return RunStatus::InvalidProgram;
        }
        ins.operand = d;
      }
      ins.end = pos;
      code.push_back(ins);
      visited.push_back(false);
    }

    if (visited[ip]) return RunStatus::StillRunning;  // proven divergence
    if (steps == max_steps) return RunStatus::StillRunning;
    visited[ip] = true;
    ++steps;

    const Instr& ins = code[ip];
    switch (ins.op) {
      case kHalt:
        if (pos != p.size()) {
          reason = InvalidReason::TrailingBits;
          return RunStatus::InvalidProgram;
        }
        return RunStatus::Halted;
      case kAppend0:
        out.push_back('0');
        ++ip;
        break;
      case kAppend1:
        out.push_back('1');
        ++ip;
        break;
      case kNoop:
        ++ip;
        break;
      case kLiteral:
        out.append(p.substr(ins.payload_begin, ins.payload_end - ins.payload_begin));
        if (pos != p.size()) {
          reason = InvalidReason::TrailingBits;
          return RunStatus::InvalidProgram;
        }
        return RunStatus::Halted;
      case kBranchBack:
        ip = (ins.operand >= ip) ? 0 : ip - static_cast<std::size_t>(ins.operand);
        break;
      default:
        throw Error("unreachable opcode");
    }
  }
}

std::string gamma_code(std::uint64_t n) {
  if (n == 0) throw Error("Elias gamma encodes positive integers only");
  std::string binary;
  for (std::uint64_t v = n; v > 0; v >>= 1) binary.push_back(v & 1 ? '1' : '0');
  std::reverse(binary.begin(), binary.end());
  return std::string(binary.size() - 1, '0') + binary;
}

}  // namespace

RunResult run(const Program& p, std::uint64_t max_steps) {
  for (char c : p.bits)
    if (c != '0' && c != '1') throw ParseError("program bits must be 0/1");
  RunResult r;
  r.status = run_impl(p.bits, max_steps, r.output, r.steps, r.reason);
  if (r.status != RunStatus::Halted) r.output.clear();
  return r;
}

std::string diverging_program() { return "101" + gamma_code(1); }

std::string literal_program(const std::string& s) {
  return "100" + gamma_code(s.size() + 1) + s;
}

void ComplexityTable::rebuild_index() {
  stats_.clear();
  kraft_ = 0;
  for (const auto& rec : records) {
    Rational w = pow2_rational(-static_cast<long>(rec.bits.size()));
    kraft_ += w;
    auto it = stats_.find(rec.output);
    if (it == stats_.end()) {
      stats_.emplace(rec.output, std::make_pair<std::uint64_t, Rational>(rec.bits.size(), Rational(w)));
    } else {
      it->second.first = std::min<std::uint64_t>(it->second.first, rec.bits.size());
      it->second.second += w;
    }
  }
}

std::optional<std::uint64_t> ComplexityTable::k_upper(const std::string& s) const {
  auto it = stats_.find(s);
  if (it == stats_.end()) return std::nullopt;
  return it->second.first;
}

Rational ComplexityTable::p_lower(const std::string& s) const {
  auto it = stats_.find(s);
  if (it == stats_.end()) return Rational(0);
  return it->second.second;
}

namespace {

void enumerate_range(unsigned len_from, unsigned len_to, std::uint64_t T,
                     const EnumerationLimits& limits, std::size_t& bytes,
                     std::vector<HaltRecord>& sink) {
  std::string buf;
  std::string out;
  std::uint64_t steps = 0;
  InvalidReason reason;
  for (unsigned len = len_from; len <= len_to; ++len) {
    buf.assign(len, '0');
    const std::uint64_t count = std::uint64_t(1) << len;
    for (std::uint64_t v = 0; v < count; ++v) {
      for (unsigned i = 0; i < len; ++i)
        buf[i] = ((v >> (len - 1 - i)) & 1) ? '1' : '0';
      if (run_impl(buf, T, out, steps, reason) == RunStatus::Halted) {
        bytes += buf.size() + out.size() + sizeof(HaltRecord);
        if (limits.max_record_bytes && bytes > limits.max_record_bytes)
          throw BudgetError("record storage exceeds the configured memory cap");
        sink.push_back(HaltRecord{buf, out, steps});
      }
    }
  }
}

void check_caps(unsigned L, std::uint64_t T, const EnumerationLimits& limits) {
  if (L > limits.max_len_cap)
    throw BudgetError("max program length " + std::to_string(L) +
                      " exceeds the cap " + std::to_string(limits.max_len_cap));
  if (T > limits.max_steps_cap)
    throw BudgetError("step budget exceeds the cap");
  if (L > 30) throw BudgetError("program length beyond enumerable range");
}

}  // namespace

ComplexityTable enumerate(unsigned L, std::uint64_t T, const EnumerationLimits& limits) {
  check_caps(L, T, limits);
  ComplexityTable t;
  t.max_len = L;
  t.max_steps = T;
  std::size_t bytes = 0;
  enumerate_range(0, L, T, limits, bytes, t.records);
  t.rebuild_index();
  return t;
}

ComplexityTable extend(const ComplexityTable& base, unsigned L, std::uint64_t T,
                       const EnumerationLimits& limits) {
  check_caps(L, T, limits);
  if (L < base.max_len || T < base.max_steps)
    throw ValidationError("extend requires budgets at least as large as the base table's");
  if (T > base.max_steps) {
    // A larger step budget can in principle promote StillRunning strings, and
    // those are not recorded; nothing can be reused soundly.
    return enumerate(L, T, limits);
  }
  // Revalidate the base records by re-running each program.
  std::string out;
  std::uint64_t steps = 0;
  InvalidReason reason;
  std::size_t bytes = 0;
  for (const auto& rec : base.records) {
    if (rec.bits.size() > base.max_len)
      throw ValidationError("base table holds a record beyond its own budget");
    if (run_impl(rec.bits, T, out, steps, reason) != RunStatus::Halted ||
        out != rec.output || steps != rec.steps)
      throw ValidationError("base table record fails re-execution", rec.bits);
    bytes += rec.bits.size() + rec.output.size() + sizeof(HaltRecord);
    if (limits.max_record_bytes && bytes > limits.max_record_bytes)
      throw BudgetError("record storage exceeds the configured memory cap");
  }
  ComplexityTable t;
  t.max_len = L;
  t.max_steps = T;
  t.records = base.records;
  enumerate_range(base.max_len + 1, L, T, limits, bytes, t.records);
  t.rebuild_index();
  return t;
}

bool prefix_free_check(const std::vector<HaltRecord>& records) {
  std::vector<std::string_view> bits;
  bits.reserve(records.size());
  for (const auto& r : records) bits.emplace_back(r.bits);
  std::sort(bits.begin(), bits.end());
  // After lexicographic sorting, any prefix relation appears between
  // neighbors: if a is a proper prefix of c and a < b < c, then b must also
  // start with a (otherwise b's first difference from a would push it past c).
  for (std::size_t i = 0; i + 1 < bits.size(); ++i) {
    if (bits[i] == bits[i + 1]) continue;  // duplicates are not prefixes
    if (bits[i].size() < bits[i + 1].size() &&
        bits[i + 1].substr(0, bits[i].size()) == bits[i])
      return false;
  }
  return true;
}

Rational kraft_sum(const std::vector<HaltRecord>& records) {
  if (!prefix_free_check(records))
    throw ValidationError("Kraft sum over a non-prefix-free program set");
  // Distinct programs only (enumeration never repeats one, but be strict).
  std::vector<std::string_view> bits;
  bits.reserve(records.size());
  for (const auto& r : records) bits.emplace_back(r.bits);
  std::sort(bits.begin(), bits.end());
  bits.erase(std::unique(bits.begin(), bits.end()), bits.end());
  Rational sum(0);
  for (const auto& b : bits) sum += pow2_rational(-static_cast<long>(b.size()));
  return sum;
}

}  // namespace semipovm
