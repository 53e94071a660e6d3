#pragma once
// A concrete prefix-free machine and its dovetailed enumeration.
//
// Program format: a stream of instructions, each a fixed 3-bit opcode with an
// optional self-delimiting operand.
//
//   000 HALT          print the work tape and stop
//   001 APPEND0       append 0 to the work tape
//   010 APPEND1       append 1 to the work tape
//   011 NOOP          do nothing
//   100 LITERAL       operand: Elias-gamma(len+1), then len payload bits;
//                     appends the payload to the work tape and halts
//   101 BRANCHBACK    operand: Elias-gamma(d), d >= 1; ip <- max(0, ip - d)
//   110, 111          invalid (hard decode error)
//
// A string p is a valid program iff execution halts having decoded exactly
// the bits of p. Halting consumes the whole program and every proper
// extension of a halting program fails the exact-consumption test, so the set
// of valid programs is prefix-free by construction. Because control flow
// depends only on the instruction pointer (branches are unconditional and
// point backwards), revisiting an instruction proves divergence; the
// simulator reports StillRunning immediately in that case, which never
// changes any halting verdict.
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semipovm/rational.hpp"

namespace semipovm {

// Canonical string order: by length, then lexicographically. This is exactly
// increasing phi-code.
struct CanonicalLess {
  bool operator()(const std::string& a, const std::string& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct Program {
  std::string bits;  // characters '0' / '1'
};

enum class RunStatus { Halted, StillRunning, InvalidProgram };

enum class InvalidReason {
  None,
  Incomplete,    // bits ran out mid-instruction or before a halt
  DeadDecode,    // opcode 110/111: no extension can ever be valid
  TrailingBits,  // halted without consuming the final bits
};

struct RunResult {
  RunStatus status = RunStatus::StillRunning;
  std::string output;       // meaningful only when Halted
  std::uint64_t steps = 0;  // instructions executed
  InvalidReason reason = InvalidReason::None;
};

// Deterministic bounded simulation.
RunResult run(const Program& p, std::uint64_t max_steps);

// The canonical diverging program: BRANCHBACK 1 at instruction 0.
std::string diverging_program();

// Shortest LITERAL-instruction program printing s.
std::string literal_program(const std::string& s);

struct HaltRecord {
  std::string bits;
  std::string output;
  std::uint64_t steps = 0;

  friend bool operator==(const HaltRecord& a, const HaltRecord& b) {
    return a.bits == b.bits && a.output == b.output && a.steps == b.steps;
  }
};

struct EnumerationLimits {
  unsigned max_len_cap = 24;
  std::uint64_t max_steps_cap = 1000000;
  std::size_t max_record_bytes = 0;  // 0 = unlimited; estimated record storage
};

// Enumerated halting data plus the derived staged bounds:
// k_upper(s) = min program length producing s (nullopt when unwitnessed),
// p_lower(s) = sum of 2^-|p| over enumerated programs producing s.
class ComplexityTable {
 public:
  unsigned max_len = 0;
  std::uint64_t max_steps = 0;
  std::vector<HaltRecord> records;  // sorted by program (length, lex)

  void rebuild_index();  // recompute the derived maps from `records`

  std::optional<std::uint64_t> k_upper(const std::string& s) const;
  Rational p_lower(const std::string& s) const;
  const std::map<std::string, std::pair<std::uint64_t, Rational>, CanonicalLess>& outputs()
      const {
    return stats_;
  }
  Rational kraft() const { return kraft_; }

  friend bool operator==(const ComplexityTable& a, const ComplexityTable& b) {
    return a.max_len == b.max_len && a.max_steps == b.max_steps && a.records == b.records;
  }

 private:
  std::map<std::string, std::pair<std::uint64_t, Rational>, CanonicalLess> stats_;
  Rational kraft_ = 0;
};

// Runs every bit string of length 0..L for at most T steps, in canonical
// order; collects halting records. Deterministic for fixed (L, T).
// BudgetError when L or T exceeds the configured caps, or when the estimated
// record storage exceeds max_record_bytes (if set).
ComplexityTable enumerate(unsigned L, std::uint64_t T, const EnumerationLimits& limits = {});

// Re-ingests a table and extends budgets to (L, T) >= (base.max_len,
// base.max_steps). Output is byte-for-byte the table a fresh enumerate(L, T)
// would produce. Every base record is revalidated by re-running its program.
ComplexityTable extend(const ComplexityTable& base, unsigned L, std::uint64_t T,
                       const EnumerationLimits& limits = {});

// True iff no record's program is a proper prefix of another's.
bool prefix_free_check(const std::vector<HaltRecord>& records);

// Exact sum of 2^-|p| over the recorded programs. ValidationError when the
// programs are not prefix-free (the bound <= 1 is then meaningless).
Rational kraft_sum(const std::vector<HaltRecord>& records);

}  // namespace semipovm
