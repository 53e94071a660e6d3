#pragma once
// Error taxonomy shared by the whole library. The CLI maps these onto its
// stable exit codes (usage 2, budget 3, validation 4, assertion 5).
#include <stdexcept>
#include <string>

namespace semipovm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape mismatch (non-square input, dimension disagreement, bad index).
struct DimensionError : Error {
  using Error::Error;
};

// Malformed external input (rational strings, JSON payloads, config files).
struct ParseError : Error {
  using Error::Error;
};

// An object failed a structural check (non-Hermitian payload, element not
// PSD, sum exceeding the identity, non-unitary conjugator, ...).  `offender`
// names the violating element where one exists (a label, "sum", ...).
struct ValidationError : Error {
  std::string offender;
  explicit ValidationError(const std::string& msg, std::string who = "")
      : Error(msg), offender(std::move(who)) {}
};

// A bounded search or an enumeration exceeded its configured resource cap.
struct BudgetError : Error {
  using Error::Error;
};

// A hard mathematical assertion of the verification harness failed.
// `subject` names the string (outcome label) that violated the bound.
struct AssertionFailure : Error {
  std::string subject;
  explicit AssertionFailure(const std::string& msg, std::string who = "")
      : Error(msg), subject(std::move(who)) {}
};

// A stage value was unusable (e.g. not positive definite where the operation
// requires strict positivity).
struct StageError : Error {
  using Error::Error;
};

// The operation is not implemented for this input shape at desk scale.
struct UnsupportedError : Error {
  using Error::Error;
};

}  // namespace semipovm
