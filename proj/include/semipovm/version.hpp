#pragma once

namespace semipovm {
inline constexpr const char* kToolName = "semipovm";
inline constexpr const char* kToolVersion = "1.0.0";
}  // namespace semipovm
