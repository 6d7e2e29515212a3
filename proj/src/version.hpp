#pragma once

namespace qkzr::cli {

inline constexpr const char* kToolName = "qkzr-report";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace qkzr::cli
