#pragma once

namespace ecodyn {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kToolName = "ecodyn";

}  // namespace ecodyn
