#pragma once

namespace aqc {

inline constexpr const char* kToolName = "aqc";
inline constexpr const char* kVersion = "1.0.0";

}  // namespace aqc
