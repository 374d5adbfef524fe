#pragma once

namespace oil {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "oil";

} // namespace oil
