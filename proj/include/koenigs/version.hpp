#pragma once

namespace koenigs {

inline constexpr const char* kToolName = "koenigs";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace koenigs
