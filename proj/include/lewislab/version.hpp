#pragma once

namespace lewislab {

inline constexpr const char* kToolName = "lewislab";
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace lewislab
