#pragma once

namespace psiherm {

inline constexpr const char* kToolName = "psiherm";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace psiherm
