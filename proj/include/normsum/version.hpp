#pragma once

#include <string_view>

namespace normsum {

inline constexpr std::string_view kToolName = "normsum";
inline constexpr std::string_view kToolVersion = "0.1.0";

}  // namespace normsum
