#pragma once

namespace evplan {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace evplan
