#pragma once

namespace fairgen {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace fairgen
