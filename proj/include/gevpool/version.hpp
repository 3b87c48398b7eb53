#pragma once

namespace gevpool {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace gevpool
