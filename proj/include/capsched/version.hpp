#pragma once

namespace capsched {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace capsched
