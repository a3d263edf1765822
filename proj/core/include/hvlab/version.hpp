#pragma once

namespace hvlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hvlab
