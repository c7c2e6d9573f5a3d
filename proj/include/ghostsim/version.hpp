#pragma once

namespace ghostsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ghostsim
