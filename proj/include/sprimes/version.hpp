#pragma once

namespace sprimes {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sprimes
