#pragma once

namespace cdeim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cdeim
