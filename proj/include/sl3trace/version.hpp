#pragma once

namespace sl3trace {

inline constexpr const char* kVersion = "0.1.0";

} // namespace sl3trace
