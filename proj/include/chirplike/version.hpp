#pragma once

namespace chirplike {

inline constexpr const char* kVersion = "0.1.0";

} // namespace chirplike
