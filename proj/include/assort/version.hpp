#pragma once

namespace assort {

inline constexpr const char* version = "1.0.0";
inline constexpr int schema_version = 1;

} // namespace assort
