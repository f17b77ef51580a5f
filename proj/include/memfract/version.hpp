#pragma once

namespace memfract {

#ifdef MEMFRACT_VERSION
inline constexpr const char* kVersion = MEMFRACT_VERSION;
#else
inline constexpr const char* kVersion = "0.0.0";
#endif

}  // namespace memfract
