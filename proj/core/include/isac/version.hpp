#pragma once

namespace isac {

/// Library/tool version, kept in sync with the CMake project version.
inline constexpr const char* kVersion = "1.0.0";

}  // namespace isac
