#pragma once

#include <cstdint>
#include <string>

namespace isac::textio {

/// Shortest round-trip decimal representation (locale-independent; infinities
/// and NaN render as "inf"/"-inf"/"nan").
std::string fmt(double v);
std::string fmt(int v);
std::string fmt(std::uint64_t v);
std::string fmt(bool v);  // "true" / "false"

}  // namespace isac::textio
