#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace crlab {

// The three formal parameters carried through symbolic computation.
enum class Param : std::uint8_t { M = 0, Q = 1, Theta = 2 };

inline constexpr std::size_t kParamCount = 3;

inline const char* param_name(Param p) {
  switch (p) {
    case Param::M: return "m";
    case Param::Q: return "q";
    case Param::Theta: return "theta";
  }
  return "?";
}

// Multi-degree in (m, q, theta).
using ParamDeg = std::array<std::uint16_t, kParamCount>;

}  // namespace crlab
