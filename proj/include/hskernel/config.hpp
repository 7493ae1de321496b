#pragma once

#include <cstddef>

namespace hsk {

// Desk-scale bounds. Anything beyond these raises DeskScaleExceeded.
inline constexpr std::size_t kMaxVars = 8;
inline constexpr int kMaxOrder = 16;
inline constexpr int kMaxDividedPowerDegree = 24;
inline constexpr std::size_t kMaxGroebnerPairs = 100000;

}  // namespace hsk
