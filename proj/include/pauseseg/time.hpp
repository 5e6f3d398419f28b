#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>

namespace pauseseg {

// All timeline arithmetic is done in integer microseconds so that boundaries
// placed on a frame grid (and midpoints of frame-aligned pauses) are exact.
using Micros = std::chrono::microseconds;

inline constexpr Micros kZero{0};

inline double to_seconds(Micros t) { return static_cast<double>(t.count()) / 1e6; }

inline Micros from_seconds(double s) { return Micros{std::llround(s * 1e6)}; }

inline constexpr Micros from_millis(std::int64_t ms) { return Micros{ms * 1000}; }

}  // namespace pauseseg
