#pragma once

namespace qpipe {

// Shared numeric tolerances. Every comparison in the library and its tests
// draws from here.
inline constexpr double kEqualityTolerance = 1e-10;
inline constexpr double kNormTolerance = 1e-9;

inline constexpr int kDefaultQubitCap = 24;

}  // namespace qpipe
