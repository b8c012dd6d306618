#pragma once

namespace nashlab {

inline constexpr const char* kVersion = "0.1.0";

// Bumped whenever the trials.csv column set or value formatting of any
// experiment kind changes.
inline constexpr int kSchemaVersion = 1;

}  // namespace nashlab
