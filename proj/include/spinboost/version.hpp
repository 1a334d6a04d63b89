#pragma once

namespace spinboost {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kOutputSchemaVersion = 1;

}  // namespace spinboost
