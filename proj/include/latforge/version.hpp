#pragma once

namespace latforge {

inline constexpr const char* kToolName = "latforge";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kReportSchemaVersion = 1;

}  // namespace latforge
