#pragma once

namespace braidlab {

inline constexpr const char* kVersion = "0.1.0";
/// Bumped whenever the JSON report layout changes.
inline constexpr int kReportSchema = 1;

}  // namespace braidlab
