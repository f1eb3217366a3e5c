#pragma once

namespace seqends {

inline constexpr const char* kToolName = "seqends";
inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kReportSchema = 1;

}  // namespace seqends
