#pragma once

#include <sstream>
#include <string>

namespace vsep {

enum class LogLevel { error = 0, info = 1, debug = 2 };

/// Threshold parsed once from VSEP_LOG (error|info|debug); unset means error.
LogLevel log_threshold();

inline bool log_enabled(LogLevel level) {
  return static_cast<int>(level) <= static_cast<int>(log_threshold());
}

/// Writes one line to stderr; serialized across threads.
void log_write(LogLevel level, const std::string& message);

}  // namespace vsep

#define VSEP_LOG_AT(level, expr)                    \
  do {                                              \
    if (::vsep::log_enabled(level)) {               \
      std::ostringstream vsep_log_oss_;             \
      vsep_log_oss_ << expr;                        \
      ::vsep::log_write(level, vsep_log_oss_.str()); \
    }                                               \
  } while (0)

#define VSEP_ERROR(expr) VSEP_LOG_AT(::vsep::LogLevel::error, expr)
#define VSEP_INFO(expr) VSEP_LOG_AT(::vsep::LogLevel::info, expr)
#define VSEP_DEBUG(expr) VSEP_LOG_AT(::vsep::LogLevel::debug, expr)
