#include "vsep/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <mutex>

namespace vsep {
namespace {

LogLevel parse_env() {
  const char* raw = std::getenv("VSEP_LOG");
  if (raw == nullptr) return LogLevel::error;
  if (std::strcmp(raw, "debug") == 0) return LogLevel::debug;
  if (std::strcmp(raw, "info") == 0) return LogLevel::info;
  return LogLevel::error;
}

const char* level_name(LogLevel level) {
  switch (level) {
    case LogLevel::error: return "error";
    case LogLevel::info: return "info";
    case LogLevel::debug: return "debug";
  }
  return "?";
}

std::mutex& log_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

LogLevel log_threshold() {
  static const LogLevel level = parse_env();
  return level;
}

void log_write(LogLevel level, const std::string& message) {
  std::lock_guard<std::mutex> lock(log_mutex());
  std::fprintf(stderr, "vsep [%s] %s\n", level_name(level), message.c_str());
}

}  // namespace vsep
