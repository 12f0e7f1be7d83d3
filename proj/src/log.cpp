#include "derham/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace derham {

LogLevel log_threshold() {
  const char* env = std::getenv("DERHAM_LOG");
  if (!env) return LogLevel::Warn;
  std::string v = env;
  if (v == "error") return LogLevel::Error;
  if (v == "info") return LogLevel::Info;
  if (v == "debug") return LogLevel::Debug;
  return LogLevel::Warn;
}

void log_message(LogLevel level, const std::string& msg) {
  if (static_cast<int>(level) > static_cast<int>(log_threshold())) return;
  static std::mutex mu;
  static const char* names[] = {"error", "warn", "info", "debug"};
  std::lock_guard<std::mutex> lock(mu);
  std::cerr << "[derham " << names[static_cast<int>(level)] << "] " << msg << '\n';
}

}  // namespace derham
