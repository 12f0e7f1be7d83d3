#pragma once

#include <string>

namespace derham {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Threshold from DERHAM_LOG (error|warn|info|debug), default warn.
LogLevel log_threshold();
void log_message(LogLevel level, const std::string& msg);
inline void log_warn(const std::string& msg) { log_message(LogLevel::Warn, msg); }
inline void log_info(const std::string& msg) { log_message(LogLevel::Info, msg); }
inline void log_debug(const std::string& msg) { log_message(LogLevel::Debug, msg); }

}  // namespace derham
