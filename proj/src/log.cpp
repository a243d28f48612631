#include "cmdpirl/log.hpp"

#include <cstdlib>
#include <iostream>

namespace cmdpirl {

namespace {

LogLevel read_env_level() {
    const char* env = std::getenv("CMDP_IRL_LOG");
    if (env == nullptr) return LogLevel::info;
    std::string v(env);
    if (v == "quiet") return LogLevel::quiet;
    if (v == "debug") return LogLevel::debug;
    return LogLevel::info;
}

LogLevel& level_ref() {
    static LogLevel level = read_env_level();
    return level;
}

}  // namespace

LogLevel log_level() { return level_ref(); }

void set_log_level(LogLevel level) { level_ref() = level; }

void log_info(const std::string& msg) {
    if (log_level() >= LogLevel::info) std::cerr << "[cmdp-irl] " << msg << "\n";
}

void log_debug(const std::string& msg) {
    if (log_level() >= LogLevel::debug) std::cerr << "[cmdp-irl:debug] " << msg << "\n";
}

}  // namespace cmdpirl
