#ifndef CMDPIRL_LOG_HPP
#define CMDPIRL_LOG_HPP

#include <string>

namespace cmdpirl {

// Diagnostic verbosity, controlled by the CMDP_IRL_LOG environment
// variable: quiet | info | debug. Messages go to stderr so artifact
// files stay clean.
enum class LogLevel { quiet = 0, info = 1, debug = 2 };

LogLevel log_level();
void set_log_level(LogLevel level);

void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace cmdpirl

#endif
