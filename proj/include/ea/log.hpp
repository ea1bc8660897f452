#pragma once

#include <string>

namespace ea::log {

enum class Level { error = 0, info = 1, debug = 2 };

// Level is read once from the EA_LOG environment variable
// (one of "error", "info", "debug"; default "error").
Level level();

void error(const std::string& msg);
void info(const std::string& msg);
void debug(const std::string& msg);

}  // namespace ea::log
