#include "ea/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace ea::log {

namespace {

Level parse_env() {
  const char* v = std::getenv("EA_LOG");
  if (!v) return Level::error;
  std::string s(v);
  if (s == "debug") return Level::debug;
  if (s == "info") return Level::info;
  return Level::error;
}

std::mutex& mtx() {
  static std::mutex m;
  return m;
}

void emit(const char* tag, const std::string& msg) {
  std::lock_guard<std::mutex> lock(mtx());
  std::cerr << tag << msg << "\n";
}

}  // namespace

Level level() {
  static Level lv = parse_env();
  return lv;
}

void error(const std::string& msg) { emit("[error] ", msg); }

void info(const std::string& msg) {
  if (level() >= Level::info) emit("[info] ", msg);
}

void debug(const std::string& msg) {
  if (level() >= Level::debug) emit("[debug] ", msg);
}

}  // namespace ea::log
