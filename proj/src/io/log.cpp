#include "cairn/io/log.hpp"

#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace cairn::log {

int level() {
  static const int lvl = [] {
    const char* env = std::getenv("CAIRN_LOG");
    if (!env) return 1;
    if (!std::strcmp(env, "error")) return 0;
    if (!std::strcmp(env, "warn")) return 1;
    if (!std::strcmp(env, "info")) return 2;
    if (!std::strcmp(env, "debug")) return 3;
    return 1;
  }();
  return lvl;
}

namespace {
void emit(const char* tag, const char* fmt, va_list args) {
  std::fprintf(stderr, "[%s] ", tag);
  std::vfprintf(stderr, fmt, args);
  std::fputc('\n', stderr);
}
}  // namespace

#define CAIRN_LOG_FN(name, tag, lvl)              \
  void name(const char* fmt, ...) {               \
    if (level() < lvl) return;                    \
    va_list args;                                 \
    va_start(args, fmt);                          \
    emit(tag, fmt, args);                         \
    va_end(args);                                 \
  }

CAIRN_LOG_FN(error, "error", 0)
CAIRN_LOG_FN(warn, "warn", 1)
CAIRN_LOG_FN(info, "info", 2)
CAIRN_LOG_FN(debug, "debug", 3)

#undef CAIRN_LOG_FN

}  // namespace cairn::log
