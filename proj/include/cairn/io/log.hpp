#pragma once

namespace cairn::log {

// Levels: 0 error, 1 warn (default), 2 info, 3 debug; set via CAIRN_LOG.
int level();

void error(const char* fmt, ...);
void warn(const char* fmt, ...);
void info(const char* fmt, ...);
void debug(const char* fmt, ...);

}  // namespace cairn::log
