#pragma once

#include <charconv>
#include <string>

namespace logopt {

/// Shortest round-trip decimal form; independent of the global locale.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace logopt
