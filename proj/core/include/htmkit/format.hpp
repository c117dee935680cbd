#pragma once

#include <charconv>
#include <string>

namespace htmkit {

/// Shortest round-trip decimal form ("6", "0.2582", "1e-05").
inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

}  // namespace htmkit
