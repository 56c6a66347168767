#pragma once

#include <cstdio>
#include <string>

namespace spinoptics::detail {

// Shortest-form %g formatting with a fixed precision, so that identical
// inputs always serialize to identical bytes.
inline std::string fmt_g(double v, int precision = 15) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

}  // namespace spinoptics::detail
