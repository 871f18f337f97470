#pragma once

// Deterministic number formatting: shortest representation that round-trips
// to the same double (at most 17 significant digits).

#include <charconv>
#include <string>

namespace zeno {

inline std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  return std::string(buffer, ptr);
}

}  // namespace zeno
