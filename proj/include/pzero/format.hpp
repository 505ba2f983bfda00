#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace pzero {

// Shortest round-trip decimal form, identical bytes on every run.
inline std::string fmt_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general);
  return std::string(buf, res.ptr);
}

inline std::string fmt_u64(std::uint64_t v) { return std::to_string(v); }

}  // namespace pzero
