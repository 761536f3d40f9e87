// Minimal deterministic JSON emission: fixed field order, doubles printed
// with 17 significant digits so a reparse reproduces the exact bit pattern.
#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace detmax::jsonout {

inline std::string number(double x) {
  if (!(x == x) || x > 1e308 || x < -1e308)
    throw std::logic_error("json: non-finite number in output");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

inline std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

}  // namespace detmax::jsonout
