#ifndef HERDGAMES_SRC_FORMAT_HPP
#define HERDGAMES_SRC_FORMAT_HPP

#include <cmath>
#include <cstdio>
#include <string>

namespace herdgames::detail {

// Decimal text with 12 significant digits, "." separator, no locale effects.
inline std::string fmt12(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Round to 12 significant digits; used before JSON emission so output is
// stable across platforms.
inline double round12(double v) {
  if (v == 0.0 || !std::isfinite(v)) return v == 0.0 ? 0.0 : v;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace herdgames::detail

#endif  // HERDGAMES_SRC_FORMAT_HPP
