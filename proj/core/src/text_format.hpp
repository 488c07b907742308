#pragma once

#include <cstdio>
#include <string>

namespace helix {

inline std::string fmt_g(double v, int sig_digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", sig_digits, v);
  return buf;
}

}  // namespace helix
