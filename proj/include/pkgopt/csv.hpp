#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "pkgopt/errors.hpp"

namespace pkgopt {

/// Minimal CSV plumbing. Fields are comma-separated with no quoting; ids and
/// names therefore must not contain commas.
inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

/// Doubles are written with 17 significant digits so that reading them back
/// reproduces the exact bit pattern.
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Strict full-token double parse. NaN is rejected; infinities are allowed
/// only where the caller says so.
double parse_double(const std::string& token, bool allow_inf = false);

long long parse_int(const std::string& token);

}  // namespace pkgopt
