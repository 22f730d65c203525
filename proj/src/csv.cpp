#include "pkgopt/csv.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>

namespace pkgopt {

double parse_double(const std::string& token, bool allow_inf) {
  if (token.empty()) throw ParseError("empty numeric field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || errno == ERANGE) {
    throw ParseError("malformed number: '" + token + "'");
  }
  if (std::isnan(v)) throw ParseError("NaN is not a valid field value");
  if (std::isinf(v) && !allow_inf) {
    throw ParseError("'inf' is not allowed in this column");
  }
  return v;
}

long long parse_int(const std::string& token) {
  if (token.empty()) throw ParseError("empty integer field");
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || errno == ERANGE) {
    throw ParseError("malformed integer: '" + token + "'");
  }
  return v;
}

}  // namespace pkgopt
