#include "sextic/io_format.hpp"

#include <cstdio>

#include "sextic/errors.hpp"

namespace sextic {

const char* to_string(TextFormat f) { return f == TextFormat::csv ? "csv" : "json"; }

TextFormat parse_format(const std::string& name) {
  if (name == "csv") return TextFormat::csv;
  if (name == "json") return TextFormat::json;
  throw UsageError("unknown format '" + name + "' (expected csv or json)");
}

std::string format_double17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

}  // namespace sextic
