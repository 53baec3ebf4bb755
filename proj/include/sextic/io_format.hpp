#pragma once

#include <string>

namespace sextic {

enum class TextFormat { csv, json };

const char* to_string(TextFormat f);
TextFormat parse_format(const std::string& name);  // "csv" | "json"

// 17 significant digits: enough to reproduce any double bit-exactly.
std::string format_double17(double x);

}  // namespace sextic
