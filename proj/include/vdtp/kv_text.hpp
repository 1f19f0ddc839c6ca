#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "vdtp/param_space.hpp"

namespace vdtp {

/// Malformed structured text. The message names the source and line.
class ParseError : public ConfigError {
public:
    ParseError(std::string_view source, int line, std::string_view what);
    int line() const { return line_; }

private:
    int line_;
};

/// One `key = value` line. `section` is the text between the brackets of the
/// most recent `[section]` header (empty before the first header).
struct KvEntry {
    std::string section;
    std::string key;
    std::string value;
    int line = 0;
};

/// Reads flat key-value text with optional section headers. `#` and `;`
/// start comments; blank lines are skipped.
std::vector<KvEntry> parse_kv_text(std::istream& in, std::string_view source);

std::string trim(std::string_view s);

/// Locale-independent decimal parsing; throws ParseError on failure.
double parse_double_at(std::string_view text, std::string_view source, int line);
long long parse_int_at(std::string_view text, std::string_view source, int line);

/// Splits on `sep` and trims each field.
std::vector<std::string> split_fields(std::string_view s, char sep);

/// Shortest round-trippable decimal text for a double.
std::string format_double(double v);

}  // namespace vdtp
