#include "vdtp/kv_text.hpp"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

namespace vdtp {

ParseError::ParseError(std::string_view source, int line, std::string_view what)
    : ConfigError(fmt::format("{}:{}: {}", source, line, what)), line_(line) {}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<KvEntry> parse_kv_text(std::istream& in, std::string_view source) {
    std::vector<KvEntry> out;
    std::string section;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view view(raw);
        const auto hash = view.find_first_of("#;");
        if (hash != std::string_view::npos) view = view.substr(0, hash);
        const std::string text = trim(view);
        if (text.empty()) continue;
        if (text.front() == '[') {
            if (text.back() != ']') throw ParseError(source, line, "unterminated section header");
            section = trim(std::string_view(text).substr(1, text.size() - 2));
            if (section.empty()) throw ParseError(source, line, "empty section header");
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ParseError(source, line, fmt::format("expected 'key = value', got '{}'", text));
        KvEntry e{section, trim(std::string_view(text).substr(0, eq)), trim(std::string_view(text).substr(eq + 1)), line};
        if (e.key.empty()) throw ParseError(source, line, "missing key before '='");
        if (e.value.empty()) throw ParseError(source, line, fmt::format("missing value for '{}'", e.key));
        out.push_back(std::move(e));
    }
    return out;
}

double parse_double_at(std::string_view text, std::string_view source, int line) {
    const std::string t = trim(text);
    double v = 0.0;
    const char* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (t.empty() || ec != std::errc{} || ptr != end || std::isnan(v))
        throw ParseError(source, line, fmt::format("'{}' is not a decimal number", t));
    return v;
}

long long parse_int_at(std::string_view text, std::string_view source, int line) {
    const std::string t = trim(text);
    long long v = 0;
    const char* end = t.data() + t.size();
    auto [ptr, ec] = std::from_chars(t.data(), end, v);
    if (t.empty() || ec != std::errc{} || ptr != end)
        throw ParseError(source, line, fmt::format("'{}' is not an integer", t));
    return v;
}

std::vector<std::string> split_fields(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

}  // namespace vdtp
