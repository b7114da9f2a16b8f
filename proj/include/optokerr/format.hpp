#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

namespace optokerr {

// 17 significant digits: enough for every double to round-trip exactly.
inline std::string format_double(double x) {
    char buf[40];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    if (ec != std::errc{}) return "nan";
    return std::string(buf, end);
}

// Strict parse: the whole token must be a number.
inline bool parse_double(std::string_view text, double& out) {
    if (text.empty()) return false;
    if (text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc{} && ptr == text.data() + text.size();
}

}  // namespace optokerr
