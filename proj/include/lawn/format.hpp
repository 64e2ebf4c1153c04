#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace lawn {

// Shortest decimal text that parses back to exactly `x`.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    std::string s(buf, res.ptr);
    return s;
}

}  // namespace lawn
