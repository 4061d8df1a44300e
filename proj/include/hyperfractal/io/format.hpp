#pragma once

#include <charconv>
#include <cstdio>
#include <string>
#include <system_error>

namespace hyperfractal::io {

/// Fixed-point with exactly `digits` decimals, locale-independent.
inline std::string format_fixed(double value, int digits) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                      std::chars_format::fixed, digits);
    return std::string(buffer, result.ptr);
}

/// Shortest representation that parses back to the same double.
inline std::string format_roundtrip(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

}  // namespace hyperfractal::io
