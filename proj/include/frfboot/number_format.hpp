#pragma once

#include "frfboot/errors.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace frfboot {

/// Locale-independent decimal with up to 17 significant digits; parses
/// back to the identical double.
inline std::string format_double(double v) {
    if (!std::isfinite(v))
        throw ValidationError("cannot serialise a non-finite number");
    if (v == 0.0)
        return "0";  // -0 would not survive a JSON round trip
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

/// Fixed notation with `decimals` digits after the point.
inline std::string format_fixed(double v, int decimals) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
    return std::string(buf, r.ptr);
}

/// Whole-token decimal parse; empty on any trailing garbage or non-finite value.
inline std::optional<double> parse_double(std::string_view s) {
    if (!s.empty() && s.front() == '+')
        s.remove_prefix(1);
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size() || !std::isfinite(v))
        return std::nullopt;
    return v;
}

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace frfboot
