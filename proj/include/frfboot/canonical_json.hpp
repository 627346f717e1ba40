#pragma once

#include "frfboot/number_format.hpp"

#include <json.hpp>

#include <string>

namespace frfboot {

namespace detail {

inline bool is_scalar_array(const nlohmann::json& j) {
    for (const auto& e : j)
        if (e.is_structured())
            return false;
    return true;
}

inline void dump_canonical(const nlohmann::json& j, std::string& out, int depth) {
    const auto indent = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
    switch (j.type()) {
    case nlohmann::json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: keys sorted
            if (!first)
                out += ",\n";
            first = false;
            indent(depth + 1);
            out += nlohmann::json(it.key()).dump();
            out += ": ";
            dump_canonical(it.value(), out, depth + 1);
        }
        out += '\n';
        indent(depth);
        out += '}';
        return;
    }
    case nlohmann::json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        if (is_scalar_array(j)) {
            out += '[';
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i)
                    out += ", ";
                dump_canonical(j[i], out, depth);
            }
            out += ']';
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i)
                out += ",\n";
            indent(depth + 1);
            dump_canonical(j[i], out, depth + 1);
        }
        out += '\n';
        indent(depth);
        out += ']';
        return;
    }
    case nlohmann::json::value_t::number_float:
        out += format_double(j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

} // namespace detail

/// Sorted keys, two-space indent, scalar arrays on one line, floats with
/// 17 significant digits. Re-parsing and dumping again gives the same bytes.
inline std::string canonical_dump(const nlohmann::json& j) {
    std::string out;
    detail::dump_canonical(j, out, 0);
    out += '\n';
    return out;
}

} // namespace frfboot
