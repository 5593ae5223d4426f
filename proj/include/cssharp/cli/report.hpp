#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace cssharp::cli {

using Report = nlohmann::ordered_json;

inline constexpr const char* tool_version = "0.1.0";

/// Shortest text form is not enough here: every real is written with 17
/// significant digits so that parsing it back restores the exact double.
inline std::string format_real(double v) {
    if (!std::isfinite(v)) return "null";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace detail {

inline void write_json(const Report& j, std::string& out, int indent, int depth) {
    const std::string pad = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * (depth + 1)), ' ') : "";
    const std::string close = indent > 0 ? "\n" + std::string(static_cast<std::size_t>(indent * depth), ' ') : "";
    switch (j.type()) {
    case Report::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += '{';
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) out += ',';
            first = false;
            out += pad;
            out += Report(key).dump();
            out += indent > 0 ? ": " : ":";
            write_json(value, out, indent, depth + 1);
        }
        out += close;
        out += '}';
        return;
    }
    case Report::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += '[';
        bool first = true;
        for (const auto& value : j) {
            if (!first) out += ',';
            first = false;
            out += pad;
            write_json(value, out, indent, depth + 1);
        }
        out += close;
        out += ']';
        return;
    }
    case Report::value_t::number_float:
        out += format_real(j.get<double>());
        return;
    default:
        out += j.dump();
        return;
    }
}

inline void flatten(const Report& j, const std::string& prefix,
                    std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            flatten(value, prefix.empty() ? key : prefix + "." + key, rows);
    } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
    } else {
        std::string text;
        write_json(j, text, 0, 0);
        if (j.is_string()) text = j.get<std::string>();
        rows.emplace_back(prefix, text);
    }
}

} // namespace detail

/// JSON document with 17-significant-digit reals.
inline std::string to_json(const Report& report, int indent = 2) {
    std::string out;
    detail::write_json(report, out, indent, 0);
    out += '\n';
    return out;
}

/// Two-column key/value table for terminals.
inline std::string to_table(const Report& report) {
    std::vector<std::pair<std::string, std::string>> rows;
    detail::flatten(report, "", rows);
    std::size_t width = 0;
    for (const auto& r : rows) width = std::max(width, r.first.size());
    std::string out;
    for (const auto& [key, value] : rows) {
        out += key;
        out.append(width + 2 - key.size(), ' ');
        out += value;
        out += '\n';
    }
    return out;
}

} // namespace cssharp::cli
