#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cssharp/errors.hpp"
#include "cssharp/projection.hpp"
#include "cssharp/series.hpp"

// Minimal CSV ingestion: comma separated, optional header row, one
// observation per row, a single selected column per file.

namespace cssharp::cli {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string_view> split_fields(std::string_view line, char sep = ',') {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

inline std::optional<double> parse_real(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

inline std::optional<std::int64_t> parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

inline std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (!trim(line).empty()) lines.push_back(line);
    return lines;
}

/// Raw text cells of one column. `selector` is a header name or a 0-based
/// index; a first row whose selected cell is not numeric is taken as header.
inline std::vector<std::string> column_cells(const std::string& path, const std::string& selector) {
    const auto lines = read_lines(path);
    if (lines.empty()) throw ParseError("'" + path + "' has no rows");

    const auto header = split_fields(lines.front());
    std::size_t col = 0;
    bool has_header = false;
    if (const auto idx = parse_integer(selector); idx && *idx >= 0) {
        col = static_cast<std::size_t>(*idx);
        has_header = col < header.size() && !parse_real(header[col]).has_value();
    } else {
        bool found = false;
        for (std::size_t i = 0; i < header.size(); ++i)
            if (header[i] == selector) {
                col = i;
                found = true;
                break;
            }
        if (!found) throw ParseError("column '" + selector + "' not found in header of '" + path + "'");
        has_header = true;
    }

    std::vector<std::string> cells;
    for (std::size_t r = has_header ? 1 : 0; r < lines.size(); ++r) {
        const auto fields = split_fields(lines[r]);
        if (col >= fields.size())
            throw ParseError("'" + path + "' row " + std::to_string(r + 1) + " has no column " +
                             std::to_string(col));
        cells.emplace_back(fields[col]);
    }
    if (cells.empty()) throw ParseError("'" + path + "' has no data rows");
    return cells;
}

} // namespace detail

/// Reads one column of finite decimal reals.
inline Series read_column(const std::string& path, const std::string& selector = "0") {
    const auto cells = detail::column_cells(path, selector);
    std::vector<double> values;
    values.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i) {
        const auto v = detail::parse_real(cells[i]);
        if (!v || !std::isfinite(*v))
            throw ParseError("'" + path + "': value '" + cells[i] + "' is not a finite real");
        values.push_back(*v);
    }
    return Series(std::move(values));
}

/// Reads one column of integer group labels.
inline std::vector<std::int64_t> read_labels(const std::string& path, const std::string& selector = "0") {
    const auto cells = detail::column_cells(path, selector);
    std::vector<std::int64_t> labels;
    labels.reserve(cells.size());
    for (const auto& c : cells) {
        const auto v = detail::parse_integer(c);
        if (!v) throw ParseError("'" + path + "': label '" + c + "' is not an integer");
        labels.push_back(*v);
    }
    return labels;
}

/// Whitespace-separated n x m matrix, one row per line.
inline Matrix read_matrix(const std::string& path) {
    const auto lines = detail::read_lines(path);
    if (lines.empty()) throw ParseError("'" + path + "' has no rows");
    std::vector<std::vector<double>> rows;
    for (const auto& line : lines) {
        std::istringstream in(line);
        std::string tok;
        std::vector<double> row;
        while (in >> tok) {
            const auto v = detail::parse_real(tok);
            if (!v || !std::isfinite(*v)) throw ParseError("'" + path + "': bad matrix entry '" + tok + "'");
            row.push_back(*v);
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("'" + path + "': ragged matrix rows");
        rows.push_back(std::move(row));
    }
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) m(i, j) = rows[i][j];
    return m;
}

} // namespace cssharp::cli
