#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

// Minimal reader/writer for the plain comma-separated files used here:
// no quoting, one record per line, mandatory header row.
namespace prefeval::csv {

struct Row {
    std::size_t line = 0;  // 1-based line number in the source
    std::vector<std::string> fields;
};

struct Table {
    std::string source;
    std::vector<std::string> header;
    std::vector<Row> rows;
};

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        out.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

// Parses a whole stream. An empty stream yields a table with no header.
// Blank lines are skipped; every other row must match the header width.
inline Table parse(std::istream& in, const std::string& source,
                   const std::vector<std::string>& expected_header) {
    Table table;
    table.source = source;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto fields = split(line);
        if (table.header.empty()) {
            if (fields != expected_header) {
                std::string want;
                for (const auto& h : expected_header) want += (want.empty() ? "" : ",") + h;
                throw data_error(source, lineno, "expected header '" + want + "'");
            }
            table.header = std::move(fields);
            continue;
        }
        if (fields.size() != table.header.size())
            throw data_error(source, lineno,
                             "expected " + std::to_string(table.header.size()) + " fields, got " +
                                 std::to_string(fields.size()));
        table.rows.push_back({lineno, std::move(fields)});
    }
    return table;
}

inline Table read_file(const std::string& path, const std::vector<std::string>& expected_header) {
    std::ifstream in(path);
    if (!in) throw data_error(path, 0, "cannot open file");
    return parse(in, path, expected_header);
}

inline double to_double(const Row& row, std::size_t col, const std::string& source) {
    const std::string& f = row.fields.at(col);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size() || f.empty())
        throw data_error(source, row.line, "not a number: '" + f + "'");
    return v;
}

inline std::int64_t to_int(const Row& row, std::size_t col, const std::string& source) {
    const std::string& f = row.fields.at(col);
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
    if (ec != std::errc() || ptr != f.data() + f.size() || f.empty())
        throw data_error(source, row.line, "not an integer: '" + f + "'");
    return v;
}

inline bool to_bool(const Row& row, std::size_t col, const std::string& source) {
    const std::string& f = row.fields.at(col);
    if (f == "1" || f == "true" || f == "yes") return true;
    if (f == "0" || f == "false" || f == "no") return false;
    throw data_error(source, row.line, "not a boolean: '" + f + "'");
}

// Shortest representation that reads back to the identical double.
inline std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

inline void write_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << fields[i];
    }
    out << '\n';
}

}  // namespace prefeval::csv
