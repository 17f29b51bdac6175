#ifndef TRAITLAB_REPORT_HPP
#define TRAITLAB_REPORT_HPP

// Deterministic CSV / JSON-lines report files.

#include "traitlab/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace traitlab {

inline constexpr const char* kToolName = "traitlab";
inline constexpr const char* kToolVersion = "0.1.0";

enum class ReportFormat { Csv, Jsonl };

struct Report {
    std::string command;
    /// Configuration echoed into the header, in the given order.
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    /// Rows are sorted by this many leading columns.
    std::size_t key_columns = 2;
};

namespace detail {

// Shortest first, then lexicographic: numeric order for naturals, and the
// enumeration order for input strings.
inline bool shortlex_less(const std::string& a, const std::string& b)
{
    return a.size() != b.size() ? a.size() < b.size() : a < b;
}

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

} // namespace detail

/// Rows in canonical order (stable on equal keys).
inline std::vector<std::vector<std::string>> sorted_rows(const Report& r)
{
    auto rows = r.rows;
    const std::size_t keys = std::min(r.key_columns, r.columns.size());
    std::stable_sort(rows.begin(), rows.end(), [keys](const auto& a, const auto& b) {
        for (std::size_t i = 0; i < keys; ++i) {
            if (detail::shortlex_less(a[i], b[i]))
                return true;
            if (detail::shortlex_less(b[i], a[i]))
                return false;
        }
        return false;
    });
    return rows;
}

/// CSV: a '#' line with tool, version and config, the column line, then rows.
/// JSONL: a header object, then one object per row with keys in column order.
inline void write_report(const Report& r, ReportFormat format, std::ostream& out)
{
    for (const auto& row : r.rows)
        if (row.size() != r.columns.size())
            throw DomainError("report row has " + std::to_string(row.size()) + " fields, expected "
                              + std::to_string(r.columns.size()));
    const auto rows = sorted_rows(r);
    if (format == ReportFormat::Csv) {
        out << "# " << kToolName << ' ' << kToolVersion << " command=" << r.command;
        for (const auto& [k, v] : r.config)
            out << ' ' << k << '=' << v;
        out << '\n';
        for (std::size_t i = 0; i < r.columns.size(); ++i)
            out << (i ? "," : "") << detail::csv_field(r.columns[i]);
        out << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << detail::csv_field(row[i]);
            out << '\n';
        }
        return;
    }
    nlohmann::ordered_json header;
    header["tool"] = kToolName;
    header["version"] = kToolVersion;
    header["command"] = r.command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.config)
        config[k] = v;
    header["config"] = config;
    out << header.dump() << '\n';
    for (const auto& row : rows) {
        nlohmann::ordered_json j;
        for (std::size_t i = 0; i < row.size(); ++i)
            j[r.columns[i]] = row[i];
        out << j.dump() << '\n';
    }
}

inline std::string report_string(const Report& r, ReportFormat format)
{
    std::ostringstream s;
    write_report(r, format, s);
    return s.str();
}

inline void write_report(const Report& r, ReportFormat format, const std::string& path)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw Error("cannot open '" + path + "' for writing");
    write_report(r, format, f);
    if (!f.flush())
        throw Error("failed writing '" + path + "'");
}

} // namespace traitlab

#endif
