#ifndef PARTITION_LAB_IO_HPP
#define PARTITION_LAB_IO_HPP

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "partition_lab/common.hpp"

namespace partition_lab {

/// Reproducible run configuration echoed into JSON output. `seedless`
/// documents that every computation here is deterministic: there is no RNG
/// anywhere in the library.
struct RunConfig {
    std::string command;
    u64 limit = 0;
    unsigned threads = 1;
    std::string format = "csv";  // csv | json | plot2col
    std::string output_path;     // empty = stdout
    bool seedless = true;
};

struct Cell {
    enum class Kind { integer, real, text } kind = Kind::text;
    std::string text;
};

inline Cell cell(u64 v) { return {Cell::Kind::integer, std::to_string(v)}; }
inline Cell cell(i64 v) { return {Cell::Kind::integer, std::to_string(v)}; }
inline Cell cell(int v) { return {Cell::Kind::integer, std::to_string(v)}; }
inline Cell cell(std::string v) { return {Cell::Kind::text, std::move(v)}; }
inline Cell cell(const char* v) { return {Cell::Kind::text, v}; }

/// Fixed 12-significant-digit formatting; identical bytes for identical
/// values, independent of locale or thread count.
inline Cell cell(long double v, int digits = 12) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*Lg", digits, v);
    return {Cell::Kind::real, buf};
}
inline Cell cell(double v, int digits = 12) {
    return cell(static_cast<long double>(v), digits);
}

/// A named table with a traceability anchor; every emitted table carries
/// the anchor in its header.
struct Table {
    std::string name;
    std::string anchor;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    std::vector<Cell>& add_row() {
        rows.emplace_back();
        return rows.back();
    }
};

inline void write_csv(const Table& t, std::ostream& out) {
    out << "# table: " << t.name << "\n";
    if (!t.anchor.empty()) out << "# anchor: " << t.anchor << "\n";
    for (size_t i = 0; i < t.columns.size(); ++i)
        out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& row : t.rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << (i ? "," : "") << row[i].text;
        out << "\n";
    }
}

/// Two-column gnuplot-friendly variant: (x, ratio) pairs only.
inline void write_plot2col(const Table& t, size_t xcol, size_t ycol,
                           std::ostream& out) {
    out << "# " << t.name;
    if (!t.anchor.empty()) out << " " << t.anchor;
    out << "\n";
    for (const auto& row : t.rows) {
        if (xcol >= row.size() || ycol >= row.size()) continue;
        out << row[xcol].text << " " << row[ycol].text << "\n";
    }
}

namespace detail {
inline void json_escape(const std::string& s, std::ostream& out) {
    out << '"';
    for (const char c : s) {
        switch (c) {
            case '"': out << "\\\""; break;
            case '\\': out << "\\\\"; break;
            case '\n': out << "\\n"; break;
            case '\t': out << "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out << buf;
                } else {
                    out << c;
                }
        }
    }
    out << '"';
}
inline void json_cell(const Cell& c, std::ostream& out) {
    if (c.kind == Cell::Kind::text)
        json_escape(c.text, out);
    else
        out << c.text;
}
}  // namespace detail

/// One top-level object: "meta" (RunConfig echo plus table name/anchor)
/// and "rows" (array of column-keyed objects).
inline void write_json(const Table& t, const RunConfig& cfg, std::ostream& out) {
    out << "{\"meta\":{";
    out << "\"command\":";
    detail::json_escape(cfg.command, out);
    out << ",\"limit\":" << cfg.limit;
    out << ",\"threads\":" << cfg.threads;
    out << ",\"format\":";
    detail::json_escape(cfg.format, out);
    out << ",\"output_path\":";
    detail::json_escape(cfg.output_path, out);
    out << ",\"seedless\":" << (cfg.seedless ? "true" : "false");
    out << ",\"table\":";
    detail::json_escape(t.name, out);
    out << ",\"anchor\":";
    detail::json_escape(t.anchor, out);
    out << "},\"rows\":[";
    for (size_t r = 0; r < t.rows.size(); ++r) {
        if (r) out << ",";
        out << "{";
        const auto& row = t.rows[r];
        for (size_t i = 0; i < row.size() && i < t.columns.size(); ++i) {
            if (i) out << ",";
            detail::json_escape(t.columns[i], out);
            out << ":";
            detail::json_cell(row[i], out);
        }
        out << "}";
    }
    out << "]}\n";
}

/// Dispatch on cfg.format; plot2col uses the given column pair.
inline void write_table(const Table& t, const RunConfig& cfg, std::ostream& out,
                        size_t plot_xcol = 0, size_t plot_ycol = 0) {
    if (cfg.format == "json")
        write_json(t, cfg, out);
    else if (cfg.format == "plot2col")
        write_plot2col(t, plot_xcol, plot_ycol, out);
    else
        write_csv(t, out);
}

}  // namespace partition_lab

#endif
