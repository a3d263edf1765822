#include "hvlab/table.hpp"

#include <cstdio>

#include <nlohmann/json.hpp>

#include "hvlab/errors.hpp"

namespace hvlab {

void Table::push_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw ConfigError("table: row width does not match column count");
    rows.push_back(std::move(row));
}

std::string format_cell(const Cell& cell) {
    if (const auto* i = std::get_if<std::int64_t>(&cell)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.12g", *d);
        return buf;
    }
    return std::get<std::string>(cell);
}

namespace {

// Values are numbers and enum names; quoting only guards the odd free-text
// field.
std::string csv_escape(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string quoted = "\"";
    for (char ch : value) {
        if (ch == '"') quoted += '"';
        quoted += ch;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::string to_csv(const Table& table, const std::string& manifest_hash) {
    std::string out = "# manifest=" + manifest_hash + "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += csv_escape(table.columns[c]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += csv_escape(format_cell(row[c]));
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table& table, const std::string& manifest_hash) {
    nlohmann::json doc;
    doc["manifest_hash"] = manifest_hash;
    doc["columns"] = table.columns;
    auto rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
        auto json_row = nlohmann::json::array();
        for (const auto& cell : row) {
            if (const auto* i = std::get_if<std::int64_t>(&cell))
                json_row.push_back(*i);
            else if (const auto* d = std::get_if<double>(&cell))
                json_row.push_back(*d);
            else
                json_row.push_back(std::get<std::string>(cell));
        }
        rows.push_back(std::move(json_row));
    }
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (unsigned char byte : bytes) {
        hash ^= byte;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

}  // namespace hvlab
