#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace hvlab {

using Cell = std::variant<std::int64_t, double, std::string>;

/// Column-ordered result table; the raw material for the CSV and JSON
/// emitters. Column order is part of the output interface.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void push_row(std::vector<Cell> row);  // throws ConfigError on width mismatch
};

std::string format_cell(const Cell& cell);

/// UTF-8 CSV with a leading '#' comment line carrying the manifest hash.
std::string to_csv(const Table& table, const std::string& manifest_hash);

/// JSON mirror of the same content: {"manifest_hash", "columns", "rows"}.
std::string to_json(const Table& table, const std::string& manifest_hash);

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

}  // namespace hvlab
