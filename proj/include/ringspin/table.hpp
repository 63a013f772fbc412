#pragma once

// Tabular command output and its CSV / JSON encodings.
//
// Reals are written with 15 significant digits in both encodings, so a value
// parsed back from CSV equals the same value parsed back from JSON.

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace ringspin {

using Cell = std::variant<long long, double, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

/// Round to 15 significant digits (the value that "%.15g" denotes).
double round_significant(double v);
std::string format_cell(const Cell& cell);

void write_csv(std::ostream& os, const Table& table);
/// Header row then data rows; cells are typed as integer, real or text on read.
Table read_csv(std::istream& is, std::string name);

nlohmann::json to_json(const std::vector<Table>& tables);
std::vector<Table> tables_from_json(const nlohmann::json& doc);

/// Numeric cells compare by value regardless of integer/real representation.
bool cells_equal(const Cell& x, const Cell& y);
bool tables_equal(const Table& x, const Table& y);

}  // namespace ringspin
