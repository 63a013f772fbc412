#include "ringspin/table.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ringspin {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("row width does not match table '" + name + "'");
    }
    rows.push_back(std::move(row));
}

namespace {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

Cell parse_cell(const std::string& text) {
    if (text.empty()) {
        return std::string{};
    }
    const char* begin = text.c_str();
    char* end = nullptr;
    errno = 0;
    const long long i = std::strtoll(begin, &end, 10);
    if (errno == 0 && *end == '\0') {
        return i;
    }
    errno = 0;
    const double d = std::strtod(begin, &end);
    if (*end == '\0') {
        return d;
    }
    return text;
}

bool numeric(const Cell& c, double& out) {
    if (const auto* i = std::get_if<long long>(&c)) {
        out = static_cast<double>(*i);
        return true;
    }
    if (const auto* d = std::get_if<double>(&c)) {
        out = *d;
        return true;
    }
    return false;
}

}  // namespace

double round_significant(double v) {
    if (!std::isfinite(v)) {
        return v;
    }
    return std::strtod(format_real(v).c_str(), nullptr);
}

std::string format_cell(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_real(v);
            } else {
                return v;
            }
        },
        cell);
}

void write_csv(std::ostream& os, const Table& table) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << (i ? "," : "") << table.columns[i];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << format_cell(row[i]);
        }
        os << '\n';
    }
}

Table read_csv(std::istream& is, std::string name) {
    Table t;
    t.name = std::move(name);
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> parts;
        std::stringstream ss(l);
        std::string field;
        while (std::getline(ss, field, ',')) {
            parts.push_back(field);
        }
        if (!l.empty() && l.back() == ',') {
            parts.emplace_back();
        }
        return parts;
    };
    if (!std::getline(is, line)) {
        throw std::runtime_error("CSV input is empty");
    }
    t.columns = split(line);
    while (std::getline(is, line)) {
        if (line.empty()) {
            break;
        }
        std::vector<Cell> row;
        for (const auto& field : split(line)) {
            row.push_back(parse_cell(field));
        }
        t.add_row(std::move(row));
    }
    return t;
}

nlohmann::json to_json(const std::vector<Table>& tables) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& t : tables) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : t.rows) {
            nlohmann::json r = nlohmann::json::array();
            for (const auto& cell : row) {
                std::visit(
                    [&](const auto& v) {
                        using T = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<T, double>) {
                            if (std::isfinite(v)) {
                                r.push_back(round_significant(v));
                            } else {
                                r.push_back(format_real(v));
                            }
                        } else {
                            r.push_back(v);
                        }
                    },
                    cell);
            }
            rows.push_back(std::move(r));
        }
        list.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", std::move(rows)}});
    }
    return {{"tables", std::move(list)}};
}

std::vector<Table> tables_from_json(const nlohmann::json& doc) {
    std::vector<Table> out;
    for (const auto& body : doc.at("tables")) {
        Table t;
        t.name = body.at("name").get<std::string>();
        t.columns = body.at("columns").get<std::vector<std::string>>();
        for (const auto& r : body.at("rows")) {
            std::vector<Cell> row;
            for (const auto& v : r) {
                if (v.is_number_integer()) {
                    row.emplace_back(v.get<long long>());
                } else if (v.is_number()) {
                    row.emplace_back(v.get<double>());
                } else {
                    row.emplace_back(parse_cell(v.get<std::string>()));
                }
            }
            t.add_row(std::move(row));
        }
        out.push_back(std::move(t));
    }
    return out;
}

bool cells_equal(const Cell& x, const Cell& y) {
    double dx = 0.0, dy = 0.0;
    const bool nx = numeric(x, dx);
    const bool ny = numeric(y, dy);
    if (nx && ny) {
        return dx == dy || (std::isnan(dx) && std::isnan(dy));
    }
    if (nx != ny) {
        return false;
    }
    return std::get<std::string>(x) == std::get<std::string>(y);
}

bool tables_equal(const Table& x, const Table& y) {
    if (x.columns != y.columns || x.rows.size() != y.rows.size()) {
        return false;
    }
    for (std::size_t r = 0; r < x.rows.size(); ++r) {
        for (std::size_t c = 0; c < x.columns.size(); ++c) {
            if (!cells_equal(x.rows[r][c], y.rows[r][c])) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace ringspin
