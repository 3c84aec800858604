#include "equidist/table.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

namespace eqd {

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        throw std::invalid_argument("table row has " + std::to_string(row.size()) +
                                    " cells, expected " + std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

std::string cell_text(const Cell& c)
{
    if (auto p = std::get_if<i64>(&c)) return std::to_string(*p);
    if (auto p = std::get_if<double>(&c)) return format_double(*p);
    return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c)
{
    if (auto p = std::get_if<i64>(&c)) return *p;
    if (auto p = std::get_if<double>(&c)) {
        if (!std::isfinite(*p)) return format_double(*p);
        return std::strtod(format_double(*p).c_str(), nullptr);
    }
    return std::get<std::string>(c);
}

}  // namespace

void emit(const Table& t, Format f, std::ostream& out)
{
    if (f == Format::Csv) {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "," : "") << csv_field(t.columns[i]);
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << csv_field(cell_text(row[i]));
            out << '\n';
        }
    } else {
        for (const auto& row : t.rows) {
            nlohmann::ordered_json obj = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
            out << obj.dump() << '\n';
        }
    }
    out.flush();
    if (!out) throw std::runtime_error("write failed");
}

}  // namespace eqd
