#include "squint/table.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace squint {

Format parse_format(const std::string& s)
{
    if (s == "csv")
        return Format::Csv;
    if (s == "json")
        return Format::Json;
    throw std::invalid_argument("unknown output format '" + s + "' (expected csv or json)");
}

const char* extension(Format f)
{
    return f == Format::Csv ? ".csv" : ".json";
}

void Table::add(std::vector<Cell> row)
{
    if (row.size() != columns.size())
        throw std::invalid_argument("Table::add: row has " + std::to_string(row.size()) +
                                    " cells, expected " + std::to_string(columns.size()));
    rows.push_back(std::move(row));
}

std::string format_number(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_csv(std::ostream& os, const Table& t)
{
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << (i ? "," : "") << t.columns[i];
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                os << ',';
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        os << format_number(v);
                    else
                        os << v;
                },
                row[i]);
        }
        os << '\n';
    }
}

void write_json(std::ostream& os, const Table& t)
{
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i)
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    // Round-trip through the 12-digit text so CSV and JSON agree.
                    if constexpr (std::is_same_v<T, double>) {
                        if (std::isfinite(v))
                            obj[t.columns[i]] = std::stod(format_number(v));
                        else
                            obj[t.columns[i]] = format_number(v);
                    } else
                        obj[t.columns[i]] = v;
                },
                row[i]);
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

void write_table(const std::filesystem::path& path, const Table& t, Format f)
{
    std::ofstream os(path, std::ios::binary);
    if (!os)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    if (f == Format::Csv)
        write_csv(os, t);
    else
        write_json(os, t);
    os.flush();
    if (!os)
        throw std::runtime_error("failed writing " + path.string());
}

}  // namespace squint
