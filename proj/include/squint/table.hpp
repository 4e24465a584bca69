#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace squint {

enum class Format { Csv, Json };
Format parse_format(const std::string& s);
const char* extension(Format f);

// Small column-oriented result table; doubles print with 12 significant digits.
struct Table {
    using Cell = std::variant<long long, double, std::string>;

    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    explicit Table(std::vector<std::string> cols) : columns(std::move(cols)) {}
    void add(std::vector<Cell> row);
};

std::string format_number(double v);

void write_csv(std::ostream& os, const Table& t);
// Array of row objects.
void write_json(std::ostream& os, const Table& t);
// Writes path (extension chosen by format is the caller's job); throws
// std::runtime_error if the file cannot be written.
void write_table(const std::filesystem::path& path, const Table& t, Format f);

}  // namespace squint
