#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

namespace chermnykh {

/// Empty cells serialize as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, double, long long, std::string>;

/// A rectangular result with scalar metadata; every command emits one.
struct Dataset {
    std::string command;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, Cell>> meta;

    void add_row(std::vector<Cell> row);
};

inline constexpr int kSchemaVersion = 1;
inline constexpr int kSignificantDigits = 12;

/// %.12g without locale; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

/// v rounded to 12 significant digits (non-finite values pass through).
double round_significant(double v);

/// RFC 4180 quoting: fields with commas, quotes or line breaks are quoted and
/// embedded quotes doubled.
std::string csv_field(std::string_view s);

std::string cell_text(const Cell& c);

void write_csv(std::ostream& os, const Dataset& data);

nlohmann::ordered_json to_json(const Dataset& data);
void write_json(std::ostream& os, const Dataset& data);

}  // namespace chermnykh
