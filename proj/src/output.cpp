#include "chermnykh/output.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace chermnykh {

void Dataset::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw std::logic_error("row width " + std::to_string(row.size()) + " does not match " +
                               std::to_string(columns.size()) + " columns");
    }
    rows.push_back(std::move(row));
}

std::string format_number(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, kSignificantDigits);
    if (ec != std::errc()) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buf, ptr);
}

double round_significant(double v) {
    if (!std::isfinite(v)) {
        return v;
    }
    const std::string s = format_number(v);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string cell_text(const Cell& c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(long long v) const { return std::to_string(v); }
        std::string operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

void write_csv(std::ostream& os, const Dataset& data) {
    os << "# schema=" << kSchemaVersion << "\n";
    os << "# command=" << data.command << "\n";
    for (const auto& [key, value] : data.meta) {
        std::string text = cell_text(value);
        for (char& ch : text) {
            if (ch == '\n' || ch == '\r') {
                ch = ' ';
            }
        }
        os << "# " << key << '=' << text << "\n";
    }
    for (std::size_t i = 0; i < data.columns.size(); ++i) {
        os << (i ? "," : "") << csv_field(data.columns[i]);
    }
    os << "\n";
    for (const auto& row : data.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            os << (i ? "," : "") << csv_field(cell_text(row[i]));
        }
        os << "\n";
    }
}

namespace {

nlohmann::ordered_json json_value(const Cell& c) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(double v) const {
            if (!std::isfinite(v)) {
                return nullptr;
            }
            return round_significant(v);
        }
        nlohmann::ordered_json operator()(long long v) const { return v; }
        nlohmann::ordered_json operator()(const std::string& s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

}  // namespace

nlohmann::ordered_json to_json(const Dataset& data) {
    nlohmann::ordered_json j;
    j["schema"] = kSchemaVersion;
    j["command"] = data.command;
    auto& meta = j["meta"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : data.meta) {
        meta[key] = json_value(value);
    }
    auto& rows = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : data.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[data.columns[i]] = json_value(row[i]);
        }
        rows.push_back(std::move(obj));
    }
    return j;
}

namespace {

std::string json_text(const Cell& c) {
    if (const double* v = std::get_if<double>(&c)) {
        return std::isfinite(*v) ? format_number(*v) : "null";
    }
    return json_value(c).dump();
}

std::string json_key(const std::string& k) { return nlohmann::json(k).dump(); }

}  // namespace

void write_json(std::ostream& os, const Dataset& data) {
    os << "{\n  \"schema\": " << kSchemaVersion << ",\n  \"command\": " << json_key(data.command)
       << ",\n  \"meta\": {";
    for (std::size_t i = 0; i < data.meta.size(); ++i) {
        os << (i ? "," : "") << "\n    " << json_key(data.meta[i].first) << ": " << json_text(data.meta[i].second);
    }
    os << (data.meta.empty() ? "}" : "\n  }") << ",\n  \"rows\": [";
    for (std::size_t r = 0; r < data.rows.size(); ++r) {
        os << (r ? "," : "") << "\n    {";
        for (std::size_t i = 0; i < data.columns.size(); ++i) {
            os << (i ? ", " : "") << json_key(data.columns[i]) << ": " << json_text(data.rows[r][i]);
        }
        os << "}";
    }
    os << (data.rows.empty() ? "]" : "\n  ]") << "\n}\n";
}

}  // namespace chermnykh
