#include "chermnykh/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace chermnykh {

std::string_view to_string(Command c) {
    switch (c) {
        case Command::Equilibria: return "equilibria";
        case Command::Stability: return "stability";
        case Command::Zvc: return "zvc";
        case Command::MuCrit: return "mu-crit";
        case Command::Integrate: return "integrate";
        case Command::Tables: return "tables";
        case Command::Sweep: return "sweep";
    }
    return "?";
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "json"; }

Command parse_command(std::string_view s) {
    for (Command c : {Command::Equilibria, Command::Stability, Command::Zvc, Command::MuCrit, Command::Integrate,
                      Command::Tables, Command::Sweep}) {
        if (to_string(c) == s) {
            return c;
        }
    }
    throw UsageError("unknown command '" + std::string(s) + "'");
}

OutputFormat RunConfig::effective_format() const {
    if (format) {
        return *format;
    }
    switch (command) {
        case Command::Equilibria:
        case Command::Stability:
        case Command::MuCrit: return OutputFormat::Json;
        default: return OutputFormat::Csv;
    }
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

double parse_real(std::string_view s) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw UsageError("expected a finite number, got '" + std::string(s) + "'");
    }
    return v;
}

long long parse_integer(std::string_view s) {
    s = trim(s);
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw UsageError("expected an integer, got '" + std::string(s) + "'");
    }
    return v;
}

std::size_t parse_count(std::string_view s) {
    const long long v = parse_integer(s);
    if (v < 0) {
        throw UsageError("expected a non-negative integer, got '" + std::string(s) + "'");
    }
    return static_cast<std::size_t>(v);
}

std::string shortest(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <typename T, typename F>
std::string join(const std::vector<T>& values, F&& fmt) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += fmt(values[i]);
    }
    return out;
}

using Setter = std::function<void(RunConfig&, std::string_view)>;
using Getter = std::function<std::string(const RunConfig&)>;

struct Setting {
    Setter set;
    Getter get;
};

Setting real(double RunConfig::*field) {
    return {[field](RunConfig& c, std::string_view v) { c.*field = parse_real(v); },
            [field](const RunConfig& c) { return shortest(c.*field); }};
}

Setting param(double ParameterSet::*field) {
    return {[field](RunConfig& c, std::string_view v) { c.params.*field = parse_real(v); },
            [field](const RunConfig& c) { return shortest(c.params.*field); }};
}

Setting count(std::size_t RunConfig::*field) {
    return {[field](RunConfig& c, std::string_view v) { c.*field = parse_count(v); },
            [field](const RunConfig& c) { return std::to_string(c.*field); }};
}

Setting bound(double Bounds::*field) {
    return {[field](RunConfig& c, std::string_view v) { c.bounds.*field = parse_real(v); },
            [field](const RunConfig& c) { return shortest(c.bounds.*field); }};
}

Setting axis(std::vector<double> SweepAxes::*field) {
    return {[field](RunConfig& c, std::string_view v) {
                auto values = parse_real_list(v);
                if (values.empty()) {
                    throw UsageError("sweep axis is empty");
                }
                c.sweep.*field = std::move(values);
            },
            [field](const RunConfig& c) { return join(c.sweep.*field, shortest); }};
}

const std::map<std::string, Setting, std::less<>>& settings() {
    static const std::map<std::string, Setting, std::less<>> table = [] {
        std::map<std::string, Setting, std::less<>> m;
        m["command"] = {[](RunConfig& c, std::string_view v) { c.command = parse_command(trim(v)); },
                        [](const RunConfig& c) { return std::string(to_string(c.command)); }};
        m["mu"] = param(&ParameterSet::mu);
        m["q1"] = param(&ParameterSet::q1);
        m["a2"] = param(&ParameterSet::a2);
        m["mb"] = param(&ParameterSet::mb);
        m["t"] = param(&ParameterSet::t_belt);
        m["rc"] = param(&ParameterSet::rc);
        m["out"] = {[](RunConfig& c, std::string_view v) { c.out = std::string(trim(v)); },
                    [](const RunConfig& c) { return c.out; }};
        m["format"] = {[](RunConfig& c, std::string_view v) {
                           v = trim(v);
                           if (v == "csv") {
                               c.format = OutputFormat::Csv;
                           } else if (v == "json") {
                               c.format = OutputFormat::Json;
                           } else if (v.empty() || v == "auto") {
                               c.format.reset();
                           } else {
                               throw UsageError("format must be csv or json");
                           }
                       },
                       [](const RunConfig& c) {
                           return c.format ? std::string(to_string(*c.format)) : std::string("auto");
                       }};
        m["tol"] = real(&RunConfig::tol);
        m["samples"] = count(&RunConfig::samples);
        m["x0"] = real(&RunConfig::x0);
        m["y0"] = real(&RunConfig::y0);
        m["vx0"] = real(&RunConfig::vx0);
        m["vy0"] = real(&RunConfig::vy0);
        m["tend"] = real(&RunConfig::tend);
        m["dt"] = real(&RunConfig::dt);
        m["C"] = real(&RunConfig::level);
        m["grid"] = count(&RunConfig::grid);
        m["xmin"] = bound(&Bounds::xmin);
        m["xmax"] = bound(&Bounds::xmax);
        m["ymin"] = bound(&Bounds::ymin);
        m["ymax"] = bound(&Bounds::ymax);
        m["k"] = {[](RunConfig& c, std::string_view v) { c.k = parse_int_list(v); },
                  [](const RunConfig& c) { return join(c.k, [](int k) { return std::to_string(k); }); }};
        m["table"] = {[](RunConfig& c, std::string_view v) {
                          v = trim(v);
                          if (v != "table1" && v != "table2" && v != "all") {
                              throw UsageError("table must be table1, table2 or all");
                          }
                          c.table = std::string(v);
                      },
                      [](const RunConfig& c) { return c.table; }};
        m["sweep-mu"] = axis(&SweepAxes::mu);
        m["sweep-q1"] = axis(&SweepAxes::q1);
        m["sweep-a2"] = axis(&SweepAxes::a2);
        m["sweep-mb"] = axis(&SweepAxes::mb);
        m["threads"] = count(&RunConfig::threads);
        return m;
    }();
    return table;
}

}  // namespace

const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, _] : settings()) {
            k.push_back(name);
        }
        return k;
    }();
    return keys;
}

void apply_setting(RunConfig& config, std::string_view key, std::string_view value) {
    const auto it = settings().find(trim(key));
    if (it == settings().end()) {
        throw UsageError("unknown setting '" + std::string(key) + "'");
    }
    it->second.set(config, value);
}

RunConfig parse_config_text(std::string_view text, RunConfig base) {
    std::size_t line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) {
            line = trim(line.substr(0, hash));
        }
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
        }
        try {
            apply_setting(base, line.substr(0, eq), trim(line.substr(eq + 1)));
        } catch (const UsageError& e) {
            throw UsageError("config line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return base;
}

std::string to_config_text(const RunConfig& config) {
    std::ostringstream os;
    for (const auto& [name, setting] : settings()) {
        const std::string value = setting.get(config);
        if (name.rfind("sweep-", 0) == 0 && value.empty()) {
            continue;  // unset axis
        }
        os << name << " = " << value << '\n';
    }
    return os.str();
}

std::vector<int> parse_int_list(std::string_view s) {
    std::vector<int> out;
    for (std::string_view item : split(s, ',')) {
        if (item.empty()) {
            continue;
        }
        if (const auto dots = item.find(".."); dots != std::string_view::npos) {
            const long long lo = parse_integer(item.substr(0, dots));
            const long long hi = parse_integer(item.substr(dots + 2));
            if (hi < lo || hi - lo > 10000) {
                throw UsageError("bad integer range '" + std::string(item) + "'");
            }
            for (long long v = lo; v <= hi; ++v) {
                out.push_back(static_cast<int>(v));
            }
        } else {
            out.push_back(static_cast<int>(parse_integer(item)));
        }
    }
    return out;
}

std::vector<double> parse_real_list(std::string_view s) {
    std::vector<double> out;
    for (std::string_view item : split(s, ',')) {
        if (item.empty()) {
            continue;
        }
        const auto parts = split(item, ':');
        if (parts.size() == 1) {
            out.push_back(parse_real(item));
            continue;
        }
        if (parts.size() != 3) {
            throw UsageError("range must be start:stop:step, got '" + std::string(item) + "'");
        }
        const double start = parse_real(parts[0]);
        const double stop = parse_real(parts[1]);
        const double step = parse_real(parts[2]);
        if (!(step != 0.0) || (stop - start) / step < -1e-9) {
            throw UsageError("range step does not reach stop in '" + std::string(item) + "'");
        }
        const double count = std::floor((stop - start) / step + 1e-9);
        if (count > 1e7) {
            throw UsageError("range '" + std::string(item) + "' is too long");
        }
        for (long long i = 0; i <= static_cast<long long>(count); ++i) {
            out.push_back(start + static_cast<double>(i) * step);
        }
    }
    return out;
}

void validate(const RunConfig& config) {
    if (config.command == Command::Sweep && config.sweep.empty()) {
        throw UsageError("sweep needs at least one non-empty axis (--sweep-q1, --sweep-a2, --sweep-mb, --sweep-mu)");
    }
    if (config.command == Command::MuCrit && config.k.empty()) {
        throw UsageError("mu-crit needs at least one k");
    }
}

}  // namespace chermnykh
