#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "chermnykh/contours.hpp"
#include "chermnykh/params.hpp"

namespace chermnykh {

/// Bad command line or configuration text (exit status 64).
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class Command { Equilibria, Stability, Zvc, MuCrit, Integrate, Tables, Sweep };
enum class OutputFormat { Csv, Json };

std::string_view to_string(Command c);
std::string_view to_string(OutputFormat f);
Command parse_command(std::string_view s);

struct SweepAxes {
    std::vector<double> mu;
    std::vector<double> q1;
    std::vector<double> a2;
    std::vector<double> mb;

    bool empty() const { return mu.empty() && q1.empty() && a2.empty() && mb.empty(); }
    bool operator==(const SweepAxes&) const = default;
};

struct RunConfig {
    Command command = Command::Equilibria;
    ParameterSet params;
    std::string out;                    ///< empty: standard output
    std::optional<OutputFormat> format; ///< default depends on the command
    double tol = 1e-12;
    std::size_t samples = 20000;        ///< collinear scan resolution

    // integrate
    double x0 = 0.0;
    double y0 = 0.0;
    double vx0 = 0.0;
    double vy0 = 0.0;
    double tend = 100.0;
    double dt = 0.0;  ///< output spacing; 0 records every accepted step

    // zvc
    double level = 3.5;
    std::size_t grid = 512;
    Bounds bounds;

    // mu-crit
    std::vector<int> k{1, 2, 3, 4, 5};

    // tables
    std::string table = "all";

    // sweep
    SweepAxes sweep;
    std::size_t threads = 0;  ///< 0: hardware concurrency

    OutputFormat effective_format() const;

    bool operator==(const RunConfig&) const = default;
};

/// Applies one key/value pair; keys are the long flag names without "--".
/// Throws UsageError for unknown keys or malformed values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// All keys accepted by apply_setting.
const std::vector<std::string>& setting_keys();

/// Flat "key = value" text, one setting per line, '#' starts a comment.
RunConfig parse_config_text(std::string_view text, RunConfig base = {});

/// Inverse of parse_config_text; every setting is written, with values in
/// shortest round-trip form.
std::string to_config_text(const RunConfig& config);

/// "1,2,3", a range "1..5", or a mix.
std::vector<int> parse_int_list(std::string_view s);

/// "0,0.02,0.04" or "start:stop:step" (inclusive of stop), or a mix.
std::vector<double> parse_real_list(std::string_view s);

/// Checks cross-field invariants (one command, non-empty sweep axes, ...).
void validate(const RunConfig& config);

}  // namespace chermnykh
