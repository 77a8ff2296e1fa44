// Command-line front end.  Flags override config-file values, which override
// the built-in defaults.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chermnykh/commands.hpp"
#include "chermnykh/config.hpp"

namespace {

using chermnykh::Command;

struct Flag {
    std::string key;
    std::string help;
};

const std::vector<Flag> kCommonFlags{
    {"mu", "mass ratio (0, 1/2]"},
    {"q1", "mass-reduction factor of primary 1"},
    {"a2", "oblateness coefficient of primary 2"},
    {"mb", "belt mass"},
    {"t", "belt shape parameter T = a + b"},
    {"rc", "reference radius of the belt correction to n"},
    {"out", "output file (default: standard output)"},
    {"format", "csv or json"},
    {"tol", "integrator tolerance"},
    {"samples", "collinear scan resolution per interval"},
};

const std::map<Command, std::vector<Flag>> kCommandFlags{
    {Command::Equilibria, {}},
    {Command::Stability, {}},
    {Command::Zvc,
     {{"C", "Jacobi level"},
      {"grid", "grid nodes per axis"},
      {"xmin", "grid bound"},
      {"xmax", "grid bound"},
      {"ymin", "grid bound"},
      {"ymax", "grid bound"}}},
    {Command::MuCrit, {{"k", "resonance orders, e.g. 1..5 or 1,3"}}},
    {Command::Integrate,
     {{"x0", "initial x"},
      {"y0", "initial y"},
      {"vx0", "initial x velocity"},
      {"vy0", "initial y velocity"},
      {"tend", "final time"},
      {"dt", "output spacing (0: every accepted step)"}}},
    {Command::Tables, {{"table", "table1, table2 or all"}}},
    {Command::Sweep,
     {{"sweep-mu", "mu values: list a,b,c or range start:stop:step"},
      {"sweep-q1", "q1 values"},
      {"sweep-a2", "A2 values"},
      {"sweep-mb", "Mb values"},
      {"threads", "worker threads (0: all cores)"}}},
};

const std::map<Command, std::string> kDescriptions{
    {Command::Equilibria, "locate collinear, belt-induced and triangular equilibria"},
    {Command::Stability, "linear stability of every equilibrium"},
    {Command::Zvc, "zero-velocity curves 2 Omega = C as polylines"},
    {Command::MuCrit, "critical mass ratios for the omega1 = k omega2 resonances"},
    {Command::Integrate, "integrate one trajectory in the rotating frame"},
    {Command::Tables, "recompute the reference tables next to their reference values"},
    {Command::Sweep, "equilibria and stability over a parameter grid"},
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw chermnykh::UsageError("cannot read config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Equilibria, stability and dynamics of the generalized photogravitational Chermnykh problem"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "help for every subcommand");

    std::string config_path;
    std::map<std::string, std::string> values;
    std::map<Command, std::vector<std::pair<std::string, CLI::Option*>>> options;
    std::map<Command, CLI::App*> subs;

    for (const auto& [cmd, extra] : kCommandFlags) {
        CLI::App* sub = app.add_subcommand(std::string(chermnykh::to_string(cmd)), kDescriptions.at(cmd));
        sub->add_option("--config", config_path, "flat key = value config file");
        for (const auto* list : {&kCommonFlags, &extra}) {
            for (const Flag& f : *list) {
                options[cmd].emplace_back(f.key, sub->add_option("--" + f.key, values[f.key], f.help));
            }
        }
        subs[cmd] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return chermnykh::exit_code::kUsage;
    }

    chermnykh::RunConfig config;
    try {
        if (!config_path.empty()) {
            config = chermnykh::parse_config_text(read_file(config_path), config);
        }
        for (const auto& [cmd, sub] : subs) {
            if (!sub->parsed()) {
                continue;
            }
            config.command = cmd;
            for (const auto& [key, opt] : options[cmd]) {
                if (opt->count() > 0) {
                    chermnykh::apply_setting(config, key, values[key]);
                }
            }
        }
    } catch (const chermnykh::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n" << app.help();
        return chermnykh::exit_code::kUsage;
    }
    return chermnykh::run(config, std::cout, std::cerr);
}
