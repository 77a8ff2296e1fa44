#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "chermnykh/config.hpp"
#include "chermnykh/output.hpp"

namespace chermnykh {

/// Output file cannot be opened or written (exit status 74).
class OutputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kDomain = 2;
inline constexpr int kConvergence = 3;
inline constexpr int kUsage = 64;
inline constexpr int kSoftware = 70;
inline constexpr int kOutput = 74;
}  // namespace exit_code

inline constexpr std::size_t kMaxSweepPoints = 10'000'000;

/// Number of grid points a sweep would visit.  Axes not given on the command
/// line contribute the single value from params.
std::size_t sweep_size(const RunConfig& config);

/// Columns of the sweep dataset, in emission order.
const std::vector<std::string>& sweep_columns();

/// Cartesian product over the (mu, q1, a2, mb) axes, mu outermost and mb
/// innermost.  Per-point failures are recorded in the status column.
Dataset sweep(const RunConfig& config);

/// Builds the dataset for config.command.  summary receives one line per
/// result.  Errors propagate as exceptions.
Dataset execute(const RunConfig& config, std::vector<std::string>* summary = nullptr);

/// execute + emission to config.out (or out when config.out is empty).
/// Summary lines and errors go to log.  Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& log);

}  // namespace chermnykh
