#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace chermnykh {

/// Input outside the model's domain: invalid parameters, singular positions,
/// or a configuration with no solution of the requested kind.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when an iterative method fails to converge.  The trace holds the
/// residual (or other monitored quantity) per iteration.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, std::vector<double> trace = {})
        : std::runtime_error(what), trace_(std::move(trace)) {}

    const std::vector<double>& trace() const noexcept { return trace_; }

private:
    std::vector<double> trace_;
};

}  // namespace chermnykh
