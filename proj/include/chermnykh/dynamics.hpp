#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "chermnykh/equilibria.hpp"
#include "chermnykh/params.hpp"

namespace chermnykh {

enum class IntegrationStatus { Completed, CloseEncounter };

struct Trajectory {
    std::vector<RotState> samples;  ///< strictly increasing in t
    double c0 = 0.0;                ///< Jacobi constant of the initial state
    double max_drift = 0.0;         ///< max |C(t) - C0| / |C0| over accepted steps
    IntegrationStatus status = IntegrationStatus::Completed;
    std::size_t accepted_steps = 0;
    std::size_t rejected_steps = 0;
};

/// The integrator produced NaN/Inf; carries the last finite state.
class NonFiniteStateError : public std::runtime_error {
public:
    NonFiniteStateError(const std::string& what, const RotState& last_good)
        : std::runtime_error(what), last_good_(last_good) {}

    const RotState& last_good() const noexcept { return last_good_; }

private:
    RotState last_good_;
};

enum class StepperKind {
    DormandPrince45,  ///< adaptive, PI-controlled
    FixedRK4,         ///< debug mode, fixed step
};

struct IntegratorOptions {
    double tol = 1e-12;  ///< relative and absolute, in [1e-14, 1e-6]
    /// Requested output times, ascending, inside [s0.t, t_end].  When empty,
    /// every accepted step is recorded.
    std::vector<double> sample_times;
    StepperKind stepper = StepperKind::DormandPrince45;
    double initial_step = 1e-3;
    double fixed_step = 1e-3;
    std::size_t max_steps = 50'000'000;
};

/// Integrates the rotating-frame equations
///   x'' - 2 n y' = Omega_x,   y'' + 2 n x' = Omega_y
/// from s0 up to t_end > s0.t.  A step-size collapse (or a stage landing on
/// a primary) ends the run with status CloseEncounter and the partial
/// trajectory.
Trajectory integrate(const SystemParams& p, const RotState& s0, double t_end,
                     const IntegratorOptions& options);

Trajectory integrate(const SystemParams& p, const RotState& s0, double t_end, double tol = 1e-12);

/// Largest distance from e reached by a particle released at rest at
/// e + (delta, 0), integrated to t_end.  A close encounter reports +infinity.
double stability_probe(const SystemParams& p, const EquilibriumPoint& e, double delta, double t_end,
                       double tol = 1e-12);

}  // namespace chermnykh
