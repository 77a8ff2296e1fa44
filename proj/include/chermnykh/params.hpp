#pragma once

#include <cmath>

namespace chermnykh {

/// Raw parameter values.  Defaults are the numerics used throughout the
/// reference tables: mu = 0.025, r_c = 0.8, T = 0.01, unperturbed otherwise.
struct ParameterSet {
    double mu = 0.025;     ///< mass ratio m2 / (m1 + m2)
    double q1 = 1.0;       ///< mass-reduction factor of the radiating primary
    double a2 = 0.0;       ///< oblateness coefficient of the smaller primary
    double mb = 0.0;       ///< belt mass
    double t_belt = 0.01;  ///< belt shape parameter T = a + b
    double rc = 0.8;       ///< reference radius of the mean-motion belt term

    bool operator==(const ParameterSet&) const = default;
};

/// Validated, immutable parameter set with the cached mean motion.
///
/// Invariants: 0 < mu <= 1/2, q1 <= 1, a2 >= 0, mb >= 0, t_belt >= 0, rc > 0.
/// Throws DomainError on violation.
class SystemParams {
public:
    SystemParams() : SystemParams(ParameterSet{}) {}
    explicit SystemParams(const ParameterSet& values);

    double mu() const noexcept { return v_.mu; }
    double q1() const noexcept { return v_.q1; }
    double a2() const noexcept { return v_.a2; }
    double mb() const noexcept { return v_.mb; }
    double t_belt() const noexcept { return v_.t_belt; }
    double rc() const noexcept { return v_.rc; }

    /// n^2 = 1 + 3/2 A2 + 2 Mb / (rc^2 + T^2)^{3/2}
    double n2() const noexcept { return n2_; }
    double n() const noexcept { return n_; }

    /// q1 <= 0 is admitted but flagged; triangular points need q1 > 0.
    bool q1_nonpositive() const noexcept { return v_.q1 <= 0.0; }

    const ParameterSet& values() const noexcept { return v_; }

    /// Copy with a different mass ratio (used by mu scans).
    SystemParams with_mu(double mu) const;

private:
    ParameterSet v_;
    double n2_ = 1.0;
    double n_ = 1.0;
};

/// Perturbed mean motion n of the primaries.
double mean_motion(const SystemParams& p);

/// Miyamoto-Nagai belt shape.  T = a_flat + b_core in the planar reduction.
struct BeltProfile {
    double a_flat = 0.0;
    double b_core = 0.01;
    double mb = 0.0;

    double t_belt() const noexcept { return a_flat + b_core; }
};

/// Particle properties entering the radiation-pressure mass reduction (CGS).
struct RadiationInput {
    double particle_radius = 1.0;   ///< cm
    double particle_density = 1.0;  ///< g cm^-3
    double chi = 0.0;               ///< radiation-pressure efficiency
};

struct MassReduction {
    double q1 = 1.0;
    bool nonpositive = false;  ///< grain too small: radiation exceeds gravity
};

/// q1 = 1 - 5.6e-5 chi / (a rho).  Rejects a rho == 0.
MassReduction q1_from_particle(const RadiationInput& r);

/// Rotating-frame state.  Distances to the primaries are computed on demand.
struct RotState {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double vx = 0.0;
    double vy = 0.0;
};

inline double distance_to_primary1(const SystemParams& p, double x, double y) {
    return std::hypot(x + p.mu(), y);
}

inline double distance_to_primary2(const SystemParams& p, double x, double y) {
    return std::hypot(x + p.mu() - 1.0, y);
}

}  // namespace chermnykh
