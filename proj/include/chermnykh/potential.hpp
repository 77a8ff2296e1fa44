#pragma once

#include "chermnykh/params.hpp"

namespace chermnykh {

struct Gradient {
    double x = 0.0;
    double y = 0.0;
};

/// Second derivatives of the effective potential; Omega_yx == Omega_xy.
struct Hessian {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;

    double trace() const noexcept { return xx + yy; }
    double det() const noexcept { return xx * yy - xy * xy; }
};

/// Positions closer than this to either primary are rejected.
inline constexpr double kSingularRadius = 1e-12;

/// Effective potential
///   Omega = n^2 (x^2+y^2)/2 + (1-mu) q1/r1 + mu/r2 + mu A2/(2 r2^3)
///           + Mb / sqrt(x^2 + y^2 + T^2).
/// With Mb = 0 this is the radiating/oblate potential without the belt.
/// Throws DomainError within kSingularRadius of a primary.
double omega(const SystemParams& p, double x, double y);

/// (Omega_x, Omega_y), the right-hand sides of the rotating-frame equations.
Gradient omega_grad(const SystemParams& p, double x, double y);

/// Analytic second derivatives of omega().
Hessian omega_hessian(const SystemParams& p, double x, double y);

/// C = 2 Omega(x, y) - vx^2 - vy^2.
double jacobi_constant(const SystemParams& p, const RotState& s);

/// Miyamoto-Nagai potential V(r, z) = -Mb / sqrt(r^2 + (a + sqrt(z^2 + b^2))^2).
double belt_potential(const BeltProfile& profile, double r, double z);

/// Density profile paired with belt_potential, evaluated exactly in the
/// grouping b^2 Mb [a r^2 + (a + 3N)] (a + N)^2 / (N^3 [r^2 + (a+N)^2]^{5/2}),
/// N = sqrt(z^2 + b^2), without a 4 pi normalisation.  Diagnostic only.
double belt_density(const BeltProfile& profile, double r, double z);

}  // namespace chermnykh
