#include "chermnykh/potential.hpp"

#include <cmath>

#include "chermnykh/errors.hpp"

namespace chermnykh {

namespace {

struct Geometry {
    double dx1, dx2, y;
    double r1, r2;
    double s;  // x^2 + y^2 + T^2
};

Geometry geometry(const SystemParams& p, double x, double y) {
    if (!std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("non-finite position");
    }
    Geometry g;
    g.dx1 = x + p.mu();
    g.dx2 = x + p.mu() - 1.0;
    g.y = y;
    g.r1 = std::hypot(g.dx1, y);
    g.r2 = std::hypot(g.dx2, y);
    if (g.r1 < kSingularRadius) {
        throw DomainError("position coincides with primary 1 (radiating, at x = -mu)");
    }
    if (g.r2 < kSingularRadius) {
        throw DomainError("position coincides with primary 2 (oblate, at x = 1 - mu)");
    }
    g.s = x * x + y * y + p.t_belt() * p.t_belt();
    if (p.mb() > 0.0 && g.s <= 0.0) {
        throw DomainError("belt potential is singular at the origin when T = 0");
    }
    return g;
}

}  // namespace

double omega(const SystemParams& p, double x, double y) {
    const Geometry g = geometry(p, x, y);
    const double mu = p.mu();
    double value = 0.5 * p.n2() * (x * x + y * y) + (1.0 - mu) * p.q1() / g.r1 + mu / g.r2 +
                   0.5 * mu * p.a2() / (g.r2 * g.r2 * g.r2);
    if (p.mb() > 0.0) {
        value += p.mb() / std::sqrt(g.s);
    }
    return value;
}

Gradient omega_grad(const SystemParams& p, double x, double y) {
    const Geometry g = geometry(p, x, y);
    const double mu = p.mu();
    const double r1_3 = g.r1 * g.r1 * g.r1;
    const double r2_2 = g.r2 * g.r2;
    const double r2_3 = r2_2 * g.r2;
    const double r2_5 = r2_3 * r2_2;

    // Common radial factor of every centre-of-force term.
    const double k1 = (1.0 - mu) * p.q1() / r1_3;
    const double k2 = mu / r2_3 + 1.5 * mu * p.a2() / r2_5;
    const double kb = p.mb() > 0.0 ? p.mb() / (g.s * std::sqrt(g.s)) : 0.0;

    Gradient out;
    out.x = p.n2() * x - k1 * g.dx1 - k2 * g.dx2 - kb * x;
    out.y = (p.n2() - k1 - k2 - kb) * y;
    return out;
}

Hessian omega_hessian(const SystemParams& p, double x, double y) {
    const Geometry g = geometry(p, x, y);
    const double mu = p.mu();
    Hessian h{p.n2(), 0.0, p.n2()};

    // k / r  ->  k (3 u u^T / r^5 - I / r^3)
    auto add_inverse_r = [&](double k, double dx, double dy, double r) {
        const double r2 = r * r;
        const double r3 = r2 * r;
        const double r5 = r3 * r2;
        h.xx += k * (3.0 * dx * dx / r5 - 1.0 / r3);
        h.xy += k * 3.0 * dx * dy / r5;
        h.yy += k * (3.0 * dy * dy / r5 - 1.0 / r3);
    };

    add_inverse_r((1.0 - mu) * p.q1(), g.dx1, y, g.r1);
    add_inverse_r(mu, g.dx2, y, g.r2);

    // c / r2^3  ->  c (15 u u^T / r^7 - 3 I / r^5)
    if (p.a2() != 0.0) {
        const double c = 0.5 * mu * p.a2();
        const double r2 = g.r2 * g.r2;
        const double r5 = r2 * r2 * g.r2;
        const double r7 = r5 * r2;
        h.xx += c * (15.0 * g.dx2 * g.dx2 / r7 - 3.0 / r5);
        h.xy += c * 15.0 * g.dx2 * y / r7;
        h.yy += c * (15.0 * y * y / r7 - 3.0 / r5);
    }

    // Mb s^{-1/2}
    if (p.mb() > 0.0) {
        const double s32 = g.s * std::sqrt(g.s);
        const double s52 = s32 * g.s;
        h.xx += p.mb() * (3.0 * x * x / s52 - 1.0 / s32);
        h.xy += p.mb() * 3.0 * x * y / s52;
        h.yy += p.mb() * (3.0 * y * y / s52 - 1.0 / s32);
    }
    return h;
}

double jacobi_constant(const SystemParams& p, const RotState& s) {
    return 2.0 * omega(p, s.x, s.y) - s.vx * s.vx - s.vy * s.vy;
}

double belt_potential(const BeltProfile& profile, double r, double z) {
    if (!std::isfinite(r) || !std::isfinite(z)) {
        throw DomainError("non-finite belt coordinate");
    }
    if (profile.mb == 0.0) {
        return 0.0;
    }
    const double inner = profile.a_flat + std::sqrt(z * z + profile.b_core * profile.b_core);
    const double denom = std::sqrt(r * r + inner * inner);
    if (denom == 0.0) {
        throw DomainError("belt potential is singular at r = z = 0 with a = b = 0");
    }
    return -profile.mb / denom;
}

double belt_density(const BeltProfile& profile, double r, double z) {
    if (!(profile.b_core > 0.0)) {
        throw DomainError("belt density requires a positive core parameter b");
    }
    const double a = profile.a_flat;
    const double b = profile.b_core;
    const double n = std::sqrt(z * z + b * b);
    const double an = a + n;
    const double outer = r * r + an * an;
    const double numer = b * b * profile.mb * (a * r * r + (a + 3.0 * n)) * an * an;
    return numer / (n * n * n * std::pow(outer, 2.5));
}

}  // namespace chermnykh
