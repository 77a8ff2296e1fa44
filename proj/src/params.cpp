#include "chermnykh/params.hpp"

#include <string>

#include "chermnykh/errors.hpp"

namespace chermnykh {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw DomainError("invalid parameters: " + what);
    }
}

}  // namespace

SystemParams::SystemParams(const ParameterSet& values) : v_(values) {
    require(std::isfinite(v_.mu) && v_.mu > 0.0 && v_.mu <= 0.5, "mu must lie in (0, 1/2]");
    require(std::isfinite(v_.q1) && v_.q1 <= 1.0, "q1 must be finite and <= 1");
    require(std::isfinite(v_.a2) && v_.a2 >= 0.0, "a2 must be >= 0");
    require(std::isfinite(v_.mb) && v_.mb >= 0.0, "mb must be >= 0");
    require(std::isfinite(v_.t_belt) && v_.t_belt >= 0.0, "t must be >= 0");
    require(std::isfinite(v_.rc) && v_.rc > 0.0, "rc must be > 0");

    const double s = v_.rc * v_.rc + v_.t_belt * v_.t_belt;
    n2_ = 1.0 + 1.5 * v_.a2 + 2.0 * v_.mb / (s * std::sqrt(s));
    n_ = std::sqrt(n2_);
}

SystemParams SystemParams::with_mu(double mu) const {
    ParameterSet v = v_;
    v.mu = mu;
    return SystemParams(v);
}

double mean_motion(const SystemParams& p) { return p.n(); }

MassReduction q1_from_particle(const RadiationInput& r) {
    const double a_rho = r.particle_radius * r.particle_density;
    if (!(a_rho > 0.0) || !std::isfinite(a_rho)) {
        throw DomainError("particle radius times density must be positive");
    }
    if (!(r.chi >= 0.0)) {
        throw DomainError("radiation-pressure efficiency must be >= 0");
    }
    MassReduction out;
    out.q1 = 1.0 - 5.6e-5 * r.chi / a_rho;
    out.nonpositive = out.q1 <= 0.0;
    return out;
}

}  // namespace chermnykh
