#include <doctest.h>

#include <cmath>
#include <random>

#include "chermnykh/errors.hpp"
#include "chermnykh/params.hpp"
#include "chermnykh/potential.hpp"

using namespace chermnykh;

namespace {

ParameterSet make(double mu, double q1, double a2, double mb, double t = 0.01, double rc = 0.8) {
    ParameterSet ps;
    ps.mu = mu;
    ps.q1 = q1;
    ps.a2 = a2;
    ps.mb = mb;
    ps.t_belt = t;
    ps.rc = rc;
    return ps;
}

// Written out term by term, independent of src/potential.cpp.
double omega_oracle(const ParameterSet& v, double x, double y) {
    const double n2 = 1.0 + 1.5 * v.a2 + 2.0 * v.mb / std::pow(v.rc * v.rc + v.t_belt * v.t_belt, 1.5);
    const double r1 = std::hypot(x + v.mu, y);
    const double r2 = std::hypot(x + v.mu - 1.0, y);
    return 0.5 * n2 * (x * x + y * y) + (1.0 - v.mu) * v.q1 / r1 + v.mu / r2 +
           v.mu * v.a2 / (2.0 * r2 * r2 * r2) + v.mb / std::sqrt(x * x + y * y + v.t_belt * v.t_belt);
}

// Random parameter set and a point at least 0.05 from both primaries.
struct Draw {
    ParameterSet ps;
    double x;
    double y;
};

Draw draw(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Draw d;
    d.ps = make(0.01 + 0.49 * u(rng), 0.1 + 0.9 * u(rng), 0.06 * u(rng), 0.6 * u(rng), 0.001 + 0.05 * u(rng),
                0.5 + 0.5 * u(rng));
    do {
        d.x = -2.0 + 4.0 * u(rng);
        d.y = -2.0 + 4.0 * u(rng);
    } while (std::hypot(d.x + d.ps.mu, d.y) < 0.05 || std::hypot(d.x + d.ps.mu - 1.0, d.y) < 0.05);
    return d;
}

}  // namespace

TEST_CASE("mean motion") {
    CHECK(mean_motion(SystemParams(make(0.025, 1, 0, 0))) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(SystemParams(make(0.025, 1, 0.02, 0)).n2() == doctest::Approx(1.03).epsilon(1e-15));
    const SystemParams belt(make(0.025, 1, 0, 0.2, 0.01, 0.8));
    CHECK(std::abs(belt.n2() - 1.781067) < 1e-6);
    CHECK(belt.n2() == doctest::Approx(1.0 + 0.4 / std::pow(0.6401, 1.5)).epsilon(1e-14));
    CHECK(belt.n() * belt.n() == doctest::Approx(belt.n2()).epsilon(1e-15));
}

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SystemParams(make(0.0, 1, 0, 0)), DomainError);
    CHECK_THROWS_AS(SystemParams(make(0.5000001, 1, 0, 0)), DomainError);
    CHECK_NOTHROW(SystemParams(make(0.5, 1, 0, 0)));
    CHECK_THROWS_AS(SystemParams(make(0.025, 1.01, 0, 0)), DomainError);
    CHECK_NOTHROW(SystemParams(make(0.025, -0.5, 0, 0)));
    CHECK_THROWS_AS(SystemParams(make(0.025, 1, -0.01, 0)), DomainError);
    CHECK_THROWS_AS(SystemParams(make(0.025, 1, 0, -0.1)), DomainError);
    CHECK_THROWS_AS(SystemParams(make(0.025, 1, 0, 0, -0.01)), DomainError);
    CHECK_THROWS_AS(SystemParams(make(0.025, 1, 0, 0, 0.01, 0.0)), DomainError);
    CHECK_THROWS_AS(SystemParams(make(std::nan(""), 1, 0, 0)), DomainError);
}

TEST_CASE("mass reduction from particle properties") {
    CHECK(q1_from_particle({1.0, 1.0, 0.0}).q1 == 1.0);
    CHECK(q1_from_particle({5.6e-4, 1.0, 1.0}).q1 == doctest::Approx(0.9).epsilon(1e-14));
    const MassReduction edge = q1_from_particle({5.6e-5, 1.0, 1.0});
    CHECK(std::abs(edge.q1) < 1e-14);
    CHECK(edge.nonpositive);
    CHECK_FALSE(q1_from_particle({1.0, 1.0, 1.0}).nonpositive);
    CHECK_THROWS_AS(q1_from_particle({0.0, 1.0, 1.0}), DomainError);
    CHECK_THROWS_AS(q1_from_particle({1.0, 1.0, -1.0}), DomainError);
}

TEST_CASE("belt potential") {
    CHECK(belt_potential({0.0, 0.0, 1.0}, 1.0, 0.0) == doctest::Approx(-1.0));
    const BeltProfile prof{0.004, 0.006, 0.3};
    for (double r : {0.0, 0.3, 1.7}) {
        CHECK(belt_potential(prof, r, 0.0) == doctest::Approx(-0.3 / std::sqrt(r * r + 0.01 * 0.01)).epsilon(1e-14));
    }
    CHECK(belt_potential({0.01, 0.02, 0.0}, 0.5, 0.2) == 0.0);
    CHECK_THROWS_AS(belt_potential({0.0, 0.0, 1.0}, 0.0, 0.0), DomainError);
    CHECK(prof.t_belt() == doctest::Approx(0.01));
}

TEST_CASE("belt density") {
    const double b = 0.05;
    CHECK(belt_density({0.0, b, 0.7}, 0.0, 0.0) == doctest::Approx(3.0 * 0.7 / (b * b * b)).epsilon(1e-13));
    CHECK(belt_density({0.02, 0.05, 0.0}, 0.3, 0.1) == 0.0);
    // mpmath evaluation of the expression, 30 digits
    CHECK(belt_density({0.05, 0.05, 1.0}, 0.5, 0.1) == doctest::Approx(0.464893462004341039).epsilon(1e-13));
    CHECK_THROWS_AS(belt_density({0.05, 0.0, 1.0}, 0.5, 0.0), DomainError);
}

TEST_CASE("omega against a term-by-term oracle") {
    const ParameterSet ps = make(0.025, 0.75, 0.02, 0.2);
    // mpmath, 30 digits
    CHECK(omega(SystemParams(ps), 0.3, 0.4) == doctest::Approx(2.07751701201282776).epsilon(1e-14));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        const Draw d = draw(rng);
        CHECK(omega(SystemParams(d.ps), d.x, d.y) == doctest::Approx(omega_oracle(d.ps, d.x, d.y)).epsilon(1e-13));
    }
}

TEST_CASE("omega reduces to the unperturbed potential") {
    const SystemParams p(make(0.1, 1, 0, 0));
    const double x = 0.2;
    const double y = -0.7;
    const double r1 = std::hypot(x + 0.1, y);
    const double r2 = std::hypot(x - 0.9, y);
    CHECK(omega(p, x, y) == doctest::Approx(0.5 * (x * x + y * y) + 0.9 / r1 + 0.1 / r2).epsilon(1e-15));
}

TEST_CASE("omega is even in y") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        const Draw d = draw(rng);
        const SystemParams p(d.ps);
        CHECK(omega(p, d.x, d.y) == omega(p, d.x, -d.y));
        const Gradient g1 = omega_grad(p, d.x, d.y);
        const Gradient g2 = omega_grad(p, d.x, -d.y);
        CHECK(g1.x == g2.x);
        CHECK(g1.y == -g2.y);
    }
}

TEST_CASE("gradient and Hessian match finite differences") {
    std::mt19937_64 rng(2024);
    int worst_grad = 0;
    int worst_hess = 0;
    for (int i = 0; i < 1000; ++i) {
        const Draw d = draw(rng);
        const SystemParams p(d.ps);
        const double h = 1e-5;
        const Gradient g = omega_grad(p, d.x, d.y);
        const double fx = (omega_oracle(d.ps, d.x + h, d.y) - omega_oracle(d.ps, d.x - h, d.y)) / (2 * h);
        const double fy = (omega_oracle(d.ps, d.x, d.y + h) - omega_oracle(d.ps, d.x, d.y - h)) / (2 * h);
        const double gscale = std::max({std::abs(fx), std::abs(fy), 1.0});
        if (std::abs(g.x - fx) > 1e-6 * gscale || std::abs(g.y - fy) > 1e-6 * gscale) {
            ++worst_grad;
        }

        const Hessian H = omega_hessian(p, d.x, d.y);
        const Gradient gxp = omega_grad(p, d.x + h, d.y);
        const Gradient gxm = omega_grad(p, d.x - h, d.y);
        const Gradient gyp = omega_grad(p, d.x, d.y + h);
        const Gradient gym = omega_grad(p, d.x, d.y - h);
        const double hxx = (gxp.x - gxm.x) / (2 * h);
        const double hxy = (gxp.y - gxm.y) / (2 * h);
        const double hyx = (gyp.x - gym.x) / (2 * h);
        const double hyy = (gyp.y - gym.y) / (2 * h);
        const double hscale = std::max({std::abs(hxx), std::abs(hyy), std::abs(hxy), 1.0});
        if (std::abs(H.xx - hxx) > 1e-5 * hscale || std::abs(H.yy - hyy) > 1e-5 * hscale ||
            std::abs(H.xy - hxy) > 1e-5 * hscale || std::abs(H.xy - hyx) > 1e-5 * hscale) {
            ++worst_hess;
        }
    }
    CHECK(worst_grad == 0);
    CHECK(worst_hess == 0);
}

TEST_CASE("omega rejects the primaries") {
    const SystemParams p(make(0.025, 1, 0, 0));
    CHECK_THROWS_AS(omega(p, -0.025, 0.0), DomainError);
    CHECK_THROWS_AS(omega_grad(p, 0.975, 0.0), DomainError);
}

TEST_CASE("Jacobi constant") {
    const SystemParams p(make(0.025, 0.9, 0.01, 0.1));
    const RotState s{0.0, 0.3, 0.5, 0.1, -0.2};
    CHECK(jacobi_constant(p, s) == doctest::Approx(2.0 * omega(p, 0.3, 0.5) - 0.05).epsilon(1e-15));
    // C = 3 - mu (1 - mu) at classical L4 at rest
    const SystemParams c(make(0.025, 1, 0, 0));
    CHECK(jacobi_constant(c, {0.0, 0.475, std::sqrt(3.0) / 2, 0, 0}) == doctest::Approx(2.975625).epsilon(1e-14));
}
