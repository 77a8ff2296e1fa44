// Acceptance checks: one PASS/FAIL line per criterion.  Exit status is the
// number of failed criteria.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "chermnykh/contours.hpp"
#include "chermnykh/dynamics.hpp"
#include "chermnykh/equilibria.hpp"
#include "chermnykh/errors.hpp"
#include "chermnykh/potential.hpp"
#include "chermnykh/stability.hpp"

using namespace chermnykh;

namespace {

ParameterSet make(double mu, double q1, double a2, double mb) {
    ParameterSet ps;
    ps.mu = mu;
    ps.q1 = q1;
    ps.a2 = a2;
    ps.mb = mb;
    return ps;
}

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(secs < limit_s, "runtime " + num(secs) + " s over " + num(limit_s) + " s");
    std::printf("%s %d %s (%.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name, secs, o.detail.empty() ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
    failures += o.ok ? 0 : 1;
}

// independent potential for the derivative oracle
double omega_ref(const ParameterSet& v, double x, double y) {
    const double n2 = 1.0 + 1.5 * v.a2 + 2.0 * v.mb / std::pow(v.rc * v.rc + v.t_belt * v.t_belt, 1.5);
    const double r1 = std::sqrt((x + v.mu) * (x + v.mu) + y * y);
    const double r2 = std::sqrt((x + v.mu - 1.0) * (x + v.mu - 1.0) + y * y);
    return 0.5 * n2 * (x * x + y * y) + (1.0 - v.mu) * v.q1 / r1 + v.mu / r2 +
           v.mu * v.a2 / (2.0 * r2 * r2 * r2) + v.mb / std::sqrt(x * x + y * y + v.t_belt * v.t_belt);
}

double root_distance(const Roots4& a, const Roots4& b) {
    double worst = 0.0;
    std::array<bool, 4> used{};
    for (const auto& z : a) {
        double best = 1e300;
        int bi = 0;
        for (int j = 0; j < 4; ++j) {
            if (!used[j] && std::abs(z - b[j]) < best) {
                best = std::abs(z - b[j]);
                bi = j;
            }
        }
        used[bi] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

int main() {
    criterion(1, "Table 1 classical column", 1.0, [](Outcome& o) {
        const double q1s[] = {1.0, 0.75, 0.5, 0.25, 0.0};
        const double w1[] = {0.890141, 0.880622, 0.869076, 0.853749, 0.821584};
        const double w2[] = {0.455686, 0.47382, 0.494679, 0.520684, 0.570088};
        for (int i = 0; i < 5; ++i) {
            const StabilityReport r = triangular_stability(SystemParams(make(0.025, q1s[i], 0, 0)));
            const bool ok = r.omega1 && r.omega2 && std::abs(*r.omega1 - w1[i]) <= 5e-5 &&
                            std::abs(*r.omega2 - w2[i]) <= 5e-5;
            o.require(ok, "q1=" + num(q1s[i]) + " gives (" + num(r.omega1.value_or(NAN)) + ", " +
                              num(r.omega2.value_or(NAN)) + ")");
        }
    });

    criterion(2, "Routh boundary", 1.0, [](Outcome& o) {
        const double mu = routh_boundary(make(0.025, 1, 0, 0));
        o.require(std::abs(mu - 0.0385201) <= 1e-6, "boundary at " + num(mu));
    });

    criterion(3, "Table 2 classical column", 1.0, [](Outcome& o) {
        const double reference[] = {0.0385209, 0.0242939, 0.013516, 0.00827037, 0.0055092};
        for (int k = 1; k <= 5; ++k) {
            const double mu = critical_mass_exact(make(0.025, 1, 0, 0), k).mu;
            const double kk = static_cast<double>(k * k);
            const double K = kk / ((kk + 1.0) * (kk + 1.0));
            const double oracle = (1.0 - std::sqrt(1.0 - 16.0 * K / 27.0)) / 2.0;
            o.require(std::abs(mu - reference[k - 1]) <= 1e-5, "k=" + std::to_string(k) + " gives " + num(mu));
            o.require(std::abs(mu - oracle) <= 1e-10, "k=" + std::to_string(k) + " off the closed oracle");
        }
    });

    criterion(4, "linear critical-mass expansion", 5.0, [](Outcome& o) {
        const double c0[] = {0.0385208965, 0.0242938971, 0.0135160160};
        const double ca2[] = {0.0375419787, 0.0254350205, 0.0148764140};
        const double ceps[] = {-0.0089174706, -0.0055364958, -0.0030452832};
        const double cmb[] = {-0.0678734040, -0.0421398438, -0.0231785159};
        const double h = 1e-5;
        for (int k = 1; k <= 3; ++k) {
            const std::string tag = "k=" + std::to_string(k);
            o.require(critical_mass_linear(0, 0, 0, k).mu == c0[k - 1], tag + " constant term");
            const double base = critical_mass_exact(make(0.025, 1, 0, 0), k).mu;
            const double sa = (critical_mass_exact(make(0.025, 1, h, 0), k).mu - base) / h;
            const double se = (critical_mass_exact(make(0.025, 1 - h, 0, 0), k).mu - base) / h;
            const double sm = (critical_mass_exact(make(0.025, 1, 0, h), k).mu - base) / h;
            o.require(std::abs(sa / ca2[k - 1] - 1.0) <= 5e-2, tag + " A2 slope " + num(sa));
            o.require(std::abs(se / ceps[k - 1] - 1.0) <= 5e-2, tag + " eps slope " + num(se));
            o.require(std::abs(sm / cmb[k - 1] - 1.0) <= 5e-2,
                      tag + " Mb slope " + num(sm) + " vs " + num(cmb[k - 1]));
        }
    });

    criterion(5, "five collinear points", 2.0, [](Outcome& o) {
        const SystemParams belt(make(0.025, 1, 0, 0.2));
        const auto pts = find_collinear(belt);
        o.require(pts.size() == 5, "Mb=0.2 gives " + std::to_string(pts.size()) + " points");
        for (const auto& e : pts) {
            o.require(e.residual <= 1e-12, std::string(to_string(e.kind)) + " residual " + num(e.residual));
            if (e.kind == PointKind::Xb1) {
                o.require(e.x > -0.00707 && e.x < 0.0, "Xb1 at " + num(e.x));
            }
            if (e.kind == PointKind::Xb2) {
                o.require(e.x > -0.025 && e.x < -0.00707, "Xb2 at " + num(e.x));
            }
        }
        const auto plain = find_collinear(SystemParams(make(0.025, 1, 0, 0)));
        o.require(plain.size() == 3, "Mb=0 gives " + std::to_string(plain.size()) + " points");
    });

    criterion(6, "collinear instability grid", 5.0, [](Outcome& o) {
        int checked = 0;
        for (double q1 : {1.0, 0.75, 0.5}) {
            for (double a2 : {0.0, 0.02}) {
                for (double mb : {0.0, 0.2, 0.4, 0.6}) {
                    const SystemParams p(make(0.025, q1, a2, mb));
                    for (const auto& e : find_collinear(p)) {
                        ++checked;
                        const StabilityReport r = classify(p, e);
                        o.require(is_unstable(r.classification),
                                  std::string(to_string(e.kind)) + " at q1=" + num(q1) + " A2=" + num(a2) +
                                      " Mb=" + num(mb) + " is " + std::string(to_string(r.classification)));
                    }
                }
            }
        }
        o.require(checked > 0, "no points");
    });

    criterion(7, "derivative oracles", 5.0, [](Outcome& o) {
        std::mt19937_64 rng(20261015);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double h = 1e-5;
        int bad_grad = 0;
        int bad_hess = 0;
        for (int i = 0; i < 1000; ++i) {
            ParameterSet ps = make(0.01 + 0.49 * u(rng), 0.1 + 0.9 * u(rng), 0.06 * u(rng), 0.6 * u(rng));
            ps.t_belt = 0.001 + 0.05 * u(rng);
            ps.rc = 0.5 + 0.5 * u(rng);
            double x = 0.0;
            double y = 0.0;
            do {
                x = -2.0 + 4.0 * u(rng);
                y = -2.0 + 4.0 * u(rng);
            } while (std::hypot(x + ps.mu, y) < 0.05 || std::hypot(x + ps.mu - 1.0, y) < 0.05);
            const SystemParams p(ps);

            const Gradient g = omega_grad(p, x, y);
            const double fx = (omega_ref(ps, x + h, y) - omega_ref(ps, x - h, y)) / (2 * h);
            const double fy = (omega_ref(ps, x, y + h) - omega_ref(ps, x, y - h)) / (2 * h);
            const double gs = std::max({std::abs(fx), std::abs(fy), 1.0});
            bad_grad += (std::abs(g.x - fx) > 1e-6 * gs || std::abs(g.y - fy) > 1e-6 * gs) ? 1 : 0;

            const Hessian H = omega_hessian(p, x, y);
            const Gradient xp = omega_grad(p, x + h, y);
            const Gradient xm = omega_grad(p, x - h, y);
            const Gradient yp = omega_grad(p, x, y + h);
            const Gradient ym = omega_grad(p, x, y - h);
            const double hxx = (xp.x - xm.x) / (2 * h);
            const double hxy = (xp.y - xm.y) / (2 * h);
            const double hyy = (yp.y - ym.y) / (2 * h);
            const double hs = std::max({std::abs(hxx), std::abs(hyy), std::abs(hxy), 1.0});
            bad_hess += (std::abs(H.xx - hxx) > 1e-5 * hs || std::abs(H.yy - hyy) > 1e-5 * hs ||
                         std::abs(H.xy - hxy) > 1e-5 * hs)
                            ? 1
                            : 0;
        }
        o.require(bad_grad == 0, std::to_string(bad_grad) + " gradient mismatches");
        o.require(bad_hess == 0, std::to_string(bad_hess) + " Hessian mismatches");
    });

    criterion(8, "Jacobi conservation and stability probes", 10.0, [](Outcome& o) {
        const SystemParams p(make(0.025, 1, 0, 0));
        const auto [l4, l5] = find_triangular(p);
        const Trajectory tr = integrate(p, RotState{0.0, l4.x + 1e-6, l4.y, 0.0, 0.0}, 100.0, 1e-12);
        o.require(tr.status == IntegrationStatus::Completed, "L4 run did not complete");
        o.require(tr.max_drift <= 1e-9, "drift " + num(tr.max_drift));
        double excursion = 0.0;
        for (const auto& s : tr.samples) {
            excursion = std::max(excursion, std::hypot(s.x - l4.x, s.y - l4.y));
        }
        o.require(excursion < 1e-3, "L4 excursion " + num(excursion));
        EquilibriumPoint l1;
        for (const auto& e : find_collinear(p)) {
            if (e.kind == PointKind::L1) {
                l1 = e;
            }
        }
        const double away = stability_probe(p, l1, 1e-6, 50.0);
        o.require(away > 1e-2, "L1 excursion " + num(away));
    });

    criterion(9, "zero-velocity curves", 5.0, [](Outcome& o) {
        const double mu = 0.025;
        const SystemParams p(make(mu, 1, 0, 0));
        const GridSpec g{};
        const double c4 = 3.0 - mu * (1.0 - mu);
        const ContourSet low = zvc_contours(p, c4, g);
        const Hessian H = omega_hessian(p, 0.5 - mu, std::sqrt(3.0) / 2.0);
        const double cell_tol = 2.0 * g.hx() * g.hx() / 8.0 * 2.0 * std::max({H.xx, H.yy, std::abs(H.xy)});
        o.require(std::abs(low.grid_min - c4) <= cell_tol, "grid minimum " + num(low.grid_min));
        o.require(std::abs(low.grid_min_x - 0.475) <= g.hx() &&
                      std::abs(std::abs(low.grid_min_y) - 0.866) <= g.hy(),
                  "minimum at (" + num(low.grid_min_x) + ", " + num(low.grid_min_y) + ")");

        const ContourSet cs = zvc_contours(p, 3.5, g);
        std::size_t vertices = 0;
        std::size_t bad = 0;
        for (const auto& poly : cs.polylines) {
            for (const auto& v : poly.vertices) {
                ++vertices;
                bad += std::abs(2.0 * omega(p, v.x, v.y) - 3.5) > v.tolerance ? 1 : 0;
            }
        }
        o.require(vertices > 0, "no vertices at C=3.5");
        o.require(bad == 0, std::to_string(bad) + " of " + std::to_string(vertices) + " vertices off the level");
    });

    criterion(10, "cross-formula consistency", 2.0, [](Outcome& o) {
        for (double q1 : {1.0, 0.75, 0.5, 0.25}) {
            const SystemParams p(make(0.025, q1, 0, 0));
            const EquilibriumPoint l4 = find_triangular(p).first;
            const CharCoefficients a = char_coeffs(p, l4);
            const CharCoefficients b = char_coeffs_paper_triangular(p, l4);
            o.require(std::abs(a.b - b.b) <= 1e-10 * std::abs(a.b) && std::abs(a.d - b.d) <= 1e-10 * std::abs(a.d),
                      "q1=" + num(q1) + " b/d disagree");
        }
        double worst = 0.0;
        for (double q1 : {1.0, 0.75, 0.5, 0.25}) {
            for (double a2 : {0.0, 0.02, 0.04}) {
                for (double mb : {0.0, 0.2, 0.4, 0.6}) {
                    const SystemParams p(make(0.025, q1, a2, mb));
                    for (const auto& e : find_all(p)) {
                        const Roots4 ev = matrix_eigenvalues(linear_system(p, e));
                        const Roots4 cr = char_roots(char_coeffs(p, e));
                        double scale = 1.0;
                        for (const auto& z : cr) {
                            scale = std::max(scale, std::abs(z));
                        }
                        worst = std::max(worst, root_distance(ev, cr) / scale);
                    }
                }
            }
        }
        o.require(worst <= 1e-10, "eigenvalue gap " + num(worst));
    });

    std::printf("%d of 10 criteria failed\n", failures);
    return failures;
}
