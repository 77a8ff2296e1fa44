#include "chermnykh/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chermnykh/errors.hpp"
#include "chermnykh/potential.hpp"
#include "chermnykh/roots.hpp"

namespace chermnykh {

std::string_view to_string(PointKind kind) {
    switch (kind) {
        case PointKind::L1: return "L1";
        case PointKind::L2: return "L2";
        case PointKind::L3: return "L3";
        case PointKind::Xb1: return "Xb1";
        case PointKind::Xb2: return "Xb2";
        case PointKind::L4: return "L4";
        case PointKind::L5: return "L5";
    }
    return "?";
}

double equilibrium_residual(const SystemParams& p, double x, double y) {
    const Gradient g = omega_grad(p, x, y);
    return std::max(std::abs(g.x), std::abs(g.y));
}

double collinear_f(const SystemParams& p, double x) {
    const double mu = p.mu();
    const double d1 = x + mu;
    const double d2 = x + mu - 1.0;
    if (std::abs(d1) < kSingularRadius) {
        throw DomainError("collinear_f: x coincides with primary 1");
    }
    if (std::abs(d2) < kSingularRadius) {
        throw DomainError("collinear_f: x coincides with primary 2");
    }
    const double t1 = (1.0 - mu) * p.q1() / (d1 * d1);
    const double d2sq = d2 * d2;
    const double t2 = mu / d2sq + 1.5 * mu * p.a2() / (d2sq * d2sq);

    double pval = p.n2() * x;
    if (x < -mu) {
        pval += t1 + t2;
    } else if (x > 1.0 - mu) {
        pval -= t1 + t2;
    } else {
        pval += -t1 + t2;
    }

    double qval = 0.0;
    if (p.mb() > 0.0) {
        const double s = x * x + p.t_belt() * p.t_belt();
        if (s <= 0.0) {
            throw DomainError("collinear_f: belt term singular at x = 0 with T = 0");
        }
        qval = -p.mb() * x / (s * std::sqrt(s));
    }
    return pval + qval;
}

namespace {

std::vector<ScanInterval> scan_intervals(const SystemParams& p) {
    const double mu = p.mu();
    const double lo_mid = -mu + kPrimaryGap;
    const double hi_mid = 1.0 - mu - kPrimaryGap;

    std::vector<double> cuts{lo_mid};
    const double t_cut = -p.t_belt() / std::sqrt(2.0);
    if (t_cut > lo_mid && t_cut < 0.0) {
        cuts.push_back(t_cut);
    }
    cuts.push_back(0.0);
    cuts.push_back(hi_mid);

    std::vector<ScanInterval> out;
    out.push_back({-kCollinearScanBound, -mu - kPrimaryGap});
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        out.push_back({cuts[i], cuts[i + 1]});
    }
    out.push_back({1.0 - mu + kPrimaryGap, kCollinearScanBound});
    return out;
}

// Sign-change brackets of f on a uniform grid over [lo, hi].
void bracket_interval(const SystemParams& p, const ScanInterval& iv, std::size_t samples,
                      std::vector<Bracket>& out) {
    const double step = (iv.hi - iv.lo) / static_cast<double>(samples - 1);
    double prev_x = iv.lo;
    double prev_f = collinear_f(p, prev_x);
    if (prev_f == 0.0) {
        out.push_back({prev_x, prev_x});
    }
    for (std::size_t i = 1; i < samples; ++i) {
        const double x = i + 1 == samples ? iv.hi : iv.lo + step * static_cast<double>(i);
        const double f = collinear_f(p, x);
        if (f == 0.0) {
            out.push_back({x, x});
        } else if (prev_f != 0.0 && std::signbit(f) != std::signbit(prev_f)) {
            out.push_back({prev_x, x});
        }
        prev_x = x;
        prev_f = f;
    }
}

std::vector<Bracket> bracket_all(const SystemParams& p, const std::vector<ScanInterval>& ivs,
                                 std::size_t samples) {
    std::vector<Bracket> out;
    for (const auto& iv : ivs) {
        std::vector<Bracket> local;
        bracket_interval(p, iv, samples, local);
        // A root sitting exactly on a shared cut is reported by both neighbours.
        for (const auto& b : local) {
            if (out.empty() || !(b.lo == b.hi && out.back().lo == b.lo && out.back().hi == b.hi)) {
                out.push_back(b);
            }
        }
    }
    return out;
}

EquilibriumPoint make_point(const SystemParams& p, PointKind kind, double x, double y) {
    EquilibriumPoint e;
    e.kind = kind;
    e.x = x;
    e.y = y;
    e.r1 = distance_to_primary1(p, x, y);
    e.r2 = distance_to_primary2(p, x, y);
    e.residual = equilibrium_residual(p, x, y);
    return e;
}

}  // namespace

CollinearScan scan_collinear(const SystemParams& p, std::size_t samples) {
    if (samples < 1000) {
        throw DomainError("collinear scan needs at least 1000 samples per interval");
    }
    CollinearScan scan;
    scan.intervals = scan_intervals(p);
    scan.samples = samples;
    scan.brackets = bracket_all(p, scan.intervals, samples);

    const auto finer = bracket_all(p, scan.intervals, 2 * samples - 1);
    if (finer.size() != scan.brackets.size()) {
        throw ConvergenceError("collinear scan found " + std::to_string(scan.brackets.size()) +
                               " sign changes at " + std::to_string(samples) + " samples but " +
                               std::to_string(finer.size()) + " at double resolution; increase samples");
    }
    return scan;
}

std::vector<EquilibriumPoint> find_collinear(const SystemParams& p, std::size_t samples) {
    const CollinearScan scan = scan_collinear(p, samples);
    const double mu = p.mu();
    auto f = [&p](double x) { return collinear_f(p, x); };

    std::vector<double> roots;
    roots.reserve(scan.brackets.size());
    for (const auto& b : scan.brackets) {
        roots.push_back(b.lo == b.hi ? b.lo : bisect(f, b.lo, b.hi, f(b.lo)));
    }
    std::sort(roots.begin(), roots.end());

    // Between the primaries the rightmost root is L1 (it can sit at x < 0 when
    // primary 1 is weak); any two further roots are the belt pair.
    std::vector<double> left, between, right;
    for (double x : roots) {
        if (x < -mu) {
            left.push_back(x);
        } else if (x > 1.0 - mu) {
            right.push_back(x);
        } else {
            between.push_back(x);
        }
    }
    // With q1 <= 0 primary 1 no longer attracts and L1/L3 may be absent.
    const bool strict = p.q1() > 0.0;
    const bool ok = strict ? (left.size() == 1 && right.size() == 1 && (between.size() == 1 || between.size() == 3))
                           : (left.size() <= 1 && right.size() <= 1 && between.size() <= 3);
    if (!ok) {
        throw ConvergenceError("unexpected collinear root structure: " + std::to_string(left.size()) +
                               " left of primary 1, " + std::to_string(between.size()) +
                               " between the primaries, " + std::to_string(right.size()) + " right of primary 2");
    }

    std::vector<EquilibriumPoint> out;
    if (!left.empty()) {
        out.push_back(make_point(p, PointKind::L3, left.front(), 0.0));
    }
    if (between.size() == 3) {
        out.push_back(make_point(p, PointKind::Xb2, between[0], 0.0));
        out.push_back(make_point(p, PointKind::Xb1, between[1], 0.0));
    } else if (between.size() == 2) {
        const bool outer_half = between[0] < -p.t_belt() / std::sqrt(2.0);
        out.push_back(make_point(p, outer_half ? PointKind::Xb2 : PointKind::Xb1, between[0], 0.0));
    }
    if (!between.empty()) {
        out.push_back(make_point(p, PointKind::L1, between.back(), 0.0));
    }
    if (!right.empty()) {
        out.push_back(make_point(p, PointKind::L2, right.front(), 0.0));
    }

    for (const auto& e : out) {
        if (e.residual > kEquilibriumTolerance) {
            throw ConvergenceError(std::string("collinear point ") + std::string(to_string(e.kind)) +
                                       " residual exceeds tolerance after bisection",
                                   {e.residual});
        }
    }
    return out;
}

InnerPointCondition inner_point_condition(const SystemParams& p) {
    InnerPointCondition out;
    out.t_below_sqrt2_mu = p.t_belt() < std::sqrt(2.0) * p.mu();
    out.p_plus_q = collinear_f(p, -p.t_belt() / std::sqrt(2.0));
    return out;
}

TriangularRadii triangular_radii(const SystemParams& p) {
    if (!(p.q1() > 0.0)) {
        throw DomainError("triangular points require q1 > 0");
    }
    const double mu = p.mu();
    const double s = p.rc() * p.rc() + p.t_belt() * p.t_belt();
    const double belt = (1.0 - 2.0 * p.rc()) * p.mb() / (3.0 * s * std::sqrt(s));
    TriangularRadii r;
    r.r1 = std::cbrt(p.q1()) * (1.0 - 0.5 * p.a2() + belt * (1.0 - 1.5 * mu * p.a2() / (1.0 - mu)));
    r.r2 = 1.0 + mu * belt;
    return r;
}

std::pair<EquilibriumPoint, EquilibriumPoint> triangular_analytic(const SystemParams& p) {
    const TriangularRadii r = triangular_radii(p);
    // Intersection of |P - P1| = r1 and |P - P2| = r2, primaries unit distance apart.
    const double along = 0.5 * (1.0 + r.r1 * r.r1 - r.r2 * r.r2);
    const double y2 = r.r1 * r.r1 - along * along;
    if (!(y2 > 0.0)) {
        throw DomainError("no triangular points for these parameters");
    }
    const double x = along - p.mu();
    const double y = std::sqrt(y2);
    return {make_point(p, PointKind::L4, x, y), make_point(p, PointKind::L5, x, -y)};
}

double triangular_y_closed_form(const SystemParams& p) {
    const double mu = p.mu();
    const double a2 = p.a2();
    const double q23 = std::cbrt(p.q1() * p.q1());
    const double s = p.rc() * p.rc() + p.t_belt() * p.t_belt();
    const double belt = 4.0 * (2.0 * p.rc() - 1.0) * p.mb() *
                        ((q23 - 3.0) - 3.0 * mu * a2 * (q23 - 3.0) / (2.0 * (1.0 - mu))) /
                        (3.0 * s * std::sqrt(s));
    const double radicand = (4.0 - q23) + 2.0 * (q23 - 2.0) * a2 + belt;
    if (radicand < 0.0) {
        throw DomainError("closed-form triangular ordinate has a negative radicand");
    }
    return 0.5 * q23 * std::sqrt(radicand);
}

EquilibriumPoint refine_equilibrium(const SystemParams& p, double x, double y, PointKind kind,
                                    NewtonTrace* trace) {
    constexpr int kMaxIterations = 50;
    constexpr double kResidualStop = 1e-13;
    constexpr double kStepStop = 1e-15;
    constexpr double kMinDet = 1e-14;

    if (is_collinear(kind)) {
        y = 0.0;
    }
    std::vector<double> history;
    double res = equilibrium_residual(p, x, y);
    history.push_back(res);

    int it = 0;
    while (res > kResidualStop) {
        if (it == kMaxIterations) {
            throw ConvergenceError("Newton refinement did not converge in 50 iterations", history);
        }
        const Gradient g = omega_grad(p, x, y);
        const Hessian h = omega_hessian(p, x, y);
        const double det = h.det();
        if (std::abs(det) < kMinDet) {
            throw ConvergenceError("degenerate Hessian during Newton refinement", history);
        }
        const double dx = -(h.yy * g.x - h.xy * g.y) / det;
        const double dy = -(-h.xy * g.x + h.xx * g.y) / det;
        x += dx;
        y += dy;
        ++it;
        res = equilibrium_residual(p, x, y);
        history.push_back(res);
        if (!std::isfinite(res)) {
            throw ConvergenceError("Newton refinement diverged", history);
        }
        if (it <= 3 && res > history[history.size() - 2]) {
            throw ConvergenceError("guess outside the Newton basin (residual grew)", history);
        }
        if (std::hypot(dx, dy) <= kStepStop) {
            break;
        }
    }
    if (res > kEquilibriumTolerance) {
        throw ConvergenceError("Newton refinement stalled above the residual tolerance", history);
    }
    if (kind == PointKind::L4 && !(y > 0.0)) {
        throw ConvergenceError("refinement of L4 left the upper half-plane", history);
    }
    if (kind == PointKind::L5 && !(y < 0.0)) {
        throw ConvergenceError("refinement of L5 left the lower half-plane", history);
    }
    if (trace != nullptr) {
        trace->iterations = it;
        trace->residuals = std::move(history);
    }
    return make_point(p, kind, x, y);
}

std::pair<EquilibriumPoint, EquilibriumPoint> find_triangular(const SystemParams& p) {
    auto mirror = [&p](const EquilibriumPoint& l4) {
        EquilibriumPoint l5 = l4;
        l5.kind = PointKind::L5;
        l5.y = -l4.y;
        return l5;
    };

    const EquilibriumPoint guess = triangular_analytic(p).first;
    try {
        const EquilibriumPoint l4 = refine_equilibrium(p, guess.x, guess.y, PointKind::L4);
        return {l4, mirror(l4)};
    } catch (const ConvergenceError&) {
        if (!(p.mb() > 0.0)) {
            throw;
        }
    }

    // Continuation in belt mass from the belt-free configuration.
    ParameterSet v = p.values();
    const double target = v.mb;
    v.mb = 0.0;
    const EquilibriumPoint start = triangular_analytic(SystemParams(v)).first;
    double x = start.x;
    double y = start.y;
    constexpr int kSteps = 64;
    for (int i = 0; i <= kSteps; ++i) {
        v.mb = target * static_cast<double>(i) / kSteps;
        const EquilibriumPoint e = refine_equilibrium(SystemParams(v), x, y, PointKind::L4);
        x = e.x;
        y = e.y;
    }
    const EquilibriumPoint l4 = refine_equilibrium(p, x, y, PointKind::L4);
    return {l4, mirror(l4)};
}

std::vector<EquilibriumPoint> find_all(const SystemParams& p, std::size_t samples) {
    std::vector<EquilibriumPoint> out = find_collinear(p, samples);
    if (p.q1() > 0.0) {
        try {
            const auto [l4, l5] = find_triangular(p);
            out.push_back(l4);
            out.push_back(l5);
        } catch (const DomainError&) {
            // no triangular pair for these parameters
        }
    }
    return out;
}

}  // namespace chermnykh
