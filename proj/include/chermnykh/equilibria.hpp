#pragma once

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "chermnykh/params.hpp"

namespace chermnykh {

enum class PointKind { L1, L2, L3, Xb1, Xb2, L4, L5 };

std::string_view to_string(PointKind kind);

inline bool is_collinear(PointKind kind) {
    return kind != PointKind::L4 && kind != PointKind::L5;
}

struct EquilibriumPoint {
    PointKind kind = PointKind::L1;
    double x = 0.0;
    double y = 0.0;
    double r1 = 0.0;
    double r2 = 0.0;
    double residual = 0.0;  ///< max(|Omega_x|, |Omega_y|)
};

/// Residual tolerance every returned equilibrium satisfies.
inline constexpr double kEquilibriumTolerance = 1e-12;

/// max(|Omega_x|, |Omega_y|) at (x, y).
double equilibrium_residual(const SystemParams& p, double x, double y);

/// f(x, 0) = P(x) + Q(x), evaluated through the branch of P that matches the
/// side of each primary x lies on.  Equal to Omega_x(x, 0).
double collinear_f(const SystemParams& p, double x);

struct ScanInterval {
    double lo = 0.0;
    double hi = 0.0;
};

struct Bracket {
    double lo = 0.0;
    double hi = 0.0;  ///< lo == hi when a grid node hit the root exactly
};

/// Sign-change bracketing of collinear_f over the axis.  Intervals are the
/// two outer ranges and the segment between the primaries, the latter split
/// at -T/sqrt(2) and 0 when those fall inside it.
struct CollinearScan {
    std::vector<ScanInterval> intervals;
    std::size_t samples = 0;  ///< grid nodes per interval
    std::vector<Bracket> brackets;
};

inline constexpr std::size_t kDefaultCollinearSamples = 20000;
inline constexpr double kCollinearScanBound = 5.0;
inline constexpr double kPrimaryGap = 1e-9;

CollinearScan scan_collinear(const SystemParams& p, std::size_t samples = kDefaultCollinearSamples);

/// Every equilibrium on the x-axis, ordered by x.  L1..L3 always when q1 > 0;
/// Xb1/Xb2 when the belt creates the inner pair.  With q1 <= 0 any subset may
/// appear.  Throws ConvergenceError when the bracket count depends on
/// resolution ("increase samples").
std::vector<EquilibriumPoint> find_collinear(const SystemParams& p,
                                             std::size_t samples = kDefaultCollinearSamples);

struct InnerPointCondition {
    bool t_below_sqrt2_mu = false;
    double p_plus_q = 0.0;  ///< P(-T/sqrt 2) + Q(-T/sqrt 2)
};

/// Advisory existence test for the inner pair; find_collinear does not use it.
InnerPointCondition inner_point_condition(const SystemParams& p);

/// Closed-form distances to the primaries for the triangular points.
struct TriangularRadii {
    double r1 = 0.0;
    double r2 = 0.0;
};

TriangularRadii triangular_radii(const SystemParams& p);

/// L4 and L5 from the closed-form radii and exact two-circle intersection,
/// not refined.  Requires q1 > 0.
std::pair<EquilibriumPoint, EquilibriumPoint> triangular_analytic(const SystemParams& p);

/// Closed form for |y| of the triangular points.  Kept for
/// cross-checking; valid at first order for q1 = 1.
double triangular_y_closed_form(const SystemParams& p);

struct NewtonTrace {
    int iterations = 0;
    std::vector<double> residuals;
};

/// 2-D Newton on (Omega_x, Omega_y) with the analytic Hessian.  Stops when the
/// residual is <= 1e-13 or the step is <= 1e-15, at most 50 iterations.
/// Throws ConvergenceError if the residual grows during the first three
/// iterations, the Hessian determinant drops below 1e-14, or the iteration
/// does not converge.
EquilibriumPoint refine_equilibrium(const SystemParams& p, double x, double y, PointKind kind,
                                    NewtonTrace* trace = nullptr);

/// Refined L4 and its mirror L5.
std::pair<EquilibriumPoint, EquilibriumPoint> find_triangular(const SystemParams& p);

/// Collinear points followed by L4, L5 (when they exist).
std::vector<EquilibriumPoint> find_all(const SystemParams& p,
                                       std::size_t samples = kDefaultCollinearSamples);

}  // namespace chermnykh
