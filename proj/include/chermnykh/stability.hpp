#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "chermnykh/equilibria.hpp"
#include "chermnykh/params.hpp"

namespace chermnykh {

/// Coefficients of lambda^4 + b lambda^2 + d = 0.
struct CharCoefficients {
    double b = 0.0;
    double d = 0.0;
    double f_star = 0.0;
    std::optional<double> g;  ///< triangular points only
};

enum class Classification {
    LinearlyStable,
    UnstableRealRoot,
    UnstableComplexQuartet,
    MarginalResonant,
    Degenerate,  ///< d == 0: a double zero root
};

std::string_view to_string(Classification c);

inline bool is_unstable(Classification c) {
    return c == Classification::UnstableRealRoot || c == Classification::UnstableComplexQuartet;
}

using Roots4 = std::array<std::complex<double>, 4>;

struct StabilityReport {
    CharCoefficients coeffs;
    Roots4 lambdas;
    std::optional<double> omega1;  ///< larger frequency, when all roots are imaginary
    std::optional<double> omega2;
    Classification classification = Classification::Degenerate;
    std::optional<int> resonance_k;
};

/// Tolerance on |omega1 - k omega2| for the resonant label.
inline constexpr double kResonanceTolerance = 1e-9;

/// First-order variational system at e, state (alpha, beta, alpha', beta').
/// Throws DomainError if e is not an equilibrium of p to 1e-12.
Eigen::Matrix4d linear_system(const SystemParams& p, const EquilibriumPoint& e);

/// Eigenvalues of a 4x4 real matrix (Eigen's general eigensolver).
Roots4 matrix_eigenvalues(const Eigen::Matrix4d& m);

/// b = 4 n^2 - Omega_xx - Omega_yy, d = Omega_xx Omega_yy - Omega_xy^2 at e.
/// f_star is filled from its closed-form definition; g only for L4/L5.
CharCoefficients char_coeffs(const SystemParams& p, const EquilibriumPoint& e);

/// Closed forms for the triangular points:
///   b = 2 n^2 - f* - 3 mu A2 / r2^5 + 3 Mb T^2 / (r^2 + T^2)^{5/2},  d = 9 mu (1 - mu) g.
/// They agree with char_coeffs when A2 = Mb = 0.
CharCoefficients char_coeffs_paper_triangular(const SystemParams& p, const EquilibriumPoint& e);

/// Triangular-point coefficients in the q1 -> 0 limit, where the point
/// collapses onto primary 1.  Requires Mb == 0 (with a belt the pair does not
/// survive to q1 = 0):
///   b = n^2 - 3 mu A2,  d = mu (3 + 15/2 A2) (3 n^2 - mu (3 + 9/2 A2)).
CharCoefficients char_coeffs_triangular_limit(const SystemParams& p);

/// The closed-form bracket g at a triangular point.
double g_bracket(const SystemParams& p, double x, double y);

/// The four roots of lambda^4 + b lambda^2 + d, as +-sqrt of the two
/// lambda^2 values, larger |lambda^2| first.
Roots4 char_roots(const CharCoefficients& c);

/// Classification from the coefficients alone.
StabilityReport classify_coefficients(const CharCoefficients& c);

StabilityReport classify(const SystemParams& p, const EquilibriumPoint& e);

/// Collinear f(x): (1-mu) q1/|x+mu|^3 + mu/|x+mu-1|^3 (1 + 3/2 A2/|x+mu-1|^2)
///                         + 3 Mb / (x^2 + T^2)^{5/2}.
double collinear_f_star(const SystemParams& p, double x);

struct ResonanceTerms {
    double K = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
};

ResonanceTerms resonance_terms(const SystemParams& p, int k);

/// Where g comes from in the closed-form critical mass.
enum class GSource { Analytic, Refined };

struct CriticalMass {
    double mu = 0.0;
    double g = 0.0;
    ResonanceTerms terms;
    int iterations = 0;
};

/// Closed-form critical mass for the omega1 = k omega2 resonance, iterated
/// until g (which depends on mu once Mb > 0) is self-consistent.  The mu
/// field of base is ignored.
CriticalMass critical_mass_exact(const ParameterSet& base, int k, GSource source = GSource::Analytic);

/// mu where omega1 = k omega2 at the refined L4, by bisection on d/b^2 - K.
double critical_mass_resonance(const ParameterSet& base, int k);

struct LinearCriticalMass {
    double mu = 0.0;
    bool beyond_expansion = false;  ///< |eps| > 0.25
};

/// First-order expansions of mu_k in (A2, eps = 1 - q1, Mb), k in {1, 2, 3}.
LinearCriticalMass critical_mass_linear(double a2, double eps, double mb, int k);

/// Mass ratio at which L4 turns from linearly stable to a complex quartet,
/// by bisection on mu.  The mu field of base is ignored.
double routh_boundary(const ParameterSet& base, double tol = 1e-13);

/// Refined L4, or the q1 -> 0 limit when q1 == 0.
StabilityReport triangular_stability(const SystemParams& p);

}  // namespace chermnykh
