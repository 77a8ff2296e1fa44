#include "chermnykh/stability.hpp"

#include <algorithm>
#include <limits>
#include <vector>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "chermnykh/errors.hpp"
#include "chermnykh/potential.hpp"
#include "chermnykh/roots.hpp"

namespace chermnykh {

std::string_view to_string(Classification c) {
    switch (c) {
        case Classification::LinearlyStable: return "LinearlyStable";
        case Classification::UnstableRealRoot: return "Unstable-RealRoot";
        case Classification::UnstableComplexQuartet: return "Unstable-ComplexQuartet";
        case Classification::MarginalResonant: return "Marginal-Resonant";
        case Classification::Degenerate: return "Degenerate";
    }
    return "?";
}

namespace {

void require_refined(const SystemParams& p, const EquilibriumPoint& e) {
    const double res = equilibrium_residual(p, e.x, e.y);
    if (!(res <= kEquilibriumTolerance)) {
        throw DomainError("point " + std::string(to_string(e.kind)) +
                          " is not a refined equilibrium of these parameters (residual " +
                          std::to_string(res) + ")");
    }
}

double pow52(double s) { return s * s * std::sqrt(s); }

}  // namespace

Eigen::Matrix4d linear_system(const SystemParams& p, const EquilibriumPoint& e) {
    require_refined(p, e);
    const Hessian h = omega_hessian(p, e.x, e.y);
    const double two_n = 2.0 * p.n();
    Eigen::Matrix4d a;
    // clang-format off
    a << 0.0,  0.0,   1.0,    0.0,
         0.0,  0.0,   0.0,    1.0,
         h.xx, h.xy,  0.0,    two_n,
         h.xy, h.yy, -two_n,  0.0;
    // clang-format on
    return a;
}

Roots4 matrix_eigenvalues(const Eigen::Matrix4d& m) {
    Eigen::EigenSolver<Eigen::Matrix4d> solver(m, false);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceError("eigenvalue solver failed");
    }
    const auto ev = solver.eigenvalues();
    return {ev(0), ev(1), ev(2), ev(3)};
}

double g_bracket(const SystemParams& p, double x, double y) {
    const double mu = p.mu();
    const double r1 = distance_to_primary1(p, x, y);
    const double r2 = distance_to_primary2(p, x, y);
    const double r1_5 = std::pow(r1, 5);
    const double r2_5 = std::pow(r2, 5);
    const double s = x * x + y * y + p.t_belt() * p.t_belt();
    double bracket = p.q1() / (r1_5 * r2_5);
    if (p.mb() > 0.0) {
        bracket += 3.0 * p.mb() / pow52(s) *
                   (mu * p.q1() / r1_5 + (1.0 - mu) * (1.0 + 2.5 * p.a2() / (r2 * r2)) / r2_5);
    }
    return y * y * bracket;
}

namespace {

double f_star_closed_form(const SystemParams& p, double x, double y) {
    const double mu = p.mu();
    const double r1 = distance_to_primary1(p, x, y);
    const double r2 = distance_to_primary2(p, x, y);
    const double s = x * x + y * y + p.t_belt() * p.t_belt();
    double f = (1.0 - mu) * p.q1() / (r1 * r1 * r1) + mu / (r2 * r2 * r2) * (1.0 + 1.5 * p.a2() / (r2 * r2));
    if (p.mb() > 0.0) {
        f += 3.0 * p.mb() / pow52(s);
    }
    return f;
}

}  // namespace

CharCoefficients char_coeffs(const SystemParams& p, const EquilibriumPoint& e) {
    require_refined(p, e);
    const Hessian h = omega_hessian(p, e.x, e.y);
    CharCoefficients c;
    c.b = 4.0 * p.n2() - h.trace();
    c.d = h.det();
    c.f_star = f_star_closed_form(p, e.x, e.y);
    if (!is_collinear(e.kind)) {
        c.g = g_bracket(p, e.x, e.y);
    }
    return c;
}

CharCoefficients char_coeffs_paper_triangular(const SystemParams& p, const EquilibriumPoint& e) {
    if (is_collinear(e.kind)) {
        throw DomainError("the closed-form coefficients apply to L4/L5 only");
    }
    const double mu = p.mu();
    const double r2 = distance_to_primary2(p, e.x, e.y);
    const double s = e.x * e.x + e.y * e.y + p.t_belt() * p.t_belt();
    CharCoefficients c;
    c.f_star = f_star_closed_form(p, e.x, e.y);
    c.b = 2.0 * p.n2() - c.f_star - 3.0 * mu * p.a2() / std::pow(r2, 5);
    if (p.mb() > 0.0) {
        c.b += 3.0 * p.mb() * p.t_belt() * p.t_belt() / pow52(s);
    }
    c.g = g_bracket(p, e.x, e.y);
    c.d = 9.0 * mu * (1.0 - mu) * *c.g;
    return c;
}

CharCoefficients char_coeffs_triangular_limit(const SystemParams& p) {
    if (p.mb() > 0.0) {
        throw DomainError("triangular points do not persist to q1 = 0 when the belt mass is positive");
    }
    const double mu = p.mu();
    const double a2 = p.a2();
    const double n2 = p.n2();
    CharCoefficients c;
    c.b = n2 - 3.0 * mu * a2;
    c.d = mu * (3.0 + 7.5 * a2) * (3.0 * n2 - mu * (3.0 + 4.5 * a2));
    c.f_star = n2;
    c.g = c.d / (9.0 * mu * (1.0 - mu));
    return c;
}

Roots4 char_roots(const CharCoefficients& c) {
    using cd = std::complex<double>;
    // lambda^2 roots of s^2 + b s + d, cancellation-free form.
    const cd disc = std::sqrt(cd(c.b * c.b - 4.0 * c.d, 0.0));
    cd big;
    if (std::abs(cd(c.b) + disc) >= std::abs(cd(c.b) - disc)) {
        big = -0.5 * (cd(c.b) + disc);
    } else {
        big = -0.5 * (cd(c.b) - disc);
    }
    const cd small = big == cd(0.0) ? cd(0.0) : cd(c.d) / big;
    const cd l1 = std::sqrt(big);
    const cd l2 = std::sqrt(small);
    return {l1, -l1, l2, -l2};
}

StabilityReport classify_coefficients(const CharCoefficients& c) {
    StabilityReport r;
    r.coeffs = c;
    r.lambdas = char_roots(c);

    const double disc = c.b * c.b - 4.0 * c.d;
    if (c.d < 0.0) {
        r.classification = Classification::UnstableRealRoot;
    } else if (c.d == 0.0) {
        r.classification = c.b < 0.0 ? Classification::UnstableRealRoot : Classification::Degenerate;
    } else if (disc < 0.0) {
        r.classification = Classification::UnstableComplexQuartet;
    } else if (c.b <= 0.0) {
        // both lambda^2 >= 0
        r.classification = Classification::UnstableRealRoot;
    } else {
        const double w1 = std::sqrt(0.5 * (c.b + std::sqrt(disc)));
        const double w2 = std::sqrt(c.d) / w1;
        r.omega1 = w1;
        r.omega2 = w2;
        r.classification = Classification::LinearlyStable;
        const double k = std::max(1.0, std::round(w1 / w2));
        if (k < 1e6 && std::abs(w1 - k * w2) <= kResonanceTolerance) {
            r.classification = Classification::MarginalResonant;
            r.resonance_k = static_cast<int>(k);
        }
    }
    return r;
}

StabilityReport classify(const SystemParams& p, const EquilibriumPoint& e) {
    return classify_coefficients(char_coeffs(p, e));
}

double collinear_f_star(const SystemParams& p, double x) {
    const double mu = p.mu();
    const double d1 = std::abs(x + mu);
    const double d2 = std::abs(x + mu - 1.0);
    if (d1 < kSingularRadius || d2 < kSingularRadius) {
        throw DomainError("collinear_f_star: x coincides with a primary");
    }
    double f = (1.0 - mu) * p.q1() / (d1 * d1 * d1) + mu / (d2 * d2 * d2) * (1.0 + 1.5 * p.a2() / (d2 * d2));
    if (p.mb() > 0.0) {
        f += 3.0 * p.mb() / pow52(x * x + p.t_belt() * p.t_belt());
    }
    return f;
}

ResonanceTerms resonance_terms(const SystemParams& p, int k) {
    if (k < 1) {
        throw DomainError("resonance order k must be >= 1");
    }
    const double kk = static_cast<double>(k) * k;
    const double s = p.rc() * p.rc() + p.t_belt() * p.t_belt();
    const double s32 = s * std::sqrt(s);
    ResonanceTerms t;
    t.K = kk / ((kk + 1.0) * (kk + 1.0));
    t.b1 = p.n2() + 2.0 * p.rc() * p.mb() / s32 + 3.0 * p.mb() * p.t_belt() * p.t_belt() / (s32 * s);
    t.b2 = p.a2() * (1.0 + 5.0 * (2.0 * p.rc() - 1.0) * p.mb() / s32);
    return t;
}

namespace {

double classical_critical_mass(int k) {
    const double kk = static_cast<double>(k) * k;
    const double K = kk / ((kk + 1.0) * (kk + 1.0));
    return 0.5 * (1.0 - std::sqrt(1.0 - 16.0 * K / 27.0));
}

double g_for(const SystemParams& p, GSource source) {
    if (p.q1() == 0.0) {
        if (p.mb() > 0.0) {
            throw DomainError("triangular points do not persist to q1 = 0 when the belt mass is positive");
        }
        // y^2 q1 / r1^5 with r1 ~ q1^{1/3} c: the limit is 1 / c^3.
        if (source == GSource::Analytic) {
            const double c = 1.0 - 0.5 * p.a2();
            return 1.0 / (c * c * c);
        }
        return p.n2();
    }
    if (source == GSource::Analytic) {
        const EquilibriumPoint l4 = triangular_analytic(p).first;
        return g_bracket(p, l4.x, l4.y);
    }
    const EquilibriumPoint l4 = find_triangular(p).first;
    return g_bracket(p, l4.x, l4.y);
}

// Smaller root of 9 g mu (1 - mu) = K (b1 - 3 mu b2)^2.
double eq_critical_mass(double g, const ResonanceTerms& t) {
    const double K = t.K;
    const double b1 = t.b1;
    const double b2 = t.b2;
    const double radicand = 9.0 * g - 4.0 * K * b1 * b1 + 12.0 * K * b1 * b2;
    if (!(g > 0.0) || radicand < 0.0) {
        throw DomainError("no resonance crossing in (0, 1/2]");
    }
    return (3.0 * g + 2.0 * K * b1 * b2 - std::sqrt(g) * std::sqrt(radicand)) / (6.0 * (g + K * b2 * b2));
}

}  // namespace

CriticalMass critical_mass_exact(const ParameterSet& base, int k, GSource source) {
    if (k < 1) {
        throw DomainError("resonance order k must be >= 1");
    }
    constexpr int kMaxIterations = 100;
    ParameterSet v = base;
    v.mu = classical_critical_mass(k);

    CriticalMass out;
    std::vector<double> history;
    for (int it = 1; it <= kMaxIterations; ++it) {
        const SystemParams p(v);
        out.terms = resonance_terms(p, k);
        out.g = g_for(p, source);
        const double next = eq_critical_mass(out.g, out.terms);
        if (!(next > 0.0 && next <= 0.5)) {
            throw DomainError("no resonance crossing in (0, 1/2]");
        }
        history.push_back(next);
        out.iterations = it;
        const double change = std::abs(next - v.mu);
        v.mu = next;
        if (change <= 1e-14 * next) {
            out.mu = next;
            return out;
        }
    }
    throw ConvergenceError("critical mass iteration did not settle", history);
}

namespace {

StabilityReport l4_report(const ParameterSet& v) {
    return triangular_stability(SystemParams(v));
}

}  // namespace

StabilityReport triangular_stability(const SystemParams& p) {
    if (p.q1() == 0.0) {
        return classify_coefficients(char_coeffs_triangular_limit(p));
    }
    const EquilibriumPoint l4 = find_triangular(p).first;
    return classify(p, l4);
}

double critical_mass_resonance(const ParameterSet& base, int k) {
    if (k < 1) {
        throw DomainError("resonance order k must be >= 1");
    }
    const double kk = static_cast<double>(k) * k;
    const double K = kk / ((kk + 1.0) * (kk + 1.0));
    ParameterSet v = base;
    auto excess = [&](double mu) {
        v.mu = mu;
        const StabilityReport r = l4_report(v);
        return r.coeffs.d / (r.coeffs.b * r.coeffs.b) - K;
    };

    // d / b^2 grows from 0 with mu; march outward to the first crossing.
    double lo = 1e-6;
    double f_lo = excess(lo);
    if (f_lo >= 0.0) {
        throw DomainError("no resonance crossing in (0, 1/2]");
    }
    constexpr int kSteps = 500;
    for (int i = 1; i <= kSteps; ++i) {
        const double hi = 0.5 * static_cast<double>(i) / kSteps;
        const double f_hi = excess(hi);
        if (f_hi >= 0.0) {
            return bisect(excess, lo, hi, f_lo);
        }
        lo = hi;
        f_lo = f_hi;
    }
    throw DomainError("no resonance crossing in (0, 1/2]");
}

LinearCriticalMass critical_mass_linear(double a2, double eps, double mb, int k) {
    struct Coefficients {
        double c0, ca2, ceps, cmb;
    };
    static constexpr std::array<Coefficients, 3> kTable{{
        {0.0385208965, 0.0375419787, -0.0089174706, -0.0678734040},
        {0.0242938971, 0.0254350205, -0.0055364958, -0.0421398438},
        {0.0135160160, 0.0148764140, -0.0030452832, -0.0231785159},
    }};
    if (k < 1 || k > 3) {
        throw DomainError("linearised critical masses exist for k = 1, 2, 3 only");
    }
    const Coefficients& c = kTable[static_cast<std::size_t>(k - 1)];
    LinearCriticalMass out;
    out.mu = c.c0 + c.ca2 * a2 + c.ceps * eps + c.cmb * mb;
    out.beyond_expansion = std::abs(eps) > 0.25;
    return out;
}

double routh_boundary(const ParameterSet& base, double tol) {
    ParameterSet v = base;
    auto quartet = [&](double mu) {
        v.mu = mu;
        return l4_report(v).classification == Classification::UnstableComplexQuartet;
    };
    double lo = 1e-6;
    double hi = 0.5;
    if (quartet(lo) || !quartet(hi)) {
        throw DomainError("L4 stability does not change over (0, 1/2]");
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (quartet(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace chermnykh
