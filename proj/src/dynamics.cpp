#include "chermnykh/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "chermnykh/errors.hpp"
#include "chermnykh/potential.hpp"

namespace chermnykh {

namespace {

using State = std::array<double, 4>;  // x, y, vx, vy

State operator+(const State& a, const State& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

State operator*(double s, const State& a) { return {s * a[0], s * a[1], s * a[2], s * a[3]}; }

bool finite(const State& s) {
    return std::all_of(s.begin(), s.end(), [](double v) { return std::isfinite(v); });
}

State rhs(const SystemParams& p, const State& s) {
    const Gradient g = omega_grad(p, s[0], s[1]);
    const double two_n = 2.0 * p.n();
    return {s[2], s[3], two_n * s[3] + g.x, -two_n * s[2] + g.y};
}

RotState to_rot(double t, const State& s) { return {t, s[0], s[1], s[2], s[3]}; }

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                 a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Continuous extension (Hairer's contd5).
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

struct DenseStep {
    double t0 = 0.0;
    double h = 0.0;
    std::array<State, 5> r{};

    State at(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        State out;
        for (std::size_t i = 0; i < 4; ++i) {
            out[i] = r[0][i] + th * (r[1][i] + th1 * (r[2][i] + th * (r[3][i] + th1 * r[4][i])));
        }
        return out;
    }
};

class Recorder {
public:
    Recorder(const SystemParams& p, const RotState& s0, const IntegratorOptions& opt, Trajectory& traj)
        : p_(p), opt_(opt), traj_(traj) {
        traj_.c0 = jacobi_constant(p, s0);
        if (opt_.sample_times.empty()) {
            traj_.samples.push_back(s0);
        } else if (opt_.sample_times.front() == s0.t) {
            traj_.samples.push_back(s0);
            next_ = 1;
        }
    }

    // Called after every accepted step [t_old, t_new].
    template <typename Interp>
    void accept(double t_new, const State& y_new, Interp&& interp) {
        ++traj_.accepted_steps;
        const double c = 2.0 * omega(p_, y_new[0], y_new[1]) - y_new[2] * y_new[2] - y_new[3] * y_new[3];
        const double scale = traj_.c0 != 0.0 ? std::abs(traj_.c0) : 1.0;
        traj_.max_drift = std::max(traj_.max_drift, std::abs(c - traj_.c0) / scale);

        if (opt_.sample_times.empty()) {
            traj_.samples.push_back(to_rot(t_new, y_new));
            return;
        }
        while (next_ < opt_.sample_times.size() && opt_.sample_times[next_] <= t_new) {
            const double ts = opt_.sample_times[next_];
            traj_.samples.push_back(ts == t_new ? to_rot(t_new, y_new) : to_rot(ts, interp(ts)));
            ++next_;
        }
    }

private:
    const SystemParams& p_;
    const IntegratorOptions& opt_;
    Trajectory& traj_;
    std::size_t next_ = 0;
};

void validate(const RotState& s0, double t_end, const IntegratorOptions& opt) {
    if (!(t_end > s0.t)) {
        throw DomainError("integration end time must exceed the initial time");
    }
    if (!(opt.tol >= 1e-14 && opt.tol <= 1e-6)) {
        throw DomainError("integration tolerance must lie in [1e-14, 1e-6]");
    }
    if (!std::is_sorted(opt.sample_times.begin(), opt.sample_times.end()) ||
        std::adjacent_find(opt.sample_times.begin(), opt.sample_times.end()) != opt.sample_times.end()) {
        throw DomainError("sample times must be strictly increasing");
    }
    if (!opt.sample_times.empty() && (opt.sample_times.front() < s0.t || opt.sample_times.back() > t_end)) {
        throw DomainError("sample times must lie inside the integration interval");
    }
    if (!std::isfinite(s0.x) || !std::isfinite(s0.y) || !std::isfinite(s0.vx) || !std::isfinite(s0.vy)) {
        throw DomainError("initial state must be finite");
    }
}

bool step_underflow(double t, double h) {
    return std::abs(h) < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
}

void run_dopri(const SystemParams& p, const RotState& s0, double t_end, const IntegratorOptions& opt,
               Trajectory& traj) {
    constexpr double kSafety = 0.9;
    constexpr double kBeta = 0.04;
    constexpr double kExpo = 0.2 - kBeta * 0.75;
    constexpr double kFacMin = 0.2;  // step may shrink by at most 5x
    constexpr double kFacMax = 10.0;

    Recorder rec(p, s0, opt, traj);
    double t = s0.t;
    State y{s0.x, s0.y, s0.vx, s0.vy};
    State k1 = rhs(p, y);
    double h = std::min(opt.initial_step, t_end - t);
    double fac_old = 1e-4;
    bool last_rejected = false;

    while (t < t_end) {
        if (traj.accepted_steps + traj.rejected_steps >= opt.max_steps) {
            throw ConvergenceError("integration exceeded the step budget");
        }
        if (step_underflow(t, h)) {
            traj.status = IntegrationStatus::CloseEncounter;
            return;
        }
        const bool final_step = t + h >= t_end;
        if (final_step) {
            h = t_end - t;
        }

        State k2, k3, k4, k5, k6, k7, y_new;
        try {
            k2 = rhs(p, y + (h * a21) * k1);
            k3 = rhs(p, y + h * (a31 * k1 + a32 * k2));
            k4 = rhs(p, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
            k5 = rhs(p, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
            k6 = rhs(p, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
            y_new = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
            k7 = rhs(p, y_new);
        } catch (const DomainError&) {
            // A stage hit a primary: shrink hard and retry.
            h *= kFacMin;
            ++traj.rejected_steps;
            last_rejected = true;
            continue;
        }
        if (!finite(y_new)) {
            throw NonFiniteStateError("integration produced a non-finite state", to_rot(t, y));
        }

        double err = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            const double sk = opt.tol + opt.tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
            const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
            err += (ei / sk) * (ei / sk);
        }
        err = std::sqrt(err / 4.0);

        const double fac11 = std::pow(err, kExpo);
        if (err <= 1.0) {
            double fac = fac11 / std::pow(fac_old, kBeta) / kSafety;
            fac = std::clamp(fac, 1.0 / kFacMax, 1.0 / kFacMin);
            fac_old = std::max(err, 1e-4);

            DenseStep dense;
            dense.t0 = t;
            dense.h = h;
            const State ydiff = y_new + (-1.0) * y;
            const State bspl = h * k1 + (-1.0) * ydiff;
            dense.r[0] = y;
            dense.r[1] = ydiff;
            dense.r[2] = bspl;
            dense.r[3] = ydiff + (-1.0) * (h * k7) + (-1.0) * bspl;
            dense.r[4] = h * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

            const double t_new = final_step ? t_end : t + h;
            rec.accept(t_new, y_new, [&dense](double ts) { return dense.at(ts); });
            t = t_new;
            y = y_new;
            k1 = k7;

            double h_new = h / fac;
            if (last_rejected) {
                h_new = std::min(h_new, h);
            }
            last_rejected = false;
            h = h_new;
        } else {
            ++traj.rejected_steps;
            last_rejected = true;
            h /= std::min(1.0 / kFacMin, fac11 / kSafety);
        }
    }
}

void run_rk4(const SystemParams& p, const RotState& s0, double t_end, const IntegratorOptions& opt,
             Trajectory& traj) {
    if (!(opt.fixed_step > 0.0)) {
        throw DomainError("fixed step must be positive");
    }
    Recorder rec(p, s0, opt, traj);
    double t = s0.t;
    State y{s0.x, s0.y, s0.vx, s0.vy};
    while (t < t_end) {
        if (traj.accepted_steps >= opt.max_steps) {
            throw ConvergenceError("integration exceeded the step budget");
        }
        const bool final_step = t + opt.fixed_step >= t_end;
        const double h = final_step ? t_end - t : opt.fixed_step;
        State y_new;
        try {
            const State k1 = rhs(p, y);
            const State k2 = rhs(p, y + (0.5 * h) * k1);
            const State k3 = rhs(p, y + (0.5 * h) * k2);
            const State k4 = rhs(p, y + h * k3);
            y_new = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        } catch (const DomainError&) {
            traj.status = IntegrationStatus::CloseEncounter;
            return;
        }
        if (!finite(y_new)) {
            throw NonFiniteStateError("integration produced a non-finite state", to_rot(t, y));
        }
        const State y_old = y;
        const double t_old = t;
        // Cubic Hermite between the two step ends for sampled output.
        const State f_old = rhs(p, y_old);
        const State f_new = rhs(p, y_new);
        auto interp = [&](double ts) {
            const double th = (ts - t_old) / h;
            const double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
            const double h10 = th * (1 - th) * (1 - th);
            const double h01 = th * th * (3 - 2 * th);
            const double h11 = th * th * (th - 1);
            return h00 * y_old + (h10 * h) * f_old + h01 * y_new + (h11 * h) * f_new;
        };
        t = final_step ? t_end : t + h;
        y = y_new;
        rec.accept(t, y_new, interp);
    }
}

}  // namespace

Trajectory integrate(const SystemParams& p, const RotState& s0, double t_end, const IntegratorOptions& options) {
    validate(s0, t_end, options);
    Trajectory traj;
    if (options.stepper == StepperKind::FixedRK4) {
        run_rk4(p, s0, t_end, options, traj);
    } else {
        run_dopri(p, s0, t_end, options, traj);
    }
    return traj;
}

Trajectory integrate(const SystemParams& p, const RotState& s0, double t_end, double tol) {
    IntegratorOptions opt;
    opt.tol = tol;
    return integrate(p, s0, t_end, opt);
}

double stability_probe(const SystemParams& p, const EquilibriumPoint& e, double delta, double t_end, double tol) {
    if (!(delta >= 0.0 && delta <= 1e-3)) {
        throw DomainError("probe displacement must lie in [0, 1e-3]");
    }
    if (!(equilibrium_residual(p, e.x, e.y) <= kEquilibriumTolerance)) {
        throw DomainError("stability probe needs a refined equilibrium");
    }
    RotState s0;
    s0.x = e.x + delta;
    s0.y = e.y;
    const Trajectory traj = integrate(p, s0, t_end, tol);
    if (traj.status == IntegrationStatus::CloseEncounter) {
        return std::numeric_limits<double>::infinity();
    }
    double excursion = 0.0;
    for (const auto& s : traj.samples) {
        excursion = std::max(excursion, std::hypot(s.x - e.x, s.y - e.y));
    }
    return excursion;
}

}  // namespace chermnykh
