#include "chermnykh/commands.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "chermnykh/contours.hpp"
#include "chermnykh/dynamics.hpp"
#include "chermnykh/equilibria.hpp"
#include "chermnykh/errors.hpp"
#include "chermnykh/potential.hpp"
#include "chermnykh/stability.hpp"
#include "chermnykh/tables.hpp"

namespace chermnykh {

namespace {

Cell opt(const std::optional<double>& v) { return v ? Cell(*v) : Cell(); }

std::string fmt(double v) { return format_number(v); }

void note(std::vector<std::string>* summary, std::string line) {
    if (summary) {
        summary->push_back(std::move(line));
    }
}

void add_param_meta(Dataset& d, const SystemParams& p) {
    const ParameterSet& v = p.values();
    d.meta.emplace_back("mu", v.mu);
    d.meta.emplace_back("q1", v.q1);
    d.meta.emplace_back("a2", v.a2);
    d.meta.emplace_back("mb", v.mb);
    d.meta.emplace_back("t", v.t_belt);
    d.meta.emplace_back("rc", v.rc);
    d.meta.emplace_back("n", p.n());
}

Dataset run_equilibria(const RunConfig& c, std::vector<std::string>* summary) {
    const SystemParams p(c.params);
    Dataset d{"equilibria", {"kind", "x", "y", "r1", "r2", "residual"}, {}, {}};
    add_param_meta(d, p);
    if (p.values().t_belt > 0.0) {
        const InnerPointCondition ic = inner_point_condition(p);
        d.meta.emplace_back("inner_t_below_sqrt2_mu", std::string(ic.t_below_sqrt2_mu ? "true" : "false"));
        d.meta.emplace_back("inner_p_plus_q", ic.p_plus_q);
    }
    const auto points = find_all(p, c.samples);
    std::size_t collinear = 0;
    for (const auto& e : points) {
        collinear += is_collinear(e.kind) ? 1 : 0;
        d.add_row({std::string(to_string(e.kind)), e.x, e.y, e.r1, e.r2, e.residual});
        note(summary, std::string(to_string(e.kind)) + " x=" + fmt(e.x) + " y=" + fmt(e.y) +
                          " residual=" + fmt(e.residual));
    }
    d.meta.emplace_back("collinear_count", static_cast<long long>(collinear));
    if (collinear == points.size()) {
        d.meta.emplace_back("triangular", std::string("none for these parameters"));
    }
    return d;
}

std::vector<std::string> stability_columns() {
    return {"kind", "x", "y", "b", "d", "f_star", "g", "lambda1_re", "lambda1_im", "lambda2_re", "lambda2_im",
            "lambda3_re", "lambda3_im", "lambda4_re", "lambda4_im", "omega1", "omega2", "classification",
            "resonance_k", "b_closed_form", "d_closed_form"};
}

std::vector<Cell> stability_row(const std::string& kind, Cell x, Cell y, const StabilityReport& r,
                                const std::optional<CharCoefficients>& closed) {
    std::vector<Cell> row{kind, std::move(x), std::move(y), r.coeffs.b, r.coeffs.d, r.coeffs.f_star, opt(r.coeffs.g)};
    for (const auto& l : r.lambdas) {
        row.emplace_back(l.real());
        row.emplace_back(l.imag());
    }
    row.push_back(opt(r.omega1));
    row.push_back(opt(r.omega2));
    row.emplace_back(std::string(to_string(r.classification)));
    row.push_back(r.resonance_k ? Cell(static_cast<long long>(*r.resonance_k)) : Cell());
    row.push_back(closed ? Cell(closed->b) : Cell());
    row.push_back(closed ? Cell(closed->d) : Cell());
    return row;
}

std::string stability_line(const std::string& kind, const StabilityReport& r) {
    std::string line = kind + " " + std::string(to_string(r.classification)) + " b=" + fmt(r.coeffs.b) +
                       " d=" + fmt(r.coeffs.d);
    if (r.omega1 && r.omega2) {
        line += " omega1=" + fmt(*r.omega1) + " omega2=" + fmt(*r.omega2);
    }
    return line;
}

Dataset run_stability(const RunConfig& c, std::vector<std::string>* summary) {
    const SystemParams p(c.params);
    Dataset d{"stability", stability_columns(), {}, {}};
    add_param_meta(d, p);
    for (const auto& e : find_all(p, c.samples)) {
        const StabilityReport r = classify(p, e);
        std::optional<CharCoefficients> closed;
        if (!is_collinear(e.kind)) {
            closed = char_coeffs_paper_triangular(p, e);
        }
        const std::string kind(to_string(e.kind));
        d.add_row(stability_row(kind, e.x, e.y, r, closed));
        note(summary, stability_line(kind, r));
    }
    if (p.q1_nonpositive() && p.values().q1 == 0.0 && p.values().mb == 0.0) {
        const StabilityReport r = triangular_stability(p);
        d.add_row(stability_row("L4-limit", Cell(), Cell(), r, std::nullopt));
        note(summary, stability_line("L4-limit", r));
    }
    return d;
}

Dataset run_zvc(const RunConfig& c, std::vector<std::string>* summary) {
    const SystemParams p(c.params);
    GridSpec grid;
    grid.bounds = c.bounds;
    grid.nx = c.grid;
    grid.ny = c.grid;
    const ContourSet cs = zvc_contours(p, c.level, grid);
    Dataset d{"zvc", {"polyline", "closed", "vertex", "x", "y", "tolerance"}, {}, {}};
    add_param_meta(d, p);
    d.meta.emplace_back("C", c.level);
    d.meta.emplace_back("grid", static_cast<long long>(c.grid));
    d.meta.emplace_back("grid_min", cs.grid_min);
    d.meta.emplace_back("grid_min_x", cs.grid_min_x);
    d.meta.emplace_back("grid_min_y", cs.grid_min_y);
    d.meta.emplace_back("polylines", static_cast<long long>(cs.polylines.size()));
    if (!cs.diagnostic.empty()) {
        d.meta.emplace_back("diagnostic", cs.diagnostic);
    }
    for (std::size_t i = 0; i < cs.polylines.size(); ++i) {
        const Polyline& pl = cs.polylines[i];
        for (std::size_t v = 0; v < pl.vertices.size(); ++v) {
            const ContourVertex& cv = pl.vertices[v];
            d.add_row({static_cast<long long>(i), std::string(pl.closed ? "true" : "false"),
                       static_cast<long long>(v), cv.x, cv.y, cv.tolerance});
        }
        note(summary, "polyline " + std::to_string(i) + (pl.closed ? " closed" : " open") + " vertices=" +
                          std::to_string(pl.vertices.size()));
    }
    if (!cs.diagnostic.empty()) {
        note(summary, cs.diagnostic);
    }
    return d;
}

Dataset run_mu_crit(const RunConfig& c, std::vector<std::string>* summary) {
    const SystemParams p(c.params);
    Dataset d{"mu-crit",
              {"k", "K", "b1", "b2", "g", "mu_exact", "mu_exact_refined_g", "mu_resonance", "mu_linear",
               "linear_beyond_expansion", "note"},
              {}, {}};
    add_param_meta(d, p);
    const ParameterSet& v = p.values();
    for (int k : c.k) {
        const CriticalMass exact = critical_mass_exact(v, k, GSource::Analytic);
        std::vector<std::string> notes;
        Cell refined;
        Cell resonance;
        Cell linear;
        Cell beyond;
        try {
            refined = critical_mass_exact(v, k, GSource::Refined).mu;
        } catch (const std::exception& e) {
            notes.push_back(std::string("refined g: ") + e.what());
        }
        try {
            resonance = critical_mass_resonance(v, k);
        } catch (const std::exception& e) {
            notes.push_back(std::string("resonance: ") + e.what());
        }
        if (k <= 3) {
            const LinearCriticalMass lin = critical_mass_linear(v.a2, 1.0 - v.q1, v.mb, k);
            linear = lin.mu;
            beyond = std::string(lin.beyond_expansion ? "true" : "false");
        }
        std::string joined;
        for (const auto& n : notes) {
            joined += (joined.empty() ? "" : "; ") + n;
        }
        d.add_row({static_cast<long long>(k), exact.terms.K, exact.terms.b1, exact.terms.b2, exact.g, exact.mu,
                   refined, resonance, linear, beyond, joined});
        note(summary, "k=" + std::to_string(k) + " mu_k=" + fmt(exact.mu));
    }
    return d;
}

Dataset run_integrate(const RunConfig& c, std::vector<std::string>* summary) {
    const SystemParams p(c.params);
    const RotState s0{0.0, c.x0, c.y0, c.vx0, c.vy0};
    IntegratorOptions opt;
    opt.tol = c.tol;
    if (c.dt < 0.0) {
        throw DomainError("dt must be >= 0");
    }
    if (c.dt > 0.0) {
        const auto count = static_cast<std::size_t>(std::floor(c.tend / c.dt + 1e-9));
        if (count > 10'000'000) {
            throw DomainError("dt gives more than 1e7 samples");
        }
        for (std::size_t i = 0; i <= count; ++i) {
            const double t = static_cast<double>(i) * c.dt;
            if (t <= c.tend) {
                opt.sample_times.push_back(t);
            }
        }
    }
    const Trajectory tr = integrate(p, s0, c.tend, opt);
    Dataset d{"integrate", {"t", "x", "y", "vx", "vy", "jacobi"}, {}, {}};
    add_param_meta(d, p);
    const bool completed = tr.status == IntegrationStatus::Completed;
    d.meta.emplace_back("tol", c.tol);
    d.meta.emplace_back("c0", tr.c0);
    d.meta.emplace_back("max_relative_drift", tr.max_drift);
    d.meta.emplace_back("status", std::string(completed ? "completed" : "close-encounter"));
    d.meta.emplace_back("accepted_steps", static_cast<long long>(tr.accepted_steps));
    d.meta.emplace_back("rejected_steps", static_cast<long long>(tr.rejected_steps));
    for (const RotState& s : tr.samples) {
        d.add_row({s.t, s.x, s.y, s.vx, s.vy, jacobi_constant(p, s)});
    }
    const RotState& last = tr.samples.back();
    note(summary, std::string(completed ? "completed" : "close encounter") + " at t=" + fmt(last.t) +
                      " C0=" + fmt(tr.c0) + " drift=" + fmt(tr.max_drift) + " steps=" +
                      std::to_string(tr.accepted_steps));
    return d;
}

Dataset run_tables(const RunConfig& c, std::vector<std::string>* summary) {
    Dataset d{"tables", table_columns(), {}, {}};
    std::vector<std::string> ids;
    if (c.table == "all") {
        ids = {"table1", "table2"};
    } else {
        ids = {c.table};
    }
    for (const auto& id : ids) {
        const TableArtifact t = reproduce_table(id);
        append_rows(d, t);
        std::size_t counts[4] = {0, 0, 0, 0};
        for (const auto& cell : t.cells) {
            ++counts[static_cast<int>(cell.provenance)];
        }
        d.meta.emplace_back(id + "_tolerance", t.tolerance);
        for (Provenance pv : {Provenance::Reproduced, Provenance::Mismatch, Provenance::NonNormative,
                              Provenance::Failed}) {
            d.meta.emplace_back(id + "_" + std::string(to_string(pv)),
                                static_cast<long long>(counts[static_cast<int>(pv)]));
        }
        note(summary, id + ": " + std::to_string(counts[0]) + " reproduced, " + std::to_string(counts[1]) +
                          " mismatch, " + std::to_string(counts[2]) + " non-normative, " +
                          std::to_string(counts[3]) + " failed");
    }
    return d;
}

std::vector<double> axis_or(const std::vector<double>& axis, double fallback) {
    return axis.empty() ? std::vector<double>{fallback} : axis;
}

std::vector<Cell> sweep_point(const RunConfig& c, double mu, double q1, double a2, double mb) {
    ParameterSet ps = c.params;
    ps.mu = mu;
    ps.q1 = q1;
    ps.a2 = a2;
    ps.mb = mb;
    std::vector<Cell> row{mu, q1, a2, mb};
    row.resize(sweep_columns().size());
    std::vector<std::string> status;
    auto record = [&](const char* what, const std::exception& e) {
        status.push_back(std::string(what) + ": " + e.what());
    };
    std::optional<SystemParams> p;
    try {
        p.emplace(ps);
    } catch (const std::exception& e) {
        record("params", e);
        row.back() = status.front();
        return row;
    }
    row[4] = p->n();
    try {
        row[5] = static_cast<long long>(find_collinear(*p, c.samples).size());
    } catch (const std::exception& e) {
        record("collinear", e);
    }
    try {
        if (q1 > 0.0) {
            const auto l4 = find_triangular(*p).first;
            row[6] = l4.x;
            row[7] = l4.y;
        }
        const StabilityReport r = triangular_stability(*p);
        row[8] = r.coeffs.b;
        row[9] = r.coeffs.d;
        row[10] = opt(r.omega1);
        row[11] = opt(r.omega2);
        row[12] = std::string(to_string(r.classification));
    } catch (const std::exception& e) {
        record("L4", e);
    }
    for (int k = 1; k <= 3; ++k) {
        try {
            row[12 + k] = critical_mass_exact(ps, k).mu;
        } catch (const std::exception& e) {
            record(k == 1 ? "mu_k1" : k == 2 ? "mu_k2" : "mu_k3", e);
        }
    }
    std::string joined;
    for (const auto& s : status) {
        joined += (joined.empty() ? "" : "; ") + s;
    }
    row.back() = joined.empty() ? std::string("ok") : joined;
    return row;
}

}  // namespace

const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> cols{"mu",     "q1",     "a2",     "mb",
                                               "n",      "n_collinear", "l4_x", "l4_y",
                                               "b",      "d",      "omega1", "omega2",
                                               "classification", "mu_k1", "mu_k2", "mu_k3",
                                               "status"};
    return cols;
}

std::size_t sweep_size(const RunConfig& config) {
    const ParameterSet& v = config.params;
    const SweepAxes& a = config.sweep;
    double total = 1.0;
    for (std::size_t n : {axis_or(a.mu, v.mu).size(), axis_or(a.q1, v.q1).size(), axis_or(a.a2, v.a2).size(),
                          axis_or(a.mb, v.mb).size()}) {
        total *= static_cast<double>(n);
    }
    return total > 1e18 ? static_cast<std::size_t>(-1) : static_cast<std::size_t>(total);
}

Dataset sweep(const RunConfig& config) {
    const std::size_t total = sweep_size(config);
    if (total > kMaxSweepPoints) {
        throw DomainError("sweep has " + std::to_string(total) + " points; the limit is " +
                          std::to_string(kMaxSweepPoints));
    }
    const ParameterSet& v = config.params;
    const auto mu = axis_or(config.sweep.mu, v.mu);
    const auto q1 = axis_or(config.sweep.q1, v.q1);
    const auto a2 = axis_or(config.sweep.a2, v.a2);
    const auto mb = axis_or(config.sweep.mb, v.mb);

    Dataset d{"sweep", sweep_columns(), {}, {}};
    d.meta.emplace_back("t", v.t_belt);
    d.meta.emplace_back("rc", v.rc);
    d.meta.emplace_back("points", static_cast<long long>(total));
    d.rows.resize(total);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            std::size_t r = i;
            const std::size_t im = r % mb.size();
            r /= mb.size();
            const std::size_t ia = r % a2.size();
            r /= a2.size();
            const std::size_t iq = r % q1.size();
            r /= q1.size();
            d.rows[i] = sweep_point(config, mu[r], q1[iq], a2[ia], mb[im]);
        }
    };
    std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, total);
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& th : pool) {
        th.join();
    }
    return d;
}

Dataset execute(const RunConfig& config, std::vector<std::string>* summary) {
    validate(config);
    switch (config.command) {
        case Command::Equilibria: return run_equilibria(config, summary);
        case Command::Stability: return run_stability(config, summary);
        case Command::Zvc: return run_zvc(config, summary);
        case Command::MuCrit: return run_mu_crit(config, summary);
        case Command::Integrate: return run_integrate(config, summary);
        case Command::Tables: return run_tables(config, summary);
        case Command::Sweep: {
            Dataset d = sweep(config);
            std::size_t ok = 0;
            for (const auto& row : d.rows) {
                ok += std::get<std::string>(row.back()) == "ok" ? 1 : 0;
            }
            note(summary, "sweep: " + std::to_string(d.rows.size()) + " points, " + std::to_string(ok) +
                              " without errors");
            return d;
        }
    }
    throw UsageError("unknown command");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& log) {
    try {
        std::vector<std::string> summary;
        const Dataset data = execute(config, &summary);
        std::ostringstream buffer;
        if (config.effective_format() == OutputFormat::Csv) {
            write_csv(buffer, data);
        } else {
            write_json(buffer, data);
        }
        if (config.out.empty()) {
            out << buffer.str();
            out.flush();
        } else {
            std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
            if (!file) {
                throw OutputError("cannot open '" + config.out + "' for writing");
            }
            file << buffer.str();
            file.flush();
            if (!file) {
                throw OutputError("failed writing '" + config.out + "'");
            }
        }
        for (const auto& line : summary) {
            log << line << '\n';
        }
        return exit_code::kOk;
    } catch (const UsageError& e) {
        log << "usage error: " << e.what() << '\n';
        return exit_code::kUsage;
    } catch (const DomainError& e) {
        log << "domain error: " << e.what() << '\n';
        return exit_code::kDomain;
    } catch (const ConvergenceError& e) {
        log << "convergence failure: " << e.what() << '\n';
        return exit_code::kConvergence;
    } catch (const NonFiniteStateError& e) {
        log << "convergence failure: " << e.what() << '\n';
        return exit_code::kConvergence;
    } catch (const OutputError& e) {
        log << "output error: " << e.what() << '\n';
        return exit_code::kOutput;
    } catch (const std::exception& e) {
        log << "internal error: " << e.what() << '\n';
        return exit_code::kSoftware;
    }
}

}  // namespace chermnykh
