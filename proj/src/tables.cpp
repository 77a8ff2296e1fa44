#include "chermnykh/tables.hpp"

#include <array>
#include <cmath>
#include <exception>

#include "chermnykh/config.hpp"
#include "chermnykh/errors.hpp"
#include "chermnykh/stability.hpp"

namespace chermnykh {

std::string_view to_string(Provenance p) {
    switch (p) {
        case Provenance::Reproduced: return "reproduced";
        case Provenance::Mismatch: return "mismatch";
        case Provenance::NonNormative: return "non-normative";
        case Provenance::Failed: return "failed";
    }
    return "?";
}

std::optional<double> TableCell::abs_delta() const {
    if (!computed) {
        return std::nullopt;
    }
    return std::abs(*computed - reference);
}

namespace {

constexpr std::array<double, 3> kTable1A2{0.0, 0.02, 0.04};
constexpr std::array<double, 5> kTable1Q1{1.0, 0.75, 0.5, 0.25, 0.0};
constexpr std::array<double, 4> kMb{0.0, 0.2, 0.4, 0.6};

// [a2][q1][mb] -> {omega1, omega2}
constexpr double kTable1[3][5][4][2] = {
    {{{0.890141, 0.455686}, {1.18033, 0.4815237}, {1.41795, 0.489382}, {1.62232, 0.493127}},
     {{0.880622, 0.47382}, {1.17804, 0.487083}, {1.41737, 0.491041}, {1.62238, 0.492928}},
     {{0.869076, 0.494679}, {1.17602, 0.491953}, {1.41733, 0.491159}, {1.62304, 0.490779}},
     {{0.853749, 0.520684}, {1.17436, 0.495895}, {1.41812, 0.488893}, {1.62461, 0.485532}},
     {{0.821584, 0.570088}, {1.17349, 0.497955}, {1.4215, 0.478958}, {1.62926, 0.4697}}},
    {{{0.910283, 0.447086}, {1.1934, 0.477057}, {1.42768, 0.486598}, {1.63005, 0.491211}},
     {{0.901845, 0.463871}, {1.19127, 0.482336}, {1.42716, 0.48813}, {1.63013, 0.490934}},
     {{0.891743, 0.483005}, {1.18941, 0.486917}, {1.42716, 0.488124}, {1.6308, 0.488709}},
     {{0.878605, 0.506511}, {1.18791, 0.490552}, {1.42798, 0.485737}, {1.63238, 0.48339}},
     {{0.852388, 0.549485}, {1.18724, 1.43137}, {1.43137, 0.475658}, {1.63701, 0.467476}}},
    {{{0.929538, 0.439272}, {1.20624, 0.472778}, {1.43732, 0.483883}, {1.63772, 0.489328}},
     {{0.921985, 0.45491}, {1.20426, 0.477788}, {1.43685, 0.48529}, {1.63783, 0.488972}},
     {{0.913034, 0.47262}, {1.20254, 0.482095}, {1.43689, 0.485164}, {1.63851, 0.486674}},
     {{0.901559, 0.494157}, {1.2012, 0.485439}, {1.43774, 0.482658}, {1.6401, 0.481283}},
     {{0.879387, 0.532615}, {1.2007, 0.486672}, {1.44113, 0.472436}, {1.64471, 0.465288}}},
};

constexpr std::array<double, 3> kTable2Q1{1.0, 0.75, 0.5};
constexpr std::array<double, 2> kTable2A2{0.0, 0.02};

// [q1][k-1][a2][mb]
constexpr double kTable2[3][5][2][4] = {
    {{{0.0385209, 0.0525812, 0.0688051, 0.0861218}, {0.0404877, 0.0539744, 0.0696964, 0.0863953}},
     {{0.0242939, 0.0329695, 0.0428408, 0.0532015}, {0.0255597, 0.0339343, 0.0435889, 0.0537117}},
     {{0.013516, 0.0182676, 0.0236236, 0.0291855}, {0.0142309, 0.0188392, 0.0241121, 0.0295953}},
     {{0.00827037, 0.0111565, 0.014396, 0.0177443}, {0.00871096, 0.0115163, 0.0147154, 0.01803}},
     {{0.0055092, 0.00742441, 0.00956953, 0.0117815}, {0.0058038, 0.00766762, 0.00978937, 0.0119837}}},
    {{{0.0363201, 0.051579, 0.0684542, 0.0863238}, {0.0382382, 0.0529886, 0.0693753, 0.0866222}},
     {{0.0229262, 0.0323547, 0.0426289, 0.0533212}, {0.024159, 0.0333263, 0.0433931, 0.0538481}},
     {{0.0127632, 0.0179323, 0.0235093, 0.0292495}, {0.0134588, 0.0113141, 0.0240058, 0.0296688}},
     {{0.0078121, 0.0109532, 0.014327, 0.0177827}, {0.00824062, 0.0113141, 0.014651, 0.0180743}},
     {{0.00520474, 0.00728962, 0.00952388, 0.0118069}, {0.00549121, 0.0075334, 0.00974673, 0.012013}}},
    {{{0.0341355, 0.0507482, 0.0685365, 0.0872546}, {0.0359977, 0.0521785, 0.0694903, 0.0875708}},
     {{0.0215661, 0.0318447, 0.0426786, 0.0538727}, {0.0227616, 0.0328263, 0.0434633, 0.054418}},
     {{0.0120136, 0.0176539, 0.0235361, 0.0295437}, {0.0126877, 0.0182322, 0.0240439, 0.0299757}},
     {{0.00735548, 0.0107843, 0.0143431, 0.0179594}, {0.00777057, 0.0111476, 0.0146741, 0.0182594}},
     {{0.00490128, 0.00717768, 0.00953459, 0.0119234}, {0.00517872, 0.00742292, 0.00976201, 0.0121354}}},
};

constexpr double kTable1Tolerance = 5e-5;
constexpr double kTable2Tolerance = 1e-5;

ParameterSet grid_params(double q1, double a2, double mb) {
    ParameterSet ps;
    ps.mu = 0.025;
    ps.q1 = q1;
    ps.a2 = a2;
    ps.mb = mb;
    ps.t_belt = 0.01;
    ps.rc = 0.8;
    return ps;
}

void settle(TableCell& cell, bool normative, double tolerance) {
    if (!normative) {
        cell.provenance = Provenance::NonNormative;
        return;
    }
    cell.provenance = *cell.abs_delta() <= tolerance ? Provenance::Reproduced : Provenance::Mismatch;
}

}  // namespace

TableArtifact reproduce_table1() {
    TableArtifact t{"table1", kTable1Tolerance, {}};
    for (std::size_t ia = 0; ia < kTable1A2.size(); ++ia) {
        for (std::size_t iq = 0; iq < kTable1Q1.size(); ++iq) {
            for (std::size_t im = 0; im < kMb.size(); ++im) {
                const double a2 = kTable1A2[ia];
                const double q1 = kTable1Q1[iq];
                const double mb = kMb[im];
                const bool normative = a2 == 0.0 && mb == 0.0;
                TableCell w1{q1, a2, mb, 0, "omega1", std::nullopt, kTable1[ia][iq][im][0], Provenance::Failed, {}};
                TableCell w2{q1, a2, mb, 0, "omega2", std::nullopt, kTable1[ia][iq][im][1], Provenance::Failed, {}};
                if (ia == 1 && iq == 4 && im == 1) {
                    w2.note = "reference omega2 repeats the adjacent omega1 entry";
                }
                try {
                    const StabilityReport r = triangular_stability(SystemParams(grid_params(q1, a2, mb)));
                    if (!r.omega1 || !r.omega2) {
                        throw DomainError("L4 is not linearly stable (" + std::string(to_string(r.classification)) +
                                          ")");
                    }
                    w1.computed = *r.omega1;
                    w2.computed = *r.omega2;
                    settle(w1, normative, t.tolerance);
                    settle(w2, normative, t.tolerance);
                    if (q1 == 0.0) {
                        w1.note = w2.note.empty() ? "q1 -> 0 limit" : w1.note;
                        w2.note = w2.note.empty() ? "q1 -> 0 limit" : w2.note;
                    }
                } catch (const std::exception& e) {
                    w1.note = e.what();
                    w2.note = w2.note.empty() ? e.what() : w2.note + "; " + e.what();
                }
                t.cells.push_back(std::move(w1));
                t.cells.push_back(std::move(w2));
            }
        }
    }
    return t;
}

TableArtifact reproduce_table2() {
    TableArtifact t{"table2", kTable2Tolerance, {}};
    for (std::size_t iq = 0; iq < kTable2Q1.size(); ++iq) {
        for (int k = 1; k <= 5; ++k) {
            for (std::size_t ia = 0; ia < kTable2A2.size(); ++ia) {
                for (std::size_t im = 0; im < kMb.size(); ++im) {
                    const double q1 = kTable2Q1[iq];
                    const double a2 = kTable2A2[ia];
                    const double mb = kMb[im];
                    TableCell c{q1, a2, mb, k, "mu_k", std::nullopt, kTable2[iq][k - 1][ia][im], Provenance::Failed,
                                {}};
                    if (ia == 0 && im == 1) {
                        c.note = "reference column header reads Mb=0.02; grid uses Mb=0.2";
                    }
                    try {
                        c.computed = critical_mass_exact(grid_params(q1, a2, mb), k).mu;
                        settle(c, mb == 0.0, t.tolerance);
                    } catch (const std::exception& e) {
                        c.note = c.note.empty() ? e.what() : c.note + "; " + e.what();
                    }
                    t.cells.push_back(std::move(c));
                }
            }
        }
    }
    return t;
}

TableArtifact reproduce_table(std::string_view id) {
    if (id == "table1") {
        return reproduce_table1();
    }
    if (id == "table2") {
        return reproduce_table2();
    }
    throw UsageError("unknown table '" + std::string(id) + "'");
}

std::vector<std::string> table_columns() {
    return {"table", "q1", "a2", "mb", "k", "quantity", "computed", "reference", "abs_delta", "provenance", "note"};
}

void append_rows(Dataset& data, const TableArtifact& table) {
    for (const TableCell& c : table.cells) {
        const auto delta = c.abs_delta();
        data.add_row({table.id, c.q1, c.a2, c.mb, c.k > 0 ? Cell(static_cast<long long>(c.k)) : Cell(),
                      c.quantity, c.computed ? Cell(*c.computed) : Cell(), c.reference,
                      delta ? Cell(*delta) : Cell(), std::string(to_string(c.provenance)), c.note});
    }
}

}  // namespace chermnykh
