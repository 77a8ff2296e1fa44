#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chermnykh/output.hpp"

namespace chermnykh {

enum class Provenance {
    Reproduced,    ///< normative cell, within tolerance of the reference value
    Mismatch,      ///< normative cell, outside tolerance
    NonNormative,  ///< compared only
    Failed,        ///< computation raised an error
};

std::string_view to_string(Provenance p);

struct TableCell {
    double q1 = 1.0;
    double a2 = 0.0;
    double mb = 0.0;
    int k = 0;             ///< resonance order (table2), 0 otherwise
    std::string quantity;  ///< omega1, omega2 or mu_k
    std::optional<double> computed;
    double reference = 0.0;
    Provenance provenance = Provenance::Failed;
    std::string note;

    std::optional<double> abs_delta() const;
};

struct TableArtifact {
    std::string id;  ///< table1 or table2
    double tolerance = 0.0;
    std::vector<TableCell> cells;
};

/// Frequencies at L4 over A2 x q1 x Mb, mu = 0.025, rc = 0.8, T = 0.01.
/// Cells with A2 > 0 or Mb > 0 are non-normative.
TableArtifact reproduce_table1();

/// Closed-form resonance masses over q1 x k x (A2, Mb), rc = 0.8, T = 0.01.
/// Cells with Mb > 0 are non-normative.
TableArtifact reproduce_table2();

/// id is table1 or table2.
TableArtifact reproduce_table(std::string_view id);

/// Long-format rows: table, q1, a2, mb, k, quantity, computed, reference,
/// abs_delta, provenance, note.
void append_rows(Dataset& data, const TableArtifact& table);
std::vector<std::string> table_columns();

}  // namespace chermnykh
