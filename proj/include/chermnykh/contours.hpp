#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "chermnykh/params.hpp"

namespace chermnykh {

struct Bounds {
    double xmin = -2.0;
    double xmax = 2.0;
    double ymin = -2.0;
    double ymax = 2.0;

    bool operator==(const Bounds&) const = default;
};

/// Sampling grid: nx * ny nodes spanning the bounds inclusively.
struct GridSpec {
    Bounds bounds;
    std::size_t nx = 512;
    std::size_t ny = 512;

    double hx() const { return (bounds.xmax - bounds.xmin) / static_cast<double>(nx - 1); }
    double hy() const { return (bounds.ymax - bounds.ymin) / static_cast<double>(ny - 1); }
    double x(std::size_t i) const { return bounds.xmin + hx() * static_cast<double>(i); }
    double y(std::size_t j) const { return bounds.ymin + hy() * static_cast<double>(j); }
};

/// Nodes within this many cells of a primary are masked out.
inline constexpr double kMaskCells = 2.0;

/// 2 Omega sampled on a grid, primaries masked (value NaN there).
struct PotentialGrid {
    GridSpec grid;
    std::vector<double> values;  ///< row-major, index j * nx + i
    std::vector<bool> masked;

    double at(std::size_t i, std::size_t j) const { return values[j * grid.nx + i]; }
    bool is_masked(std::size_t i, std::size_t j) const { return masked[j * grid.nx + i]; }
};

PotentialGrid sample_two_omega(const SystemParams& p, const GridSpec& grid);

struct ContourVertex {
    double x = 0.0;
    double y = 0.0;
    /// Bound on |2 Omega(x, y) - C| from linear interpolation along the
    /// crossed edge: h^2 / 8 * max |d^2 (2 Omega) / ds^2|, with a 2x margin.
    double tolerance = 0.0;
};

struct Polyline {
    std::vector<ContourVertex> vertices;
    bool closed = false;  ///< first vertex is not repeated at the end
};

/// Zero-velocity curves 2 Omega(x, y) = C.
struct ContourSet {
    double level = 0.0;
    std::vector<Polyline> polylines;
    GridSpec grid;
    double grid_min = 0.0;  ///< minimum of 2 Omega over unmasked nodes
    double grid_min_x = 0.0;
    double grid_min_y = 0.0;
    std::string diagnostic;  ///< non-empty when no contour could be extracted
};

/// Marching-squares extraction of the level set, saddle cells resolved by
/// the cell-average rule, segments chained through shared grid edges.
/// Cells touching a masked node are skipped.  Requires nx, ny >= 64.
ContourSet zvc_contours(const SystemParams& p, double level, const GridSpec& grid);

/// Even-odd point-in-polygon test on a closed polyline.
bool contains(const Polyline& poly, double x, double y);

}  // namespace chermnykh
