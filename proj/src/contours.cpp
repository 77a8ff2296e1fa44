#include "chermnykh/contours.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "chermnykh/errors.hpp"
#include "chermnykh/potential.hpp"

namespace chermnykh {

PotentialGrid sample_two_omega(const SystemParams& p, const GridSpec& grid) {
    if (grid.nx < 64 || grid.ny < 64) {
        throw DomainError("contour grid must be at least 64 x 64");
    }
    const Bounds& b = grid.bounds;
    if (!(b.xmax > b.xmin) || !(b.ymax > b.ymin)) {
        throw DomainError("contour bounds are empty");
    }
    PotentialGrid out;
    out.grid = grid;
    out.values.assign(grid.nx * grid.ny, std::numeric_limits<double>::quiet_NaN());
    out.masked.assign(grid.nx * grid.ny, false);

    const double mask_radius = kMaskCells * std::max(grid.hx(), grid.hy());
    const double p1x = -p.mu();
    const double p2x = 1.0 - p.mu();
    for (std::size_t j = 0; j < grid.ny; ++j) {
        const double y = grid.y(j);
        for (std::size_t i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i);
            const std::size_t k = j * grid.nx + i;
            if (std::hypot(x - p1x, y) <= mask_radius || std::hypot(x - p2x, y) <= mask_radius) {
                out.masked[k] = true;
                continue;
            }
            out.values[k] = 2.0 * omega(p, x, y);
        }
    }
    return out;
}

namespace {

struct Crossing {
    std::size_t edge = 0;
    ContourVertex vertex;
};

struct Segment {
    Crossing a;
    Crossing b;
};

// Edge ids: horizontal edge from node (i, j) to (i+1, j) is 2 k, vertical
// edge from (i, j) to (i, j+1) is 2 k + 1, with k = j * nx + i.
std::size_t horizontal_edge(const GridSpec& g, std::size_t i, std::size_t j) { return 2 * (j * g.nx + i); }
std::size_t vertical_edge(const GridSpec& g, std::size_t i, std::size_t j) { return 2 * (j * g.nx + i) + 1; }

double edge_tolerance(const SystemParams& p, double xa, double ya, double xb, double yb, bool horizontal) {
    constexpr int kProbes = 5;
    double curvature = 0.0;
    for (int s = 0; s < kProbes; ++s) {
        const double t = static_cast<double>(s) / (kProbes - 1);
        const Hessian h = omega_hessian(p, xa + t * (xb - xa), ya + t * (yb - ya));
        curvature = std::max(curvature, std::abs(2.0 * (horizontal ? h.xx : h.yy)));
    }
    const double len = std::hypot(xb - xa, yb - ya);
    return 2.0 * 0.125 * len * len * curvature;
}

Crossing cross(const SystemParams& p, const PotentialGrid& f, double level, std::size_t ia, std::size_t ja,
               std::size_t ib, std::size_t jb) {
    const GridSpec& g = f.grid;
    const double va = f.at(ia, ja);
    const double vb = f.at(ib, jb);
    const double t = (level - va) / (vb - va);
    const double xa = g.x(ia), ya = g.y(ja), xb = g.x(ib), yb = g.y(jb);
    const bool horizontal = ja == jb;
    Crossing c;
    c.edge = horizontal ? horizontal_edge(g, std::min(ia, ib), ja) : vertical_edge(g, ia, std::min(ja, jb));
    c.vertex.x = xa + t * (xb - xa);
    c.vertex.y = ya + t * (yb - ya);
    c.vertex.tolerance = edge_tolerance(p, xa, ya, xb, yb, horizontal);
    return c;
}

std::vector<Segment> march(const SystemParams& p, const PotentialGrid& f, double level) {
    const GridSpec& g = f.grid;
    std::vector<Segment> segs;
    for (std::size_t j = 0; j + 1 < g.ny; ++j) {
        for (std::size_t i = 0; i + 1 < g.nx; ++i) {
            if (f.is_masked(i, j) || f.is_masked(i + 1, j) || f.is_masked(i + 1, j + 1) || f.is_masked(i, j + 1)) {
                continue;
            }
            // Corners counter-clockwise from bottom-left.
            const std::array<std::pair<std::size_t, std::size_t>, 4> corner{
                {{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
            std::array<bool, 4> above{};
            double sum = 0.0;
            for (std::size_t c = 0; c < 4; ++c) {
                const double v = f.at(corner[c].first, corner[c].second);
                above[c] = v >= level;
                sum += v;
            }
            // Edge e joins corner e and corner e+1: bottom, right, top, left.
            std::array<int, 4> crossed{};
            int n = 0;
            for (int e = 0; e < 4; ++e) {
                if (above[e] != above[(e + 1) % 4]) {
                    crossed[n++] = e;
                }
            }
            if (n == 0) {
                continue;
            }
            auto make = [&](int e) {
                const auto [ia, ja] = corner[e];
                const auto [ib, jb] = corner[(e + 1) % 4];
                return cross(p, f, level, ia, ja, ib, jb);
            };
            if (n == 2) {
                segs.push_back({make(crossed[0]), make(crossed[1])});
                continue;
            }
            // Saddle: the corners on the side the centre is not on get cut off.
            const bool centre_above = 0.25 * sum >= level;
            // Corner c is cut off by the segment joining edges c-1 (previous) and c.
            for (int c = 0; c < 4; ++c) {
                if (above[c] != centre_above) {
                    segs.push_back({make((c + 3) % 4), make(c)});
                }
            }
        }
    }
    return segs;
}

void append_vertex(Polyline& poly, const ContourVertex& v) {
    constexpr double kMerge = 1e-12;
    if (!poly.vertices.empty()) {
        const ContourVertex& last = poly.vertices.back();
        if (std::abs(last.x - v.x) <= kMerge && std::abs(last.y - v.y) <= kMerge) {
            return;
        }
    }
    poly.vertices.push_back(v);
}

std::vector<Polyline> chain(const std::vector<Segment>& segs) {
    std::unordered_map<std::size_t, std::array<std::ptrdiff_t, 2>> by_edge;
    by_edge.reserve(2 * segs.size());
    for (std::size_t s = 0; s < segs.size(); ++s) {
        for (std::size_t e : {segs[s].a.edge, segs[s].b.edge}) {
            auto [it, fresh] = by_edge.try_emplace(e, std::array<std::ptrdiff_t, 2>{-1, -1});
            auto& slot = it->second;
            (slot[0] < 0 ? slot[0] : slot[1]) = static_cast<std::ptrdiff_t>(s);
        }
    }
    auto other = [&](std::size_t edge, std::size_t seg) -> std::ptrdiff_t {
        const auto& slot = by_edge.at(edge);
        return slot[0] == static_cast<std::ptrdiff_t>(seg) ? slot[1] : slot[0];
    };

    std::vector<bool> used(segs.size(), false);
    std::vector<Polyline> out;

    auto walk = [&](std::size_t start, std::size_t entry_edge) {
        Polyline poly;
        std::size_t seg = start;
        std::size_t in_edge = entry_edge;
        const Crossing& first = segs[seg].a.edge == in_edge ? segs[seg].a : segs[seg].b;
        append_vertex(poly, first.vertex);
        while (true) {
            used[seg] = true;
            const Crossing& exit = segs[seg].a.edge == in_edge ? segs[seg].b : segs[seg].a;
            const std::ptrdiff_t next = other(exit.edge, seg);
            if (exit.edge == entry_edge && next >= 0 && static_cast<std::size_t>(next) == start) {
                poly.closed = true;
                break;
            }
            append_vertex(poly, exit.vertex);
            if (next < 0 || used[static_cast<std::size_t>(next)]) {
                break;
            }
            seg = static_cast<std::size_t>(next);
            in_edge = exit.edge;
        }
        if (poly.closed && poly.vertices.size() > 1) {
            const ContourVertex& a = poly.vertices.front();
            const ContourVertex& b = poly.vertices.back();
            if (std::abs(a.x - b.x) <= 1e-12 && std::abs(a.y - b.y) <= 1e-12) {
                poly.vertices.pop_back();
            }
        }
        out.push_back(std::move(poly));
    };

    // Open chains start at an edge with a single incident segment.
    for (std::size_t s = 0; s < segs.size(); ++s) {
        if (used[s]) {
            continue;
        }
        for (std::size_t e : {segs[s].a.edge, segs[s].b.edge}) {
            if (!used[s] && other(e, s) < 0) {
                walk(s, e);
            }
        }
    }
    for (std::size_t s = 0; s < segs.size(); ++s) {
        if (!used[s]) {
            walk(s, segs[s].a.edge);
        }
    }
    return out;
}

}  // namespace

ContourSet zvc_contours(const SystemParams& p, double level, const GridSpec& grid) {
    if (!std::isfinite(level)) {
        throw DomainError("contour level must be finite");
    }
    const PotentialGrid f = sample_two_omega(p, grid);

    ContourSet out;
    out.level = level;
    out.grid = grid;
    out.grid_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid.ny; ++j) {
        for (std::size_t i = 0; i < grid.nx; ++i) {
            if (!f.is_masked(i, j) && f.at(i, j) < out.grid_min) {
                out.grid_min = f.at(i, j);
                out.grid_min_x = grid.x(i);
                out.grid_min_y = grid.y(j);
            }
        }
    }
    if (level < out.grid_min) {
        out.diagnostic = "level lies below the grid minimum of 2*Omega";
        return out;
    }
    out.polylines = chain(march(p, f, level));
    if (out.polylines.empty()) {
        out.diagnostic = "level set does not cross the grid";
    }
    return out;
}

bool contains(const Polyline& poly, double x, double y) {
    bool inside = false;
    const auto& v = poly.vertices;
    for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
        if ((v[i].y > y) != (v[j].y > y) &&
            x < (v[j].x - v[i].x) * (y - v[i].y) / (v[j].y - v[i].y) + v[i].x) {
            inside = !inside;
        }
    }
    return inside;
}

}  // namespace chermnykh
