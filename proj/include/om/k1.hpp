// Complement-region analysis.  The plane minus the two supports is sampled on
// a half-pitch cell grid; cells within the wall radius h of either support
// are blocked, the rest are flood-filled into connected components (one
// unbounded outer region plus the bounded holes).  Winding-style labels
// supplied per bounded component feed the mismatch bounds rho_x, rho_y,
// rho_1 and the two-sided distance interval.
#pragma once

#include "om/metrics.hpp"

#include <map>
#include <string>
#include <vector>

namespace om {

struct ComponentGrid {
    double h = 0.0;      // wall radius (input pitch)
    double pitch = 0.0;  // cell pitch (h / 2)
    double x0 = 0.0, y0 = 0.0;
    std::size_t nx = 0, ny = 0;

    struct Component {
        std::string id;
        bool bounded = true;
        std::size_t representative = 0; // smallest row-major cell index
        std::vector<std::size_t> cells;
    };

    // Bounded components sorted by representative, then the unbounded region.
    std::vector<Component> components;
    // Per cell: index into `components`, or -1 for wall cells.
    std::vector<int> cell_component;
    // Per cell: distance from the cell centre to each support.
    std::vector<double> dist_x, dist_y;

    PlanarPoint cell_centre(std::size_t cell) const {
        return {x0 + static_cast<double>(cell % nx) * pitch,
                y0 + static_cast<double>(cell / nx) * pitch};
    }
};

// Throws errc::resolution_too_coarse when some support gap falls in the
// ambiguous band (2h, 2h + pitch]: such a passage may or may not be resolved
// by cells of this size.
ComponentGrid complement_components(const PointSet& X, const PointSet& Y, double h);

// Per component id: the label vectors attached to x and to y.
using K1Labels = std::map<std::string, std::pair<std::vector<Int>, std::vector<Int>>>;

struct RhoValues {
    double rho_x = 0.0;  // sup over mismatched cells of dist(., X)
    double rho_y = 0.0;
    double rho_1 = 0.0;  // sup of dist(., X) + dist(., Y)
    double rho = 0.0;    // max(hausdorff, rho_1)
    double grid_error = 0.0;
};

RhoValues rho_bounds(const ComponentGrid& grid, const K1Labels& labels,
                     const PointSet& X, const PointSet& Y);

struct PairBounds {
    double D1 = 0.0;
    double D2_lower = 0.0;
    double D2_upper = 0.0;
};

PairBounds mt2_bounds(const MetricReport& metrics, double rho_x, double rho_y);

struct Interval {
    double lower = 0.0;
    double upper = 0.0;
};

// Combined two-sided interval; inconsistent endpoints (beyond tol plus the
// sampling slack) raise errc::inconsistent_interval.
Interval mt3_interval(const MetricReport& metrics, const RhoValues& rho,
                      double C, double tol);

} // namespace om
