#include "om/k1.hpp"

#include "om/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace om {
namespace {

constexpr std::size_t kMaxCells = 4'000'000;

double min_distance_to(const std::vector<PlanarPoint>& pts, PlanarPoint p) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& q : pts) best = std::min(best, distance(p, q));
    return best;
}

} // namespace

ComponentGrid complement_components(const PointSet& X, const PointSet& Y, double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        fail(errc::invalid_pitch, "wall radius must be positive and finite");
    if (X.size() == 0 || Y.size() == 0)
        fail(errc::empty_input, "complement analysis needs nonempty supports");

    std::vector<PlanarPoint> all(X.points().begin(), X.points().end());
    all.insert(all.end(), Y.points().begin(), Y.points().end());

    // A gap slightly wider than the wall diameter may or may not survive
    // blocking, depending on where cell centres land; refuse to guess.
    const double pitch = h / 2.0;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            double d = distance(all[i], all[j]);
            if (d > 2.0 * h && d <= 2.0 * h + pitch)
                fail(errc::resolution_too_coarse,
                     "support gap of width " + std::to_string(d) +
                         " is unresolved at wall radius " + std::to_string(h));
        }

    double lo_x = all[0].re, hi_x = all[0].re;
    double lo_y = all[0].im, hi_y = all[0].im;
    for (const auto& p : all) {
        lo_x = std::min(lo_x, p.re);
        hi_x = std::max(hi_x, p.re);
        lo_y = std::min(lo_y, p.im);
        hi_y = std::max(hi_y, p.im);
    }
    const double margin = 4.0 * h;
    lo_x -= margin;
    lo_y -= margin;
    hi_x += margin;
    hi_y += margin;

    const double span_x = (hi_x - lo_x) / pitch;
    const double span_y = (hi_y - lo_y) / pitch;
    if (span_x > 65535.0 || span_y > 65535.0)
        fail(errc::invalid_pitch, "wall radius is too small for the support extent");
    ComponentGrid grid;
    grid.h = h;
    grid.pitch = pitch;
    grid.x0 = lo_x;
    grid.y0 = lo_y;
    grid.nx = static_cast<std::size_t>(span_x) + 2;
    grid.ny = static_cast<std::size_t>(span_y) + 2;
    if (grid.nx * grid.ny > kMaxCells)
        fail(errc::invalid_pitch, "complement grid exceeds the cell budget");

    const std::size_t total = grid.nx * grid.ny;
    grid.cell_component.assign(total, -1);
    grid.dist_x.resize(total);
    grid.dist_y.resize(total);
    std::vector<char> open(total, 0);
    for (std::size_t c = 0; c < total; ++c) {
        PlanarPoint p = grid.cell_centre(c);
        grid.dist_x[c] = min_distance_to(X.points(), p);
        grid.dist_y[c] = min_distance_to(Y.points(), p);
        open[c] = std::min(grid.dist_x[c], grid.dist_y[c]) > h ? 1 : 0;
    }

    // Flood fill with an explicit stack; 4-connectivity.
    std::vector<std::size_t> stack;
    int next_id = 0;
    for (std::size_t seed = 0; seed < total; ++seed) {
        if (!open[seed] || grid.cell_component[seed] >= 0) continue;
        ComponentGrid::Component comp;
        comp.representative = seed;
        bool touches_border = false;
        stack.assign(1, seed);
        grid.cell_component[seed] = next_id;
        while (!stack.empty()) {
            std::size_t c = stack.back();
            stack.pop_back();
            comp.cells.push_back(c);
            std::size_t ix = c % grid.nx, iy = c / grid.nx;
            if (ix == 0 || iy == 0 || ix + 1 == grid.nx || iy + 1 == grid.ny)
                touches_border = true;
            const std::size_t nbrs[4] = {c - 1, c + 1, c - grid.nx, c + grid.nx};
            const bool ok[4] = {ix > 0, ix + 1 < grid.nx, iy > 0, iy + 1 < grid.ny};
            for (int k = 0; k < 4; ++k) {
                if (!ok[k]) continue;
                std::size_t n = nbrs[k];
                if (open[n] && grid.cell_component[n] < 0) {
                    grid.cell_component[n] = next_id;
                    stack.push_back(n);
                }
            }
        }
        std::sort(comp.cells.begin(), comp.cells.end());
        comp.representative = comp.cells.front();
        comp.bounded = !touches_border;
        grid.components.push_back(std::move(comp));
        ++next_id;
    }

    // The inflated bounding box leaves a free ring, so exactly one component
    // reaches the border.
    std::size_t unbounded = 0;
    for (const auto& c : grid.components)
        if (!c.bounded) ++unbounded;
    if (unbounded != 1)
        fail(errc::invariant_violation,
             "expected exactly one unbounded complement region, found " +
                 std::to_string(unbounded));

    // Stable ids: bounded components ordered by representative cell, then the
    // outer region.  Remap cell ids to match.
    std::vector<std::size_t> order(grid.components.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ca = grid.components[a];
        const auto& cb = grid.components[b];
        if (ca.bounded != cb.bounded) return ca.bounded;
        return ca.representative < cb.representative;
    });
    std::vector<ComponentGrid::Component> sorted;
    std::vector<int> remap(grid.components.size());
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        remap[order[pos]] = static_cast<int>(pos);
        sorted.push_back(std::move(grid.components[order[pos]]));
        auto& comp = sorted.back();
        comp.id = comp.bounded ? "component-" + std::to_string(pos) : "unbounded";
    }
    grid.components = std::move(sorted);
    for (auto& id : grid.cell_component)
        if (id >= 0) id = remap[static_cast<std::size_t>(id)];
    return grid;
}

RhoValues rho_bounds(const ComponentGrid& grid, const K1Labels& labels,
                     const PointSet& X, const PointSet& Y) {
    for (const auto& [id, lab] : labels) {
        bool known = false;
        for (const auto& comp : grid.components)
            if (comp.id == id) {
                known = true;
                if (!comp.bounded && lab.first != lab.second)
                    fail(errc::schema_violation,
                         "the unbounded region must carry matching labels");
                break;
            }
        if (!known)
            fail(errc::schema_violation, "label refers to unknown region '" + id + "'");
    }

    RhoValues out;
    out.grid_error = 2.0 * grid.h; // additive sampling slack of the cell sweep
    for (const auto& comp : grid.components) {
        if (!comp.bounded) continue;
        auto it = labels.find(comp.id);
        if (it == labels.end())
            fail(errc::missing_label, "bounded region '" + comp.id + "' has no label");
        if (it->second.first == it->second.second) continue;
        for (std::size_t c : comp.cells) {
            out.rho_x = std::max(out.rho_x, grid.dist_x[c]);
            out.rho_y = std::max(out.rho_y, grid.dist_y[c]);
            out.rho_1 = std::max(out.rho_1, grid.dist_x[c] + grid.dist_y[c]);
        }
    }
    out.rho = std::max(hausdorff(X, Y), out.rho_1);
    return out;
}

PairBounds mt2_bounds(const MetricReport& metrics, double rho_x, double rho_y) {
    PairBounds out;
    const double lo = std::min(rho_x, rho_y);
    const double hi = std::max(rho_x, rho_y);
    out.D1 = std::max(metrics.D_upper, hi) + lo;
    out.D2_lower = metrics.dce.lower + 2.0 * lo;
    out.D2_upper = metrics.dce.upper + 2.0 * lo;
    return out;
}

Interval mt3_interval(const MetricReport& metrics, const RhoValues& rho,
                      double C, double tol) {
    if (!(C > 0.0) || C > 1.0)
        fail(errc::invalid_option, "distortion constant must lie in (0, 1]");
    PairBounds pb = mt2_bounds(metrics, rho.rho_x, rho.rho_y);
    Interval out;
    out.lower = std::max({C * metrics.D_T, metrics.d_T, rho.rho_1});
    out.upper = std::min(pb.D1, pb.D2_upper);
    const double slack = tol + rho.grid_error + metrics.disc_error;
    if (out.lower > out.upper + slack)
        fail(errc::inconsistent_interval,
             "lower bound " + std::to_string(out.lower) + " exceeds upper bound " +
                 std::to_string(out.upper) + " beyond the allowed slack");
    return out;
}

} // namespace om
