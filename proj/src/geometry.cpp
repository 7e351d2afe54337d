#include "om/geometry.hpp"

#include "om/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace om {

double distance(const PlanarPoint& a, const PlanarPoint& b) noexcept {
    return std::hypot(a.re - b.re, a.im - b.im);
}

PointSet::PointSet(std::vector<PlanarPoint> points, double merge_tol) {
    if (points.empty()) fail(errc::empty_input, "point set must be nonempty");
    merge_map_.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::size_t rep = points_.size();
        for (std::size_t k = 0; k < points_.size(); ++k) {
            if (distance(points_[k], points[i]) <= merge_tol) {
                rep = k;
                break;
            }
        }
        if (rep == points_.size()) points_.push_back(points[i]);
        merge_map_[i] = rep;
    }
}

double PointSet::dist_to(const PlanarPoint& p) const noexcept {
    double best = std::numeric_limits<double>::infinity();
    for (const PlanarPoint& q : points_) best = std::min(best, distance(p, q));
    return best;
}

DistanceMatrix pairwise_distances(const PointSet& X, const PointSet& Y) {
    DistanceMatrix d(X.size(), std::vector<double>(Y.size(), 0.0));
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < Y.size(); ++j)
            d[i][j] = distance(X[i], Y[j]);
    return d;
}

IndexSet within_radius(const IndexSet& A, const DistanceMatrix& cross, double r) {
    if (cross.empty()) return {};
    const std::size_t n = cross.front().size();
    std::vector<char> hit(n, 0);
    for (std::size_t i : A) {
        for (std::size_t j = 0; j < n; ++j) {
            if (cross[i][j] <= r) hit[j] = 1;
        }
    }
    IndexSet out;
    for (std::size_t j = 0; j < n; ++j)
        if (hit[j]) out.push_back(j);
    return out;
}

double directed_hausdorff(const PointSet& Y, const PointSet& X) {
    double worst = 0.0;
    for (const PlanarPoint& q : Y.points()) worst = std::max(worst, X.dist_to(q));
    return worst;
}

double hausdorff(const PointSet& X, const PointSet& Y) {
    return std::max(directed_hausdorff(Y, X), directed_hausdorff(X, Y));
}

double set_distance(const PointSet& X, const PointSet& Y) {
    double best = std::numeric_limits<double>::infinity();
    for (const PlanarPoint& p : X.points()) best = std::min(best, Y.dist_to(p));
    return best;
}

double diameter(const PointSet& X) {
    double d = 0.0;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = i + 1; j < X.size(); ++j)
            d = std::max(d, distance(X[i], X[j]));
    return d;
}

std::vector<IndexSet> eps_components(const std::vector<PlanarPoint>& pts, double eps) {
    const std::size_t n = pts.size();
    // Union-find over the eps-neighbour graph.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t a) {
        while (parent[a] != a) {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        return a;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (distance(pts[i], pts[j]) <= eps) parent[find(i)] = find(j);

    std::vector<IndexSet> comps;
    std::vector<std::ptrdiff_t> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find(i);
        if (slot[root] < 0) {
            slot[root] = static_cast<std::ptrdiff_t>(comps.size());
            comps.emplace_back();
        }
        comps[static_cast<std::size_t>(slot[root])].push_back(i);
    }
    return comps;
}

std::vector<IndexSet> eps_components(const PointSet& X, double eps) {
    return eps_components(X.points(), eps);
}

} // namespace om
