// Planar point sets and the small amount of metric geometry everything else
// is built on: pairwise distances, radius neighbourhoods, directed/symmetric
// Hausdorff distances, and epsilon-connectivity components.
#pragma once

#include <cstddef>
#include <vector>

namespace om {

struct PlanarPoint {
    double re = 0.0;
    double im = 0.0;
};

double distance(const PlanarPoint& a, const PlanarPoint& b) noexcept;

// Indices into a PointSet, kept sorted ascending.
using IndexSet = std::vector<std::size_t>;

// row i, column j -> distance(X[i], Y[j])
using DistanceMatrix = std::vector<std::vector<double>>;

// A finite nonempty set of planar points.  Points closer than merge_tol are
// collapsed onto the first representative at construction.
class PointSet {
public:
    static constexpr double kDefaultMergeTol = 1e-12;

    explicit PointSet(std::vector<PlanarPoint> points,
                      double merge_tol = kDefaultMergeTol);

    std::size_t size() const noexcept { return points_.size(); }
    const PlanarPoint& operator[](std::size_t i) const { return points_[i]; }
    const std::vector<PlanarPoint>& points() const noexcept { return points_; }

    // For each input index, the index of the representative it merged into.
    const std::vector<std::size_t>& merge_map() const noexcept { return merge_map_; }

    double dist_to(const PlanarPoint& p) const noexcept;

private:
    std::vector<PlanarPoint> points_;
    std::vector<std::size_t> merge_map_;
};

DistanceMatrix pairwise_distances(const PointSet& X, const PointSet& Y);

// Indices j with dist(Y[j], X[i]) <= r for some i in A.
IndexSet within_radius(const IndexSet& A, const DistanceMatrix& cross, double r);

// sup_{q in Y} dist(q, X)
double directed_hausdorff(const PointSet& Y, const PointSet& X);

double hausdorff(const PointSet& X, const PointSet& Y);

// Minimum pairwise distance between the two sets.
double set_distance(const PointSet& X, const PointSet& Y);

double diameter(const PointSet& X);

// Partition of indices into eps-chain components: p, q share a component when
// a chain of hops each of length <= eps joins them.  Components are sorted by
// smallest member.
std::vector<IndexSet> eps_components(const PointSet& X, double eps);

// Convenience: eps-connectivity of a bare point list.
std::vector<IndexSet> eps_components(const std::vector<PlanarPoint>& pts, double eps);

} // namespace om
