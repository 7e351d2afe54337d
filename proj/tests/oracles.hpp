// Brute-force reference implementations backing the test suite, plus shared
// random-instance generators.  Everything here favours transparency over
// speed: exhaustive subset scans, permutation enumeration, direct definition
// chasing.  The library must agree with these wherever both are defined, so
// none of this may call the code paths it is checking.
#pragma once

#include "om/geometry.hpp"
#include "om/group.hpp"
#include "om/model.hpp"
#include "om/rng.hpp"
#include "om/transport.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

using om::BigInt;
using om::Int;
using om::Rat;

// ---------------------------------------------------------------------------
// Lifts and mass columns.
// ---------------------------------------------------------------------------

// Integer coordinate column of one element: free part, then the torsion
// representatives exactly as given (they are already reduced into [0, order)).
inline std::vector<std::vector<BigInt>> lift(const std::vector<om::GroupElement>& gs) {
    std::vector<std::vector<BigInt>> cols;
    cols.reserve(gs.size());
    for (const om::GroupElement& g : gs) {
        std::vector<BigInt> col;
        col.reserve(g.free.size() + g.torsion.size());
        for (Int v : g.free) col.emplace_back(v);
        for (Int v : g.torsion) col.emplace_back(v);
        cols.push_back(std::move(col));
    }
    return cols;
}

inline std::vector<std::vector<Rat>> trace_columns(const om::AtomicHom& h) {
    std::vector<std::vector<Rat>> cols;
    cols.reserve(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) cols.push_back(h.mass_of(i).coords);
    return cols;
}

template <class T>
inline bool totals_balanced(const std::vector<std::vector<T>>& a_cols,
                            const std::vector<std::vector<T>>& b_cols) {
    const std::size_t width = a_cols.front().size();
    for (std::size_t c = 0; c < width; ++c) {
        T diff{};
        for (const auto& col : a_cols) diff += col[c];
        for (const auto& col : b_cols) diff -= col[c];
        if (diff != T{}) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Hall's condition by exhaustive subset enumeration.
// ---------------------------------------------------------------------------

struct SubsetVerdict {
    bool feasible = true;
    std::vector<std::size_t> subset;  // a violating row set when infeasible
    std::size_t coord = 0;            // coordinate in which it violates
};

// For every nonempty subset A of rows, every coordinate of sum_A a must be
// dominated by the same coordinate of sum over A's admissible columns.
// Assumes balanced totals (checked separately); rows capped at 20.
template <class T>
inline SubsetVerdict subset_hall(const std::vector<std::vector<T>>& a_cols,
                                 const std::vector<std::vector<T>>& b_cols,
                                 const om::PairRelation& R) {
    const std::size_t m = a_cols.size();
    if (m > 20) throw std::logic_error("subset_hall: row count too large for enumeration");
    const std::size_t width = a_cols.front().size();
    for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << m); ++mask) {
        std::vector<std::size_t> A;
        for (std::size_t i = 0; i < m; ++i)
            if (mask & (std::uint32_t(1) << i)) A.push_back(i);
        const om::IndexSet N = R.neighbors(om::IndexSet(A.begin(), A.end()));
        for (std::size_t c = 0; c < width; ++c) {
            T lhs{}, rhs{};
            for (std::size_t i : A) lhs += a_cols[i][c];
            for (std::size_t j : N) rhs += b_cols[j][c];
            if (lhs > rhs) return {false, A, c};
        }
    }
    return {true, {}, 0};
}

// ---------------------------------------------------------------------------
// Bottleneck radius by linear candidate scan over subset_hall.
// ---------------------------------------------------------------------------

template <class T>
inline std::optional<double> bottleneck_radius(const std::vector<std::vector<T>>& a_cols,
                                               const std::vector<std::vector<T>>& b_cols,
                                               const om::DistanceMatrix& cross) {
    std::vector<double> cands{0.0};
    for (const auto& row : cross)
        for (double d : row) cands.push_back(d);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
    for (double r : cands) {
        const om::PairRelation R = om::PairRelation::from_radius(cross, r);
        if (subset_hall(a_cols, b_cols, R).feasible) return r;
    }
    return std::nullopt;
}

inline double trace_bottleneck(const om::AtomicHom& x, const om::AtomicHom& y) {
    const om::DistanceMatrix cross = om::pairwise_distances(x.support(), y.support());
    const auto r = bottleneck_radius(trace_columns(x), trace_columns(y), cross);
    if (!r) throw std::logic_error("trace_bottleneck: no radius admits a coupling");
    return *r;
}

inline double group_bottleneck(const om::AtomicHom& x, const om::AtomicHom& y) {
    const om::DistanceMatrix cross = om::pairwise_distances(x.support(), y.support());
    const auto r = bottleneck_radius(lift(x.classes()), lift(y.classes()), cross);
    if (!r) throw std::logic_error("group_bottleneck: no radius admits a coupling");
    return *r;
}

// ---------------------------------------------------------------------------
// Strict-domination bound by exhaustive proper-subset enumeration.
// ---------------------------------------------------------------------------

// Least candidate radius, at least the covering radius of x's support by y's,
// at which every PROPER nonempty subset of x-atoms has strictly smaller trace
// mass than its radius-neighbourhood among y-atoms, in every coordinate.
// Infinity when even the full relation fails.  Rows capped at 16.
inline double strict_domination_bound(const om::AtomicHom& x, const om::AtomicHom& y) {
    const std::size_t m = x.size();
    if (m > 16) throw std::logic_error("strict_domination_bound: too many atoms");
    const om::DistanceMatrix cross = om::pairwise_distances(x.support(), y.support());
    const double cover = om::directed_hausdorff(y.support(), x.support());

    std::vector<double> cands{cover};
    for (const auto& row : cross)
        for (double d : row)
            if (d > cover) cands.push_back(d);
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());

    const auto ax = trace_columns(x);
    const auto by = trace_columns(y);
    const std::size_t width = ax.front().size();

    for (double r : cands) {
        const om::PairRelation R = om::PairRelation::from_radius(cross, r);
        bool ok = true;
        for (std::uint32_t mask = 1; ok && mask + 1 < (std::uint32_t(1) << m); ++mask) {
            std::vector<std::size_t> A;
            for (std::size_t i = 0; i < m; ++i)
                if (mask & (std::uint32_t(1) << i)) A.push_back(i);
            const om::IndexSet N = R.neighbors(om::IndexSet(A.begin(), A.end()));
            for (std::size_t c = 0; c < width; ++c) {
                Rat lhs(0), rhs(0);
                for (std::size_t i : A) lhs += ax[i][c];
                for (std::size_t j : N) rhs += by[j][c];
                if (!(lhs < rhs)) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return r;
    }
    return std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Exhaustive bottleneck assignment (n! permutations, n <= 9).
// ---------------------------------------------------------------------------

inline double assignment_bottleneck(const std::vector<std::complex<double>>& xs,
                                    const std::vector<std::complex<double>>& ys) {
    if (xs.size() != ys.size()) throw std::logic_error("assignment_bottleneck: size mismatch");
    const std::size_t n = xs.size();
    if (n > 9) throw std::logic_error("assignment_bottleneck: too many points");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(xs[i] - ys[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

// Multiplicity-expanded point list of a matrix-model hom (class = multiple of
// the rank-one generator).
inline std::vector<std::complex<double>> expand_matrix_atoms(const om::AtomicHom& h) {
    std::vector<std::complex<double>> out;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const om::Atom& a = h[i];
        if (a.cls.free.size() != 1 || a.cls.free[0] < 1)
            throw std::logic_error("expand_matrix_atoms: not a matrix-model class");
        for (Int c = 0; c < a.cls.free[0]; ++c)
            out.emplace_back(a.point.re, a.point.im);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Hermitian sorted-eigenvalue distance.
// ---------------------------------------------------------------------------

inline double sorted_hermitian_dist(const Eigen::MatrixXcd& X, const Eigen::MatrixXcd& Y) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ex(X), ey(Y);
    if (ex.info() != Eigen::Success || ey.info() != Eigen::Success)
        throw std::logic_error("sorted_hermitian_dist: eigensolver failed");
    const Eigen::VectorXd a = ex.eigenvalues();  // ascending
    const Eigen::VectorXd b = ey.eigenvalues();
    double worst = 0.0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// ---------------------------------------------------------------------------
// Independent transport-plan verification.  Returns an empty string when the
// plan is sound, otherwise a human-readable defect description.  Stricter
// than the library's own verifier on torsion coordinates: lifted sums must
// reproduce the lifted inputs exactly, not just modulo the orders.
// ---------------------------------------------------------------------------

inline std::string check_plan_group(const om::TransportPlan& plan,
                                    const std::vector<om::GroupElement>& a,
                                    const std::vector<om::GroupElement>& b,
                                    const om::PairRelation& R,
                                    const om::GroupSpec& spec) {
    if (plan.order != om::WeightOrder::Group) return "plan order is not group";
    if (plan.rows != a.size() || plan.cols != b.size()) return "plan shape mismatch";
    if (spec.is_stagewise()) return "stagewise plans are checked case by case";

    const auto a_cols = lift(a);
    const auto b_cols = lift(b);
    const std::size_t width = a_cols.front().size();
    const std::size_t free_width = spec.is_torsion() ? spec.torsion().k : width;

    std::vector<std::vector<BigInt>> row(a.size(), std::vector<BigInt>(width, 0));
    std::vector<std::vector<BigInt>> col(b.size(), std::vector<BigInt>(width, 0));

    for (const om::PlanEntry& e : plan.entries) {
        if (e.i >= plan.rows || e.j >= plan.cols) return "entry index out of range";
        if (!R.contains(e.i, e.j)) return "entry outside the relation";
        std::vector<BigInt> v;
        if (spec.is_torsion()) {
            if (e.lifted.size() != width) return "lifted entry has wrong width";
            for (std::size_t c = 0; c < free_width; ++c)
                if (BigInt(e.cls.free[c]) != e.lifted[c]) return "class free part disagrees with lift";
            for (std::size_t c = free_width; c < width; ++c) {
                const Int order = spec.torsion().orders[c - free_width];
                if (e.lifted[c] % order != e.cls.torsion[c - free_width])
                    return "class torsion part disagrees with lift";
            }
            v = e.lifted;
        } else {
            if (e.cls.free.size() != width) return "entry has wrong width";
            for (Int x : e.cls.free) v.emplace_back(x);
        }
        bool zero = true;
        for (const BigInt& x : v) {
            if (x < 0) return "negative entry";
            zero = zero && x == 0;
        }
        if (zero) return "zero entry present";
        for (std::size_t c = 0; c < width; ++c) {
            row[e.i][c] += v[c];
            col[e.j][c] += v[c];
        }
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        if (row[i] != a_cols[i]) return "row sum differs at index " + std::to_string(i);
    for (std::size_t j = 0; j < b.size(); ++j)
        if (col[j] != b_cols[j]) return "column sum differs at index " + std::to_string(j);
    return {};
}

inline std::string check_plan_trace(const om::TransportPlan& plan,
                                    const std::vector<om::TraceWeight>& a,
                                    const std::vector<om::TraceWeight>& b,
                                    const om::PairRelation& R) {
    if (plan.order != om::WeightOrder::Trace) return "plan order is not trace";
    if (plan.rows != a.size() || plan.cols != b.size()) return "plan shape mismatch";
    const std::size_t m = a.front().coords.size();
    std::vector<std::vector<Rat>> row(a.size(), std::vector<Rat>(m, Rat(0)));
    std::vector<std::vector<Rat>> col(b.size(), std::vector<Rat>(m, Rat(0)));
    for (const om::PlanEntry& e : plan.entries) {
        if (e.i >= plan.rows || e.j >= plan.cols) return "entry index out of range";
        if (!R.contains(e.i, e.j)) return "entry outside the relation";
        if (e.mass.coords.size() != m) return "entry has wrong width";
        bool zero = true;
        for (const Rat& v : e.mass.coords) {
            if (v < 0) return "negative entry";
            zero = zero && v == 0;
        }
        if (zero) return "zero entry present";
        for (std::size_t c = 0; c < m; ++c) {
            row[e.i][c] += e.mass.coords[c];
            col[e.j][c] += e.mass.coords[c];
        }
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        if (row[i] != a[i].coords) return "row sum differs at index " + std::to_string(i);
    for (std::size_t j = 0; j < b.size(); ++j)
        if (col[j] != b[j].coords) return "column sum differs at index " + std::to_string(j);
    return {};
}

// ---------------------------------------------------------------------------
// Disc-dilation need of a single centre, straight from the definition: for
// each disc radius (a distance from the centre to some x-atom), the smallest
// enlargement after which the y-atoms inside dominate the x-atoms inside.
// Trace order entrywise on rationals; cone order through the group order.
// Only simplicial/torsion groups (always-decided comparisons) are supported.
// ---------------------------------------------------------------------------

struct CentreNeed {
    double trace = 0.0;
    double cone = 0.0;
};

inline CentreNeed centre_need(const om::PlanarPoint& l, const om::AtomicHom& x,
                              const om::AtomicHom& y, const om::ModelSpec& model) {
    if (model.group.is_stagewise())
        throw std::logic_error("centre_need: stagewise groups not supported");
    std::vector<double> dx, dy;
    for (std::size_t i = 0; i < x.size(); ++i) dx.push_back(om::distance(l, x.support()[i]));
    for (std::size_t j = 0; j < y.size(); ++j) dy.push_back(om::distance(l, y.support()[j]));
    std::vector<double> radii = dx;
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    std::vector<double> ys = dy;
    std::sort(ys.begin(), ys.end());

    CentreNeed need;
    for (double d : radii) {
        om::TraceWeight in_t = om::weight_zero(model.trace_count);
        om::GroupElement in_c = om::zero_element(model.group);
        for (std::size_t i = 0; i < x.size(); ++i)
            if (dx[i] <= d) {
                in_t = om::weight_add(in_t, x.mass_of(i));
                in_c = om::add(in_c, x[i].cls, model.group);
            }
        // trace direction
        if (!om::weight_is_zero(in_t)) {
            bool done = false;
            for (double e : ys) {
                om::TraceWeight cover = om::weight_zero(model.trace_count);
                for (std::size_t j = 0; j < y.size(); ++j)
                    if (dy[j] <= e) cover = om::weight_add(cover, y.mass_of(j));
                if (om::weight_leq(in_t, cover)) {
                    need.trace = std::max(need.trace, e - d);
                    done = true;
                    break;
                }
            }
            if (!done) throw std::logic_error("centre_need: trace totals cannot cover a disc");
        }
        // cone direction
        if (om::is_positive(in_c, model.group) != om::Positivity::Zero) {
            bool done = false;
            for (double e : ys) {
                om::GroupElement cover = om::zero_element(model.group);
                for (std::size_t j = 0; j < y.size(); ++j)
                    if (dy[j] <= e) cover = om::add(cover, y[j].cls, model.group);
                if (om::leq(in_c, cover, model.group) == om::Ternary::True) {
                    need.cone = std::max(need.cone, e - d);
                    done = true;
                    break;
                }
            }
            if (!done) throw std::logic_error("centre_need: cone totals cannot cover a disc");
        }
    }
    need.trace = std::max(need.trace, 0.0);
    need.cone = std::max(need.cone, 0.0);
    return need;
}

// Max need over a sampled centre list, both directions.  A lower bound for
// the true disc metrics, so `library value + error bound` must dominate it.
inline CentreNeed sampled_disc_lower(const std::vector<om::PlanarPoint>& centres,
                                     const om::AtomicHom& x, const om::AtomicHom& y,
                                     const om::ModelSpec& model) {
    CentreNeed worst;
    for (const om::PlanarPoint& l : centres) {
        const CentreNeed f = centre_need(l, x, y, model);
        const CentreNeed b = centre_need(l, y, x, model);
        worst.trace = std::max({worst.trace, f.trace, b.trace});
        worst.cone = std::max({worst.cone, f.cone, b.cone});
    }
    return worst;
}

}  // namespace oracle

// ===========================================================================
// Shared random-instance generators.  All deterministic via RandomStream.
// ===========================================================================

namespace testgen {

using om::Int;
using om::RandomStream;

inline Eigen::MatrixXcd random_unitary(RandomStream& rng, std::size_t n) {
    Eigen::MatrixXcd G(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) G(r, c) = rng.normal_complex();
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(G);
    Eigen::MatrixXcd Q = qr.householderQ();
    const Eigen::MatrixXcd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (std::size_t c = 0; c < n; ++c) {
        const std::complex<double> d = R(c, c);
        const double mag = std::abs(d);
        if (mag > 0) Q.col(c) *= d / mag;
    }
    return Q;
}

// Normal matrix with the given eigenvalues in a random unitary basis.
inline Eigen::MatrixXcd normal_with_spectrum(RandomStream& rng,
                                             const std::vector<std::complex<double>>& eig) {
    const std::size_t n = eig.size();
    const Eigen::MatrixXcd Q = random_unitary(rng, n);
    Eigen::VectorXcd d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = eig[i];
    return Q * d.asDiagonal() * Q.adjoint();
}

inline Eigen::MatrixXcd random_normal(RandomStream& rng, std::size_t n, double spread = 1.0) {
    std::vector<std::complex<double>> eig(n);
    for (auto& v : eig) v = spread * rng.normal_complex();
    return normal_with_spectrum(rng, eig);
}

inline Eigen::MatrixXcd random_hermitian(RandomStream& rng, std::size_t n, double spread = 1.0) {
    std::vector<std::complex<double>> eig(n);
    for (auto& v : eig) v = std::complex<double>(spread * rng.normal(), 0.0);
    return normal_with_spectrum(rng, eig);
}

// Distinct planar points with a minimum pairwise separation.
inline std::vector<om::PlanarPoint> random_points(RandomStream& rng, std::size_t count,
                                                  double sep = 0.05, double box = 1.0) {
    std::vector<om::PlanarPoint> pts;
    int tries = 0;
    while (pts.size() < count) {
        if (++tries > 100000) throw std::logic_error("random_points: separation unreachable");
        om::PlanarPoint p{rng.uniform(-box, box), rng.uniform(-box, box)};
        bool ok = true;
        for (const auto& q : pts) ok = ok && om::distance(p, q) >= sep;
        if (ok) pts.push_back(p);
    }
    return pts;
}

// `total` split into `parts` nonnegative summands, multinomially.
inline std::vector<Int> random_split(RandomStream& rng, Int total, std::size_t parts) {
    std::vector<Int> out(parts, 0);
    for (Int t = 0; t < total; ++t) ++out[rng.below(parts)];
    return out;
}

// ---------------------------------------------------------------------------
// Atomic homs over shared models.
// ---------------------------------------------------------------------------

// k traces over Z^k with the pairing row s = e_s / unit[s]; every trace sends
// the unit to 1 and atom masses are the per-coordinate shares.
inline om::ModelSpec diagonal_model(const std::vector<Int>& unit_free) {
    om::ModelSpec m;
    m.trace_count = unit_free.size();
    m.group.presentation = om::SimplicialSpec{unit_free.size()};
    m.unit.free = unit_free;
    m.pairing.assign(unit_free.size(), std::vector<om::Rat>(unit_free.size(), om::Rat(0)));
    for (std::size_t s = 0; s < unit_free.size(); ++s)
        m.pairing[s][s] = om::Rat(1, static_cast<long>(unit_free[s]));
    return m;
}

// Same trace structure over Z^k + torsion; torsion coordinates of the unit
// are the given representatives.
inline om::ModelSpec diagonal_torsion_model(const std::vector<Int>& unit_free,
                                            const std::vector<Int>& unit_torsion,
                                            const std::vector<Int>& orders) {
    om::ModelSpec m = diagonal_model(unit_free);
    m.group.presentation = om::TorsionSpec{unit_free.size(), orders};
    m.unit.torsion = unit_torsion;
    return m;
}

// Splits the unit coordinatewise across atoms at fresh random points.  Every
// atom is seeded with one unit of free mass (so diagonal pairings keep each
// atom visible) and the rest is scattered randomly; the atom count is capped
// by the total free mass available.  Torsion totals must stay below their
// orders so representatives add without wrapping.
inline om::AtomicHom random_model_hom(RandomStream& rng, const om::ModelSpec& model,
                                      std::size_t natoms) {
    const std::size_t k = model.group.free_rank();
    const std::size_t t = model.group.torsion_rank();
    Int total_free = 0;
    for (std::size_t c = 0; c < k; ++c) total_free += model.unit.free[c];
    if (total_free <= 0) throw std::logic_error("random_model_hom: unit has no free mass");
    natoms = std::min(natoms, static_cast<std::size_t>(total_free));

    std::vector<std::vector<Int>> share(natoms, std::vector<Int>(k + t, 0));
    std::vector<Int> used(k, 0);
    std::size_t seed_coord = 0;
    for (std::size_t i = 0; i < natoms; ++i) {
        while (used[seed_coord] >= model.unit.free[seed_coord])
            seed_coord = (seed_coord + 1) % k;
        share[i][seed_coord] += 1;
        used[seed_coord] += 1;
    }
    for (std::size_t c = 0; c < k; ++c) {
        const std::vector<Int> parts =
            random_split(rng, model.unit.free[c] - used[c], natoms);
        for (std::size_t i = 0; i < natoms; ++i) share[i][c] += parts[i];
    }
    for (std::size_t c = 0; c < t; ++c) {
        const std::vector<Int> parts = random_split(rng, model.unit.torsion[c], natoms);
        for (std::size_t i = 0; i < natoms; ++i) share[i][k + c] = parts[i];
    }
    const std::vector<om::PlanarPoint> pts = random_points(rng, natoms);
    std::vector<om::Atom> atoms(natoms);
    for (std::size_t i = 0; i < natoms; ++i) {
        atoms[i].point = pts[i];
        atoms[i].cls.free.assign(share[i].begin(), share[i].begin() + k);
        atoms[i].cls.torsion.assign(share[i].begin() + k, share[i].end());
    }
    return om::AtomicHom::make(std::move(atoms), model);
}

// Matrix-model hom: multiplicities >= 1 summing to n at distinct points.
inline om::AtomicHom random_matrix_hom(RandomStream& rng, const om::ModelSpec& model,
                                       std::size_t n, std::size_t natoms) {
    if (natoms == 0 || natoms > n) throw std::logic_error("random_matrix_hom: bad atom count");
    std::vector<Int> mult(natoms, 1);
    const std::vector<Int> extra = random_split(rng, static_cast<Int>(n - natoms), natoms);
    for (std::size_t i = 0; i < natoms; ++i) mult[i] += extra[i];
    const std::vector<om::PlanarPoint> pts = random_points(rng, natoms);
    std::vector<om::Atom> atoms(natoms);
    for (std::size_t i = 0; i < natoms; ++i) {
        atoms[i].point = pts[i];
        atoms[i].cls.free = {mult[i]};
    }
    return om::AtomicHom::make(std::move(atoms), model);
}

// ---------------------------------------------------------------------------
// Random feasibility instances for the flow-vs-enumeration comparison.
// ---------------------------------------------------------------------------

struct HallInstance {
    std::vector<om::GroupElement> a, b;
    om::PairRelation R;
    om::GroupSpec spec;
};

// Entries in {0,1,2}, per-coordinate totals balanced by construction (the
// column families are two multinomial splits of the same totals).  Torsion
// orders are chosen far above any attainable sum, so the representatives add
// without wrapping and the lifted totals balance as well.  Infeasibility then
// arises only from the sparsity of the relation.
inline HallInstance random_hall_instance(RandomStream& rng, bool with_torsion) {
    HallInstance inst;
    const std::size_t m = 1 + rng.below(10);
    const std::size_t n = 1 + rng.below(10);
    const std::size_t k = 1 + rng.below(3);
    std::vector<Int> orders;
    if (with_torsion) {
        const std::size_t t = 1 + rng.below(2);
        for (std::size_t i = 0; i < t; ++i) orders.push_back(64 + static_cast<Int>(rng.below(64)));
        inst.spec.presentation = om::TorsionSpec{k, orders};
    } else {
        inst.spec.presentation = om::SimplicialSpec{k};
    }
    const std::size_t width = k + orders.size();

    std::vector<Int> totals(width, 0);
    inst.a.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        inst.a[i].free.resize(k);
        inst.a[i].torsion.resize(orders.size());
        for (std::size_t c = 0; c < width; ++c) {
            const Int v = static_cast<Int>(rng.below(3));
            totals[c] += v;
            if (c < k)
                inst.a[i].free[c] = v;
            else
                inst.a[i].torsion[c - k] = v;
        }
    }
    inst.b.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        inst.b[j].free.assign(k, 0);
        inst.b[j].torsion.assign(orders.size(), 0);
    }
    for (std::size_t c = 0; c < width; ++c) {
        const std::vector<Int> parts = random_split(rng, totals[c], n);
        for (std::size_t j = 0; j < n; ++j) {
            if (c < k)
                inst.b[j].free[c] = parts[j];
            else
                inst.b[j].torsion[c - k] = parts[j];
        }
    }

    const double density = 0.15 + 0.75 * rng.uniform();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rng.uniform() < density) pairs.emplace_back(i, j);
    inst.R = om::PairRelation::from_pairs(m, n, std::move(pairs));
    return inst;
}

}  // namespace testgen
