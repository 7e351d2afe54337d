#include "om/matrixorbit.hpp"

#include "om/errors.hpp"

#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

namespace om {
namespace {

constexpr std::complex<double> kI{0.0, 1.0};

double scale_of(const CMatrix& M) { return std::max(1.0, operator_norm(M)); }

void check_square(const CMatrix& M) {
    if (M.rows() == 0 || M.rows() != M.cols())
        fail(errc::dimension_mismatch, "matrix input must be square and nonempty");
    if (!M.allFinite())
        fail(errc::schema_violation, "matrix entries must be finite");
}

// Half-open index ranges of consecutive entries whose gaps are <= gtol.
std::vector<std::pair<Eigen::Index, Eigen::Index>>
group_ranges(const Eigen::VectorXd& vals, Eigen::Index begin, Eigen::Index end, double gtol) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
    Eigen::Index b = begin;
    for (Eigen::Index k = begin + 1; k <= end; ++k) {
        if (k == end || vals(k) - vals(k - 1) > gtol) {
            out.emplace_back(b, k);
            b = k;
        }
    }
    return out;
}

// Rediagonalizes Herm restricted to the given column range of Q and writes the
// resulting (ascending) diagonal values into vals.
void refine_block(CMatrix& Q, const CMatrix& Herm, Eigen::VectorXd& vals,
                  Eigen::Index begin, Eigen::Index end) {
    const Eigen::Index len = end - begin;
    if (len == 1) {
        vals(begin) = std::real((Q.col(begin).adjoint() * Herm * Q.col(begin))(0, 0));
        return;
    }
    CMatrix B = Q.middleCols(begin, len).adjoint() * Herm * Q.middleCols(begin, len);
    B = 0.5 * (B + CMatrix(B.adjoint()));
    Eigen::SelfAdjointEigenSolver<CMatrix> es(B);
    Q.middleCols(begin, len) *= es.eigenvectors();
    vals.segment(begin, len) = es.eigenvalues();
}

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

double objective(const CMatrix& x, const CMatrix& y, const CMatrix& U) {
    return operator_norm(U.adjoint() * x * U - y);
}

// exp(t W) for skew-Hermitian W, via the Hermitian eigendecomposition of iW.
CMatrix exp_skew(const CMatrix& W, double t) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(CMatrix(kI * W));
    const Eigen::VectorXd lam = es.eigenvalues();
    Eigen::VectorXcd phase(lam.size());
    for (Eigen::Index k = 0; k < lam.size(); ++k)
        phase(k) = std::exp(-kI * (t * lam(k)));
    return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix haar_unitary(RandomStream& rng, Eigen::Index n) {
    CMatrix Z(n, n);
    for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c)
            Z(r, c) = rng.normal_complex();
    Eigen::HouseholderQR<CMatrix> qr(Z);
    CMatrix Q = qr.householderQ() * CMatrix::Identity(n, n);
    const CMatrix R = qr.matrixQR().template triangularView<Eigen::Upper>();
    for (Eigen::Index k = 0; k < n; ++k) {
        const std::complex<double> d = R(k, k);
        if (std::abs(d) > 0.0) Q.col(k) *= d / std::abs(d);
    }
    return Q;
}

// Projected descent on the unitary group from the given start; returns the
// best objective value seen.
double descend(const CMatrix& x, const CMatrix& y, CMatrix U, int iters, double scale) {
    double best = objective(x, y, U);
    double eta = 0.5 / scale;
    int stalls = 0;
    for (int it = 0; it < iters && stalls < 2; ++it) {
        const CMatrix D = U.adjoint() * x * U - y;
        Eigen::JacobiSVD<CMatrix> svd(D, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Eigen::VectorXd sv = svd.singularValues();
        const double f = sv(0);
        best = std::min(best, f);
        if (f < 1e-14 * scale) break;

        // Smooth the max over the near-top singular values so ties do not
        // stall the subgradient.
        const double window = std::max(f * 1e-3, 1e-12 * scale);
        CMatrix G = CMatrix::Zero(x.rows(), x.cols());
        double wsum = 0.0;
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) < f - 3.0 * window) break;
            const double w = std::exp((sv(i) - f) / window);
            const Eigen::VectorXcd u = svd.matrixU().col(i);
            const Eigen::VectorXcd v = svd.matrixV().col(i);
            G += w * (x * U * v * u.adjoint() + x.adjoint() * U * u * v.adjoint());
            wsum += w;
        }
        G /= wsum;
        const CMatrix K = U.adjoint() * G;
        const CMatrix W = 0.5 * (K - CMatrix(K.adjoint()));
        const double wn = W.norm();
        if (wn < 1e-13 * scale) break;

        bool accepted = false;
        double step = eta;
        for (int trial = 0; trial < 30; ++trial) {
            CMatrix Unew = U * exp_skew(W, -step);
            const double fnew = objective(x, y, Unew);
            if (fnew < f - 1e-4 * step * wn * wn) {
                U = std::move(Unew);
                best = std::min(best, fnew);
                eta = step * 2.0;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (accepted) {
            stalls = 0;
        } else {
            ++stalls;
            eta *= 0.25;
        }
    }
    return best;
}

} // namespace

double operator_norm(const CMatrix& M) {
    if (M.size() == 0) return 0.0;
    Eigen::JacobiSVD<CMatrix> svd(M);
    return svd.singularValues()(0);
}

double normality_defect(const CMatrix& M) {
    return operator_norm(M.adjoint() * M - M * M.adjoint());
}

SpectralData eigen_normal(const CMatrix& M, const SpectralOptions& opts) {
    check_square(M);
    if (!(opts.normal_tol > 0.0))
        fail(errc::invalid_option, "normality tolerance must be positive");
    if (opts.cluster_tol < 0.0)
        fail(errc::invalid_option, "cluster tolerance must be nonnegative");

    const Eigen::Index n = M.rows();
    const double scale = scale_of(M);
    const double defect = normality_defect(M);
    if (defect > opts.normal_tol * scale * scale)
        fail(errc::not_normal, "commutator defect " + std::to_string(defect) +
                                   " exceeds the normality tolerance");

    const CMatrix H = 0.5 * (M + CMatrix(M.adjoint()));
    const CMatrix S = std::complex<double>(0.0, -0.5) * (M - CMatrix(M.adjoint()));

    // A generic real combination separates eigenvalues that differ in either
    // part; degenerate blocks are rediagonalized by H, then by S.
    const double t = std::sqrt(2.0) - 1.0;
    Eigen::SelfAdjointEigenSolver<CMatrix> esA(CMatrix(H + t * S));
    CMatrix Q = esA.eigenvectors();
    const Eigen::VectorXd avals = esA.eigenvalues();

    const double gtol = std::max(1e-9 * scale, 1e-14);
    Eigen::VectorXd hvals(n), svals(n);
    for (const auto& [ab, ae] : group_ranges(avals, 0, n, gtol)) {
        refine_block(Q, H, hvals, ab, ae);
        for (const auto& [hb, he] : group_ranges(hvals, ab, ae, gtol))
            refine_block(Q, S, svals, hb, he);
    }

    Eigen::VectorXcd values(n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto qk = Q.col(k);
        values(k) = std::complex<double>(std::real((qk.adjoint() * H * qk)(0, 0)),
                                         std::real((qk.adjoint() * S * qk)(0, 0)));
    }

    CMatrix R = Q.adjoint() * M * Q;
    for (Eigen::Index k = 0; k < n; ++k) R(k, k) -= values(k);
    const double residual = operator_norm(R);
    if (residual > std::max(1e-7 * scale, 32.0 * defect / scale))
        fail(errc::not_normal, "spectral reduction leaves residual " +
                                   std::to_string(residual) + "; matrix is not normal within tolerance");

    const double ctol = opts.cluster_tol > 0.0 ? opts.cluster_tol : 1e-8 * scale;
    UnionFind uf(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(values(i) - values(j)) <= ctol)
                uf.unite(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double d = std::abs(values(i) - values(j));
            if (d > ctol && d <= 2.0 * ctol &&
                uf.find(static_cast<std::size_t>(i)) != uf.find(static_cast<std::size_t>(j)))
                fail(errc::cluster_ambiguity,
                     "eigenvalue gap " + std::to_string(d) +
                         " straddles the cluster tolerance " + std::to_string(ctol));
        }

    std::vector<IndexSet> clusters;
    std::vector<std::size_t> root_of(static_cast<std::size_t>(n));
    {
        std::vector<std::ptrdiff_t> slot(static_cast<std::size_t>(n), -1);
        for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
            const std::size_t r = uf.find(i);
            if (slot[r] < 0) {
                slot[r] = static_cast<std::ptrdiff_t>(clusters.size());
                clusters.emplace_back();
            }
            clusters[static_cast<std::size_t>(slot[r])].push_back(i);
        }
    }

    struct RepCluster {
        PlanarPoint rep;
        IndexSet members;
    };
    std::vector<RepCluster> reps;
    for (auto& c : clusters) {
        std::complex<double> mean{0.0, 0.0};
        for (std::size_t k : c) mean += values(static_cast<Eigen::Index>(k));
        mean /= static_cast<double>(c.size());
        reps.push_back({PlanarPoint{mean.real(), mean.imag()}, std::move(c)});
    }
    std::sort(reps.begin(), reps.end(), [](const RepCluster& a, const RepCluster& b) {
        if (a.rep.re != b.rep.re) return a.rep.re < b.rep.re;
        if (a.rep.im != b.rep.im) return a.rep.im < b.rep.im;
        return a.members.front() < b.members.front();
    });

    ModelSpec model = ModelSpec::matrix_model(static_cast<std::size_t>(n));
    std::vector<Atom> atoms;
    std::vector<IndexSet> ordered;
    for (auto& rc : reps) {
        GroupElement cls;
        cls.free = {static_cast<Int>(rc.members.size())};
        atoms.push_back(Atom{rc.rep, std::move(cls)});
        ordered.push_back(std::move(rc.members));
    }
    AtomicHom hom = AtomicHom::make(std::move(atoms), model, 0.0);
    if (hom.size() != ordered.size())
        fail(errc::cluster_ambiguity,
             "distinct eigenvalue clusters share a representative point");

    return SpectralData{std::move(values), std::move(Q), std::move(ordered),
                        ctol, std::move(model), std::move(hom)};
}

UnitaryCertificate construct_unitary(const CMatrix& x, const CMatrix& y,
                                     const SpectralOptions& opts) {
    check_square(x);
    check_square(y);
    if (x.rows() != y.rows())
        fail(errc::dimension_mismatch, "matrix pair must share one dimension");

    SpectralData ex = eigen_normal(x, opts);
    SpectralData ey = eigen_normal(y, opts);
    BottleneckResult bn = bottleneck(ex.atoms, ey.atoms, ex.model, WeightOrder::Group);

    const Eigen::Index n = x.rows();
    CMatrix U = CMatrix::Zero(n, n);
    std::vector<std::size_t> xcur(ex.clusters.size(), 0), ycur(ey.clusters.size(), 0);
    double pb = 0.0;
    for (const PlanEntry& e : bn.plan.entries) {
        const Int count = e.cls.free.at(0);
        for (Int c = 0; c < count; ++c) {
            if (xcur[e.i] >= ex.clusters[e.i].size() || ycur[e.j] >= ey.clusters[e.j].size())
                fail(errc::invariant_violation, "coupling exceeds a cluster multiplicity");
            const auto cx = static_cast<Eigen::Index>(ex.clusters[e.i][xcur[e.i]++]);
            const auto cy = static_cast<Eigen::Index>(ey.clusters[e.j][ycur[e.j]++]);
            U += ex.basis.col(cx) * ey.basis.col(cy).adjoint();
            pb = std::max(pb, std::abs(ex.values(cx) - ey.values(cy)));
        }
    }

    const double achieved = objective(x, y, U);
    const double scale = std::max(scale_of(x), scale_of(y));
    if (achieved > pb + 1e-6 * scale)
        fail(errc::invariant_violation, "matching unitary misses its coupling bottleneck");
    return UnitaryCertificate{std::move(U), bn.radius, pb, achieved, std::move(bn.plan)};
}

double hermitian_dist(const CMatrix& x, const CMatrix& y, double tol) {
    check_square(x);
    check_square(y);
    if (x.rows() != y.rows())
        fail(errc::dimension_mismatch, "matrix pair must share one dimension");
    for (const CMatrix* M : {&x, &y})
        if (operator_norm(*M - CMatrix(M->adjoint())) > tol * scale_of(*M))
            fail(errc::not_hermitian, "sorted-spectrum distance needs Hermitian inputs");
    Eigen::SelfAdjointEigenSolver<CMatrix> ex(CMatrix(0.5 * (x + CMatrix(x.adjoint()))));
    Eigen::SelfAdjointEigenSolver<CMatrix> ey(CMatrix(0.5 * (y + CMatrix(y.adjoint()))));
    double best = 0.0;
    for (Eigen::Index k = 0; k < x.rows(); ++k)
        best = std::max(best, std::abs(ex.eigenvalues()(k) - ey.eigenvalues()(k)));
    return best;
}

double estimate_dist(const CMatrix& x, const CMatrix& y, const EstimateOptions& opts) {
    UnitaryCertificate warm = construct_unitary(x, y, opts.spectral);
    const Eigen::Index n = x.rows();
    const double scale = std::max(scale_of(x), scale_of(y));
    const int iters = std::min<int>(400, 60 + 30 * static_cast<int>(n));

    double best = std::min(warm.achieved, descend(x, y, warm.U, iters, scale));
    const int restarts = std::max(1, opts.budget);
    RandomStream root(opts.seed);
    for (int k = 1; k < restarts; ++k) {
        RandomStream rk = root.fork(static_cast<std::uint64_t>(k));
        best = std::min(best, descend(x, y, haar_unitary(rk, n), iters, scale));
    }
    return best;
}

AuditReport audit_bounds(const CMatrix& x, const CMatrix& y, const AuditOptions& opts,
                         const std::optional<RhoValues>& rho) {
    UnitaryCertificate cu = construct_unitary(x, y, opts.estimate.spectral);
    SpectralData ex = eigen_normal(x, opts.estimate.spectral);
    SpectralData ey = eigen_normal(y, opts.estimate.spectral);

    AuditReport out;
    out.metrics = compute_metrics(ex.atoms, ey.atoms, ex.model, opts.discs, opts.tol);
    out.radius = cu.radius;
    out.plan_bottleneck = cu.plan_bottleneck;
    out.achieved = cu.achieved;
    out.estimate = estimate_dist(x, y, opts.estimate);
    out.rho = rho;

    auto add = [&](std::string name, double lhs, double rhs, double slack) {
        out.checks.push_back(AuditCheck{std::move(name), lhs, rhs, lhs <= rhs + slack});
    };
    add("estimate-dominates-trace-lower", opts.C * out.metrics.D_T, out.estimate, opts.tol);
    add("estimate-dominates-disc-lower", out.metrics.d_T, out.estimate, opts.tol);
    add("estimate-below-achieved", out.estimate, out.achieved, opts.tol);
    add("achieved-within-group-radius", out.achieved, out.metrics.D_c, opts.tol);
    if (rho) {
        out.interval = mt3_interval(out.metrics, *rho, opts.C, opts.tol);
        add("estimate-dominates-obstruction", rho->rho_1, out.estimate, opts.tol);
        add("estimate-above-interval-lower", out.interval->lower, out.estimate, opts.tol);
        add("estimate-within-interval-upper", out.estimate, out.interval->upper,
            opts.tol + rho->grid_error);
    }
    out.pass = std::all_of(out.checks.begin(), out.checks.end(),
                           [](const AuditCheck& c) { return c.pass; });
    return out;
}

} // namespace om
