// Matrix instances.  A normal matrix is reduced to its spectral data (atomic
// map: eigenvalue clusters with multiplicities in the n x n matrix model);
// from a bottleneck coupling of two such maps a block-matching unitary is
// assembled, and the conjugation distance is estimated by projected descent
// on the unitary group with deterministic seeded restarts.
#pragma once

#include "om/k1.hpp"
#include "om/rng.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace om {

using CMatrix = Eigen::MatrixXcd;

// Largest singular value.
double operator_norm(const CMatrix& M);

// || M*M - MM* ||, the distance from normality in the commutator sense.
double normality_defect(const CMatrix& M);

struct SpectralOptions {
    // Relative commutator tolerance for accepting M as normal.
    double normal_tol = 1e-9;
    // Eigenvalues closer than this are one atom; 0 picks 1e-8 * scale.
    double cluster_tol = 0.0;
};

struct SpectralData {
    Eigen::VectorXcd values; // eigenvalue carried by each basis column
    CMatrix basis;           // unitary; basis^H M basis is diagonal
    std::vector<IndexSet> clusters; // column groups, one per atom, in atom order
    double cluster_tol = 0.0;       // the effective (resolved) tolerance
    ModelSpec model;                // the n x n matrix model
    AtomicHom atoms;                // cluster representatives with multiplicities
};

// Throws errc::not_normal when the commutator defect exceeds the tolerance
// and errc::cluster_ambiguity when eigenvalue gaps straddle cluster_tol so
// that the grouping would depend on the tie-break.
SpectralData eigen_normal(const CMatrix& M, const SpectralOptions& opts = {});

struct UnitaryCertificate {
    CMatrix U;               // U^H x U matches y block-by-block
    double radius = 0.0;     // bottleneck radius of the coupling
    double plan_bottleneck = 0.0; // max eigenvalue displacement over the plan
    double achieved = 0.0;   // || U^H x U - y ||
    TransportPlan plan;
};

UnitaryCertificate construct_unitary(const CMatrix& x, const CMatrix& y,
                                     const SpectralOptions& opts = {});

// Max sorted-eigenvalue gap of two Hermitian matrices.
double hermitian_dist(const CMatrix& x, const CMatrix& y, double tol = 1e-9);

struct EstimateOptions {
    std::uint64_t seed = 1;
    int budget = 24; // restart count; larger budgets never increase the result
    SpectralOptions spectral;
};

// min_U || U^H x U - y || approximated from above: the matching unitary seeds
// the first restart, further restarts start from seeded Haar samples.
double estimate_dist(const CMatrix& x, const CMatrix& y, const EstimateOptions& opts = {});

struct AuditCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool pass = true;
};

struct AuditOptions {
    DiscSettings discs;
    double tol = 1e-6;
    double C = 1.0 / 3.0; // distortion constant of the trace-metric lower bound
    EstimateOptions estimate;
};

struct AuditReport {
    MetricReport metrics;
    double radius = 0.0;
    double plan_bottleneck = 0.0;
    double achieved = 0.0;
    double estimate = 0.0;
    std::optional<RhoValues> rho;
    std::optional<Interval> interval;
    std::vector<AuditCheck> checks;
    bool pass = true;
};

// Computes every metric and the distance estimate for a matrix pair, then
// re-verifies each ordering the bounds promise; `pass` reflects the checks.
AuditReport audit_bounds(const CMatrix& x, const CMatrix& y, const AuditOptions& opts,
                         const std::optional<RhoValues>& rho = std::nullopt);

} // namespace om
