// Feasibility (matching-condition) checks, transport plans between weighted
// atom families, independent plan verification, and the bottleneck radius
// search that the coupling-based metrics reduce to.
//
// Weight semantics by presentation:
//   * simplicial  exact componentwise marginals;
//   * torsion     weights are lifted to Z^{k+t} by taking the reduced
//                 representative of each torsion coordinate; feasibility and
//                 plans are certified on the lifted system, and marginals of
//                 reported plans hold exactly on free coordinates and modulo
//                 the orders on torsion coordinates;
//   * stagewise   all weights are pushed to a common stage <= stage_cap; a
//                 feasible stage certifies feasibility, infeasibility is
//                 certified by a violating set whose deficiency has a
//                 definite sign, and otherwise the check is Undecided.
#pragma once

#include "om/model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace om {

struct PairRelation {
    std::size_t rows = 0, cols = 0;
    // sorted ascending, unique
    std::vector<std::pair<std::size_t, std::size_t>> pairs;

    static PairRelation from_pairs(std::size_t rows, std::size_t cols,
                                   std::vector<std::pair<std::size_t, std::size_t>> pairs);
    static PairRelation full(std::size_t rows, std::size_t cols);
    // Pairs (i, j) with cross[i][j] <= r.
    static PairRelation from_radius(const DistanceMatrix& cross, double r);

    bool contains(std::size_t i, std::size_t j) const;
    // Columns admissible for at least one row of A.
    IndexSet neighbors(const IndexSet& A) const;
};

enum class WeightOrder { Group, Trace };

struct HallCertificate {
    bool feasible = true;
    // When infeasible: rows A whose admissible columns cannot cover them.
    IndexSet violating;
    // sum_A a - sum_{R(A)} b in the coordinates named by `coordinates`
    // ("free", "lifted", "stage-<n>", "trace"); some entry is > 0.
    std::vector<Rat> deficiency;
    std::string coordinates = "free";
    std::size_t decided_stage = 1;
};

struct PlanEntry {
    std::size_t i = 0, j = 0;
    GroupElement cls;            // group order
    TraceWeight mass;            // trace order
    std::vector<BigInt> lifted;  // torsion presentations: certified lift
};

struct TransportPlan {
    WeightOrder order = WeightOrder::Group;
    std::size_t rows = 0, cols = 0;
    std::vector<PlanEntry> entries;  // sorted by (i, j); zero entries omitted
    std::size_t stage = 1;           // stagewise: the certifying stage
};

// Does a nonnegative coupling with row marginals a and column marginals b
// supported on R exist?  Group order; throws errc::sum_mismatch when the
// totals differ, errc::undecided when the stage cap runs out.
HallCertificate hall_check(const std::vector<GroupElement>& a,
                           const std::vector<GroupElement>& b,
                           const PairRelation& R, const GroupSpec& spec);

// Same question for trace weights (arbitrary nonnegative rationals).
HallCertificate hall_check_trace(const std::vector<TraceWeight>& a,
                                 const std::vector<TraceWeight>& b,
                                 const PairRelation& R);

// Feasibility check plus a witness coupling when one exists.  Error behaviour
// matches hall_check; infeasibility is reported through the certificate.
struct RefineResult {
    HallCertificate certificate;
    std::optional<TransportPlan> plan; // set iff certificate.feasible
};

RefineResult refine(const std::vector<GroupElement>& a,
                    const std::vector<GroupElement>& b,
                    const PairRelation& R, const GroupSpec& spec);

RefineResult refine_trace(const std::vector<TraceWeight>& a,
                          const std::vector<TraceWeight>& b,
                          const PairRelation& R);

// Independent verification of a claimed plan against marginals and support.
// Throws errc::marginal_mismatch / schema_violation on any defect.
void verify_plan(const TransportPlan& plan,
                 const std::vector<GroupElement>& a,
                 const std::vector<GroupElement>& b,
                 const PairRelation& R, const GroupSpec& spec);

void verify_plan_trace(const TransportPlan& plan,
                       const std::vector<TraceWeight>& a,
                       const std::vector<TraceWeight>& b,
                       const PairRelation& R);

struct BottleneckResult {
    double radius = 0.0;
    TransportPlan plan;
    // Infeasibility certificate at the largest candidate below `radius`
    // (absent when the radius is the smallest candidate).
    std::optional<HallCertificate> tight;
};

// Least candidate radius r (candidates: 0 and all cross distances) such that
// the relation {d(x_i, y_j) <= r} admits a coupling of the atom weights, in
// the group or trace order, together with a witness plan.
BottleneckResult bottleneck(const AtomicHom& x, const AtomicHom& y,
                            const ModelSpec& model, WeightOrder order);

} // namespace om
