// Integer max-flow on the bipartite supply/demand graph used by the
// feasibility checks.  Capacities are arbitrary-precision integers; the
// result carries per-edge flows and, when the flow does not saturate the
// supplies, the residual-reachable source rows (a violating set for the
// matching condition).
#pragma once

#include "om/rational.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace om::detail {

struct BipartiteFlowResult {
    bool saturated = false;
    // Flow routed along each input edge, parallel to `edges`.
    std::vector<BigInt> edge_flow;
    // When not saturated: rows reachable from the source in the residual
    // graph, sorted ascending.  Their joint neighbourhood cannot cover them.
    std::vector<std::size_t> cut_rows;
};

// Supplies a[i] on rows, demands b[j] on columns, admissible pairs `edges`
// (row, column).  All supplies and demands must be >= 0.
BipartiteFlowResult bipartite_feasible(const std::vector<BigInt>& a,
                                       const std::vector<BigInt>& b,
                                       const std::vector<std::pair<std::size_t, std::size_t>>& edges);

struct ForcedCutResult {
    // min over row sets A containing `forced` of  b(N(A)) - a(A)
    BigInt surplus;
    // The unique minimal minimiser (residual-reachable rows), sorted.
    std::vector<std::size_t> min_rows;
};

// Minimises the cover surplus over all row sets that contain `forced`, via a
// min cut with the forced row's supply arc made uncuttable.
ForcedCutResult forced_min_surplus(const std::vector<BigInt>& a,
                                   const std::vector<BigInt>& b,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                   std::size_t forced);

} // namespace om::detail
