#include "om/transport.hpp"

#include "om/detail/flow.hpp"
#include "om/errors.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace om {

namespace {

Int narrow_int(const BigInt& v, const char* what) {
    if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
        fail(errc::invariant_violation, std::string(what) + " exceeds 64-bit range");
    return v.convert_to<Int>();
}

// Per-element integer coordinate columns used by the flow runs.  For torsion
// presentations the reduced representatives are appended after the free part
// ("lift"); for the stagewise presentation elements are pushed to `stage`.
std::vector<std::vector<BigInt>> lift_columns(const std::vector<GroupElement>& gs,
                                              const GroupSpec& spec, std::size_t stage) {
    std::vector<std::vector<BigInt>> out;
    out.reserve(gs.size());
    for (const GroupElement& g : gs) {
        std::vector<BigInt> col;
        if (spec.is_stagewise()) {
            for (Int v : push_to_stage(g, spec, stage)) col.emplace_back(v);
        } else {
            for (Int v : g.free) col.emplace_back(v);
            for (Int v : g.torsion) col.emplace_back(v);
        }
        out.push_back(std::move(col));
    }
    return out;
}

std::vector<Rat> subset_deficiency(const std::vector<std::vector<BigInt>>& a_cols,
                                   const std::vector<std::vector<BigInt>>& b_cols,
                                   const IndexSet& A, const IndexSet& RA) {
    const std::size_t width = a_cols.empty() ? 0 : a_cols.front().size();
    std::vector<Rat> d(width, Rat(0));
    for (std::size_t i : A)
        for (std::size_t c = 0; c < width; ++c) d[c] += Rat(a_cols[i][c]);
    for (std::size_t j : RA)
        for (std::size_t c = 0; c < width; ++c) d[c] -= Rat(b_cols[j][c]);
    return d;
}

struct CoordinateRun {
    bool feasible = true;
    IndexSet cut;                          // violating rows if infeasible
    std::vector<std::vector<BigInt>> flows; // per edge, per coordinate
};

CoordinateRun run_flows(const std::vector<std::vector<BigInt>>& a_cols,
                        const std::vector<std::vector<BigInt>>& b_cols,
                        const PairRelation& R) {
    CoordinateRun out;
    const std::size_t width = a_cols.empty() ? 0 : a_cols.front().size();
    out.flows.assign(R.pairs.size(), std::vector<BigInt>(width, 0));
    for (std::size_t c = 0; c < width; ++c) {
        std::vector<BigInt> a(a_cols.size()), b(b_cols.size());
        for (std::size_t i = 0; i < a_cols.size(); ++i) a[i] = a_cols[i][c];
        for (std::size_t j = 0; j < b_cols.size(); ++j) b[j] = b_cols[j][c];
        detail::BipartiteFlowResult fr = detail::bipartite_feasible(a, b, R.pairs);
        if (!fr.saturated) {
            out.feasible = false;
            out.cut = fr.cut_rows;
            return out;
        }
        for (std::size_t k = 0; k < R.pairs.size(); ++k) out.flows[k][c] = fr.edge_flow[k];
    }
    return out;
}

void check_shapes(std::size_t a_size, std::size_t b_size, const PairRelation& R) {
    if (R.rows != a_size || R.cols != b_size)
        fail(errc::dimension_mismatch, "relation shape does not match the weight families");
    if (a_size == 0 || b_size == 0)
        fail(errc::empty_input, "weight families must be nonempty");
}

// Group-level equality of totals; errors mirror the documented contract.
void check_group_totals(const std::vector<GroupElement>& a,
                        const std::vector<GroupElement>& b, const GroupSpec& spec) {
    switch (equals(sum(a, spec), sum(b, spec), spec)) {
        case Ternary::True:
            return;
        case Ternary::False:
            fail(errc::sum_mismatch, "weight totals differ between the two families");
        case Ternary::Undecided:
            fail(errc::undecided, "weight-total comparison is undecided at the stage cap");
    }
}

} // namespace

PairRelation PairRelation::from_pairs(std::size_t rows, std::size_t cols,
                                      std::vector<std::pair<std::size_t, std::size_t>> pairs) {
    PairRelation r;
    r.rows = rows;
    r.cols = cols;
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    for (const auto& [i, j] : pairs)
        if (i >= rows || j >= cols)
            fail(errc::schema_violation, "relation pair out of range");
    r.pairs = std::move(pairs);
    return r;
}

PairRelation PairRelation::full(std::size_t rows, std::size_t cols) {
    PairRelation r;
    r.rows = rows;
    r.cols = cols;
    r.pairs.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) r.pairs.emplace_back(i, j);
    return r;
}

PairRelation PairRelation::from_radius(const DistanceMatrix& cross, double r) {
    PairRelation rel;
    rel.rows = cross.size();
    rel.cols = cross.empty() ? 0 : cross.front().size();
    for (std::size_t i = 0; i < rel.rows; ++i)
        for (std::size_t j = 0; j < rel.cols; ++j)
            if (cross[i][j] <= r) rel.pairs.emplace_back(i, j);
    return rel;
}

bool PairRelation::contains(std::size_t i, std::size_t j) const {
    return std::binary_search(pairs.begin(), pairs.end(), std::make_pair(i, j));
}

IndexSet PairRelation::neighbors(const IndexSet& A) const {
    std::vector<char> in_A(rows, 0);
    for (std::size_t i : A) in_A[i] = 1;
    std::set<std::size_t> cols_hit;
    for (const auto& [i, j] : pairs)
        if (in_A[i]) cols_hit.insert(j);
    return IndexSet(cols_hit.begin(), cols_hit.end());
}

HallCertificate hall_check(const std::vector<GroupElement>& a,
                           const std::vector<GroupElement>& b,
                           const PairRelation& R, const GroupSpec& spec) {
    check_shapes(a.size(), b.size(), R);
    for (const GroupElement& g : a) validate_element(g, spec);
    for (const GroupElement& g : b) validate_element(g, spec);
    check_group_totals(a, b, spec);

    HallCertificate cert;
    if (!spec.is_stagewise()) {
        const auto a_cols = lift_columns(a, spec, 1);
        const auto b_cols = lift_columns(b, spec, 1);
        // Group totals matching does not make the chosen representatives
        // balance: torsion coordinates may still differ by multiples of the
        // order, and then no coupling of the lifted columns exists.
        const std::size_t width = a_cols.front().size();
        for (std::size_t c = 0; c < width; ++c) {
            BigInt diff = 0;
            for (const auto& col : a_cols) diff += col[c];
            for (const auto& col : b_cols) diff -= col[c];
            if (diff != 0)
                fail(errc::sum_mismatch,
                     "torsion representatives do not balance; no coupling exists in the "
                     "lifted presentation");
        }
        CoordinateRun run = run_flows(a_cols, b_cols, R);
        if (run.feasible) return cert;
        cert.feasible = false;
        cert.violating = run.cut;
        cert.deficiency = subset_deficiency(a_cols, b_cols, run.cut, R.neighbors(run.cut));
        cert.coordinates = spec.is_torsion() ? "lifted" : "free";
        return cert;
    }

    const auto& bs = spec.stagewise();
    // Weights must sit in the cone before a flow makes sense; find the first
    // stage where every image is entrywise nonnegative.
    std::size_t start = 1;
    auto admit = [&](const GroupElement& g) {
        std::size_t decided = 1;
        switch (is_positive(g, spec, &decided)) {
            case Positivity::Positive:
            case Positivity::Zero:
                start = std::max(start, std::max(decided, g.stage));
                return;
            case Positivity::NotPositive:
                fail(errc::non_positive_class, "weights must be positive or zero");
            case Positivity::Undecided:
                fail(errc::undecided, "weight positivity is undecided at the stage cap");
        }
    };
    for (const GroupElement& g : a) admit(g);
    for (const GroupElement& g : b) admit(g);

    for (std::size_t s = start; s <= bs.stage_cap; ++s) {
        const auto a_cols = lift_columns(a, spec, s);
        const auto b_cols = lift_columns(b, spec, s);
        CoordinateRun run = run_flows(a_cols, b_cols, R);
        if (run.feasible) {
            cert.decided_stage = s;
            cert.coordinates = "stage-" + std::to_string(s);
            return cert;
        }
        // A failed flow at one stage is not yet a certificate: the violation
        // must have a definite sign in the limit order.
        const IndexSet RA = R.neighbors(run.cut);
        GroupElement lhs = zero_element(spec, s), rhs = zero_element(spec, s);
        for (std::size_t i : run.cut) lhs = add(lhs, a[i], spec);
        for (std::size_t j : RA) rhs = add(rhs, b[j], spec);
        std::size_t decided = s;
        if (leq(lhs, rhs, spec, &decided) == Ternary::False) {
            cert.feasible = false;
            cert.violating = run.cut;
            cert.decided_stage = decided;
            cert.coordinates = "stage-" + std::to_string(decided);
            const GroupElement diff = sub(lhs, rhs, spec);
            cert.deficiency.clear();
            for (Int v : push_to_stage(diff, spec, decided)) cert.deficiency.emplace_back(v);
            return cert;
        }
    }
    fail(errc::undecided, "coupling feasibility is undecided at the stage cap");
}

HallCertificate hall_check_trace(const std::vector<TraceWeight>& a,
                                 const std::vector<TraceWeight>& b,
                                 const PairRelation& R) {
    check_shapes(a.size(), b.size(), R);
    const std::size_t m = a.front().coords.size();
    std::vector<Rat> totals(m, Rat(0));
    for (const TraceWeight& w : a) {
        if (w.coords.size() != m) fail(errc::dimension_mismatch, "trace weights of different length");
        if (!weight_nonnegative(w)) fail(errc::non_positive_class, "trace weights must be nonnegative");
        for (std::size_t c = 0; c < m; ++c) totals[c] += w.coords[c];
    }
    for (const TraceWeight& w : b) {
        if (w.coords.size() != m) fail(errc::dimension_mismatch, "trace weights of different length");
        if (!weight_nonnegative(w)) fail(errc::non_positive_class, "trace weights must be nonnegative");
        for (std::size_t c = 0; c < m; ++c) totals[c] -= w.coords[c];
    }
    for (const Rat& t : totals)
        if (t != 0) fail(errc::sum_mismatch, "weight totals differ between the two families");

    HallCertificate cert;
    cert.coordinates = "trace";
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<Rat> column;
        column.reserve(a.size() + b.size());
        for (const TraceWeight& w : a) column.push_back(w.coords[c]);
        for (const TraceWeight& w : b) column.push_back(w.coords[c]);
        const BigInt den = common_denominator(column);
        std::vector<BigInt> ai(a.size()), bj(b.size());
        for (std::size_t i = 0; i < a.size(); ++i) ai[i] = scale_to_integer(a[i].coords[c], den);
        for (std::size_t j = 0; j < b.size(); ++j) bj[j] = scale_to_integer(b[j].coords[c], den);
        detail::BipartiteFlowResult fr = detail::bipartite_feasible(ai, bj, R.pairs);
        if (!fr.saturated) {
            cert.feasible = false;
            cert.violating = fr.cut_rows;
            const IndexSet RA = R.neighbors(fr.cut_rows);
            cert.deficiency.assign(m, Rat(0));
            for (std::size_t i : fr.cut_rows)
                for (std::size_t s = 0; s < m; ++s) cert.deficiency[s] += a[i].coords[s];
            for (std::size_t j : RA)
                for (std::size_t s = 0; s < m; ++s) cert.deficiency[s] -= b[j].coords[s];
            return cert;
        }
    }
    return cert;
}

namespace {

TransportPlan assemble_group_plan(const std::vector<std::vector<BigInt>>& flows,
                                  const PairRelation& R, const GroupSpec& spec,
                                  std::size_t stage) {
    TransportPlan plan;
    plan.order = WeightOrder::Group;
    plan.rows = R.rows;
    plan.cols = R.cols;
    plan.stage = stage;
    for (std::size_t k = 0; k < R.pairs.size(); ++k) {
        const auto& v = flows[k];
        const bool zero = std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
        if (zero) continue;
        PlanEntry e;
        e.i = R.pairs[k].first;
        e.j = R.pairs[k].second;
        if (spec.is_stagewise()) {
            e.cls.stage = stage;
            for (const BigInt& x : v) e.cls.free.push_back(narrow_int(x, "plan entry"));
        } else if (spec.is_torsion()) {
            const auto& t = spec.torsion();
            e.lifted = v;
            for (std::size_t c = 0; c < t.k; ++c)
                e.cls.free.push_back(narrow_int(v[c], "plan entry"));
            for (std::size_t c = 0; c < t.orders.size(); ++c) {
                const Int raw = narrow_int(v[t.k + c], "plan entry");
                e.cls.torsion.push_back(raw % t.orders[c]);
            }
        } else {
            for (const BigInt& x : v) e.cls.free.push_back(narrow_int(x, "plan entry"));
        }
        plan.entries.push_back(std::move(e));
    }
    return plan;
}

} // namespace

RefineResult refine(const std::vector<GroupElement>& a,
                    const std::vector<GroupElement>& b,
                    const PairRelation& R, const GroupSpec& spec) {
    RefineResult out;
    out.certificate = hall_check(a, b, R, spec);
    if (!out.certificate.feasible) return out;

    const std::size_t stage = spec.is_stagewise() ? out.certificate.decided_stage : 1;
    const auto a_cols = lift_columns(a, spec, stage);
    const auto b_cols = lift_columns(b, spec, stage);
    CoordinateRun run = run_flows(a_cols, b_cols, R);
    if (!run.feasible)
        fail(errc::invariant_violation, "feasibility certificate disagrees with the flow rerun");
    out.plan = assemble_group_plan(run.flows, R, spec, stage);
    verify_plan(*out.plan, a, b, R, spec);
    return out;
}

RefineResult refine_trace(const std::vector<TraceWeight>& a,
                          const std::vector<TraceWeight>& b,
                          const PairRelation& R) {
    RefineResult out;
    out.certificate = hall_check_trace(a, b, R);
    if (!out.certificate.feasible) return out;

    const std::size_t m = a.front().coords.size();
    TransportPlan plan;
    plan.order = WeightOrder::Trace;
    plan.rows = R.rows;
    plan.cols = R.cols;
    std::vector<TraceWeight> masses(R.pairs.size(), weight_zero(m));
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<Rat> column;
        for (const TraceWeight& w : a) column.push_back(w.coords[c]);
        for (const TraceWeight& w : b) column.push_back(w.coords[c]);
        const BigInt den = common_denominator(column);
        std::vector<BigInt> ai(a.size()), bj(b.size());
        for (std::size_t i = 0; i < a.size(); ++i) ai[i] = scale_to_integer(a[i].coords[c], den);
        for (std::size_t j = 0; j < b.size(); ++j) bj[j] = scale_to_integer(b[j].coords[c], den);
        detail::BipartiteFlowResult fr = detail::bipartite_feasible(ai, bj, R.pairs);
        if (!fr.saturated)
            fail(errc::invariant_violation, "feasibility certificate disagrees with the flow rerun");
        for (std::size_t k = 0; k < R.pairs.size(); ++k)
            masses[k].coords[c] = Rat(fr.edge_flow[k]) / Rat(den);
    }
    for (std::size_t k = 0; k < R.pairs.size(); ++k) {
        if (weight_is_zero(masses[k])) continue;
        PlanEntry e;
        e.i = R.pairs[k].first;
        e.j = R.pairs[k].second;
        e.mass = masses[k];
        plan.entries.push_back(std::move(e));
    }
    out.plan = std::move(plan);
    verify_plan_trace(*out.plan, a, b, R);
    return out;
}

void verify_plan(const TransportPlan& plan,
                 const std::vector<GroupElement>& a,
                 const std::vector<GroupElement>& b,
                 const PairRelation& R, const GroupSpec& spec) {
    if (plan.order != WeightOrder::Group)
        fail(errc::schema_violation, "plan order does not match the verification call");
    if (plan.rows != a.size() || plan.cols != b.size())
        fail(errc::dimension_mismatch, "plan shape does not match the weight families");

    const std::size_t stage = spec.is_stagewise() ? plan.stage : 1;
    const auto a_cols = lift_columns(a, spec, stage);
    const auto b_cols = lift_columns(b, spec, stage);
    const std::size_t width = a_cols.front().size();

    std::vector<std::vector<BigInt>> row_sum(a.size(), std::vector<BigInt>(width, 0));
    std::vector<std::vector<BigInt>> col_sum(b.size(), std::vector<BigInt>(width, 0));

    std::pair<std::size_t, std::size_t> prev{0, 0};
    bool first = true;
    for (const PlanEntry& e : plan.entries) {
        if (e.i >= plan.rows || e.j >= plan.cols)
            fail(errc::schema_violation, "plan entry out of range");
        const auto key = std::make_pair(e.i, e.j);
        if (!first && key <= prev) fail(errc::schema_violation, "plan entries must be sorted by (i, j)");
        prev = key;
        first = false;
        if (!R.contains(e.i, e.j))
            fail(errc::marginal_mismatch, "plan is supported outside the admissible relation");

        std::vector<BigInt> v;
        if (spec.is_torsion()) {
            if (e.lifted.size() != width)
                fail(errc::dimension_mismatch, "lifted plan entry has the wrong width");
            const auto& t = spec.torsion();
            for (std::size_t c = 0; c < t.k; ++c)
                if (BigInt(e.cls.free[c]) != e.lifted[c])
                    fail(errc::schema_violation, "plan entry class disagrees with its lift");
            for (std::size_t c = 0; c < t.orders.size(); ++c) {
                const BigInt red = e.lifted[t.k + c] % t.orders[c];
                if (red != e.cls.torsion[c])
                    fail(errc::schema_violation, "plan entry class disagrees with its lift");
            }
            v = e.lifted;
        } else {
            if (spec.is_stagewise() && e.cls.stage != plan.stage)
                fail(errc::schema_violation, "plan entry stage differs from the plan stage");
            if (e.cls.free.size() != width)
                fail(errc::dimension_mismatch, "plan entry has the wrong width");
            for (Int x : e.cls.free) v.emplace_back(x);
        }
        bool zero = true;
        for (const BigInt& x : v) {
            if (x < 0) fail(errc::marginal_mismatch, "plan entries must be nonnegative");
            zero = zero && x == 0;
        }
        if (zero) fail(errc::schema_violation, "plan entries must be nonzero");
        for (std::size_t c = 0; c < width; ++c) {
            row_sum[e.i][c] += v[c];
            col_sum[e.j][c] += v[c];
        }
    }

    // Free coordinates must match exactly; torsion coordinates modulo the
    // orders (the lift fixes representatives, marginals only constrain the
    // residue classes).
    const std::size_t free_width = spec.is_torsion() ? spec.torsion().k : width;
    auto check_family = [&](const std::vector<std::vector<BigInt>>& sums,
                            const std::vector<std::vector<BigInt>>& expect, const char* side) {
        for (std::size_t r = 0; r < sums.size(); ++r) {
            for (std::size_t c = 0; c < width; ++c) {
                if (c < free_width) {
                    if (sums[r][c] != expect[r][c])
                        fail(errc::marginal_mismatch,
                             std::string(side) + " marginal differs at index " + std::to_string(r));
                } else {
                    const Int order = spec.torsion().orders[c - free_width];
                    if ((sums[r][c] - expect[r][c]) % order != 0)
                        fail(errc::marginal_mismatch,
                             std::string(side) + " marginal differs at index " + std::to_string(r));
                }
            }
        }
    };
    check_family(row_sum, a_cols, "row");
    check_family(col_sum, b_cols, "column");
}

void verify_plan_trace(const TransportPlan& plan,
                       const std::vector<TraceWeight>& a,
                       const std::vector<TraceWeight>& b,
                       const PairRelation& R) {
    if (plan.order != WeightOrder::Trace)
        fail(errc::schema_violation, "plan order does not match the verification call");
    if (plan.rows != a.size() || plan.cols != b.size())
        fail(errc::dimension_mismatch, "plan shape does not match the weight families");
    const std::size_t m = a.front().coords.size();

    std::vector<TraceWeight> row_sum(a.size(), weight_zero(m));
    std::vector<TraceWeight> col_sum(b.size(), weight_zero(m));
    std::pair<std::size_t, std::size_t> prev{0, 0};
    bool first = true;
    for (const PlanEntry& e : plan.entries) {
        if (e.i >= plan.rows || e.j >= plan.cols)
            fail(errc::schema_violation, "plan entry out of range");
        const auto key = std::make_pair(e.i, e.j);
        if (!first && key <= prev) fail(errc::schema_violation, "plan entries must be sorted by (i, j)");
        prev = key;
        first = false;
        if (!R.contains(e.i, e.j))
            fail(errc::marginal_mismatch, "plan is supported outside the admissible relation");
        if (e.mass.coords.size() != m)
            fail(errc::dimension_mismatch, "plan entry has the wrong trace width");
        if (!weight_nonnegative(e.mass))
            fail(errc::marginal_mismatch, "plan entries must be nonnegative");
        if (weight_is_zero(e.mass))
            fail(errc::schema_violation, "plan entries must be nonzero");
        row_sum[e.i] = weight_add(row_sum[e.i], e.mass);
        col_sum[e.j] = weight_add(col_sum[e.j], e.mass);
    }
    for (std::size_t i = 0; i < a.size(); ++i)
        if (row_sum[i].coords != a[i].coords)
            fail(errc::marginal_mismatch, "row marginal differs at index " + std::to_string(i));
    for (std::size_t j = 0; j < b.size(); ++j)
        if (col_sum[j].coords != b[j].coords)
            fail(errc::marginal_mismatch, "column marginal differs at index " + std::to_string(j));
}

BottleneckResult bottleneck(const AtomicHom& x, const AtomicHom& y,
                            const ModelSpec& model, WeightOrder order) {
    const DistanceMatrix cross = pairwise_distances(x.support(), y.support());
    std::vector<double> candidates{0.0};
    for (const auto& row : cross)
        for (double d : row) candidates.push_back(d);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::vector<TraceWeight> xw, yw;
    if (order == WeightOrder::Trace) {
        for (std::size_t i = 0; i < x.size(); ++i) xw.push_back(x.mass_of(i));
        for (std::size_t j = 0; j < y.size(); ++j) yw.push_back(y.mass_of(j));
    }
    auto probe = [&](double r) -> HallCertificate {
        const PairRelation R = PairRelation::from_radius(cross, r);
        if (order == WeightOrder::Group)
            return hall_check(x.classes(), y.classes(), R, model.group);
        return hall_check_trace(xw, yw, R);
    };

    BottleneckResult out;
    std::optional<HallCertificate> tight;
    std::size_t found = candidates.size();

    if (model.group.is_stagewise() && order == WeightOrder::Group) {
        // The stage scan can certify each candidate independently; walk up so
        // the first feasible radius comes with certified refusals below it.
        for (std::size_t idx = 0; idx < candidates.size(); ++idx) {
            HallCertificate cert = probe(candidates[idx]);
            if (cert.feasible) {
                found = idx;
                break;
            }
            tight = std::move(cert);
        }
        if (found == candidates.size())
            fail(errc::sum_mismatch, "no radius admits a coupling of these weights");
    } else {
        HallCertificate at_zero = probe(candidates.front());
        if (at_zero.feasible) {
            found = 0;
        } else {
            std::size_t lo = 0;
            std::size_t hi = candidates.size() - 1;
            HallCertificate at_top = probe(candidates[hi]);
            if (!at_top.feasible)
                fail(errc::invariant_violation, "full relation admits no coupling");
            tight = std::move(at_zero);
            while (hi - lo > 1) {
                const std::size_t mid = lo + (hi - lo) / 2;
                HallCertificate cert = probe(candidates[mid]);
                if (cert.feasible) {
                    hi = mid;
                } else {
                    lo = mid;
                    tight = std::move(cert);
                }
            }
            found = hi;
        }
    }

    out.radius = candidates[found];
    out.tight = std::move(tight);
    const PairRelation R = PairRelation::from_radius(cross, out.radius);
    if (order == WeightOrder::Group) {
        RefineResult rr = refine(x.classes(), y.classes(), R, model.group);
        out.plan = std::move(*rr.plan);
    } else {
        RefineResult rr = refine_trace(xw, yw, R);
        out.plan = std::move(*rr.plan);
    }
    return out;
}

} // namespace om
