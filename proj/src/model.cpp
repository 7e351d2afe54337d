#include "om/model.hpp"

#include "om/errors.hpp"

#include <algorithm>
#include <utility>

namespace om {

TraceWeight weight_zero(std::size_t m) {
    TraceWeight w;
    w.coords.assign(m, Rat(0));
    return w;
}

TraceWeight weight_add(const TraceWeight& a, const TraceWeight& b) {
    if (a.coords.size() != b.coords.size())
        fail(errc::dimension_mismatch, "trace weights of different length");
    TraceWeight out = a;
    for (std::size_t s = 0; s < out.coords.size(); ++s) out.coords[s] += b.coords[s];
    return out;
}

bool weight_leq(const TraceWeight& a, const TraceWeight& b) {
    if (a.coords.size() != b.coords.size())
        fail(errc::dimension_mismatch, "trace weights of different length");
    for (std::size_t s = 0; s < a.coords.size(); ++s)
        if (a.coords[s] > b.coords[s]) return false;
    return true;
}

bool weight_lt(const TraceWeight& a, const TraceWeight& b) {
    if (a.coords.size() != b.coords.size())
        fail(errc::dimension_mismatch, "trace weights of different length");
    for (std::size_t s = 0; s < a.coords.size(); ++s)
        if (a.coords[s] >= b.coords[s]) return false;
    return true;
}

bool weight_is_zero(const TraceWeight& a) {
    return std::all_of(a.coords.begin(), a.coords.end(), [](const Rat& r) { return r == 0; });
}

bool weight_nonnegative(const TraceWeight& a) {
    return std::all_of(a.coords.begin(), a.coords.end(), [](const Rat& r) { return r >= 0; });
}

TraceWeight ModelSpec::apply_pairing(const GroupElement& g) const {
    if (group.is_stagewise() && g.stage != 1)
        fail(errc::stage_out_of_range, "traces are presented on stage-1 coordinates");
    if (g.free.size() != group.free_rank(1))
        fail(errc::dimension_mismatch, "element does not match the pairing width");
    TraceWeight w = weight_zero(trace_count);
    for (std::size_t s = 0; s < trace_count; ++s) {
        Rat acc(0);
        for (std::size_t c = 0; c < g.free.size(); ++c) acc += pairing[s][c] * g.free[c];
        w.coords[s] = acc;
    }
    return w;
}

void ModelSpec::validate() const {
    group.validate();
    if (trace_count == 0) fail(errc::schema_violation, "model needs at least one trace");
    if (pairing.size() != trace_count)
        fail(errc::dimension_mismatch, "pairing row count differs from trace count");
    const std::size_t width = group.free_rank(1);
    for (const auto& row : pairing)
        if (row.size() != width)
            fail(errc::dimension_mismatch, "pairing row width differs from the free rank");
    if (simple) {
        if (!group.is_simplicial())
            fail(errc::schema_violation, "the simple flag applies to simplicial models only");
        for (const auto& row : pairing)
            for (const Rat& e : row)
                if (e <= 0)
                    fail(errc::schema_violation,
                         "simple models need strictly positive pairing entries");
    }
    validate_element(unit, group);
    if (group.is_stagewise() && unit.stage != 1)
        fail(errc::stage_out_of_range, "the unit must be presented at stage 1");
    if (is_positive(unit, group) != Positivity::Positive)
        fail(errc::schema_violation, "the unit must be a positive nonzero element");
    const TraceWeight at_unit = apply_pairing(unit);
    for (const Rat& v : at_unit.coords)
        if (v != 1)
            fail(errc::unit_mismatch, "every trace must send the unit to 1");
}

ModelSpec ModelSpec::matrix_model(std::size_t n) {
    if (n == 0) fail(errc::schema_violation, "matrix size must be >= 1");
    ModelSpec m;
    m.trace_count = 1;
    m.group.presentation = SimplicialSpec{1};
    m.unit.free = {static_cast<Int>(n)};
    m.pairing = {{Rat(1, static_cast<long>(n))}};
    m.simple = true;
    return m;
}

AtomicHom::AtomicHom(std::vector<Atom> atoms, std::vector<TraceWeight> masses, PointSet support)
    : atoms_(std::move(atoms)), masses_(std::move(masses)), support_(std::move(support)) {}

AtomicHom AtomicHom::make(std::vector<Atom> atoms, const ModelSpec& model, double merge_tol) {
    model.validate();
    if (atoms.empty()) fail(errc::empty_input, "atomic map needs at least one atom");

    std::vector<PlanarPoint> raw_points;
    raw_points.reserve(atoms.size());
    for (const Atom& a : atoms) raw_points.push_back(a.point);
    PointSet support(raw_points, merge_tol);

    // Combine classes of atoms that merged onto the same representative.
    std::vector<Atom> merged(support.size());
    std::vector<bool> seen(support.size(), false);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const std::size_t rep = support.merge_map()[i];
        validate_element(atoms[i].cls, model.group);
        if (!seen[rep]) {
            merged[rep] = Atom{support[rep], atoms[i].cls};
            seen[rep] = true;
        } else {
            merged[rep].cls = add(merged[rep].cls, atoms[i].cls, model.group);
        }
    }

    std::vector<TraceWeight> masses;
    masses.reserve(merged.size());
    for (std::size_t i = 0; i < merged.size(); ++i) {
        const Atom& a = merged[i];
        if (model.group.is_stagewise() && a.cls.stage != 1)
            fail(errc::stage_out_of_range, "atom classes must be presented at stage 1");
        switch (is_positive(a.cls, model.group)) {
            case Positivity::Positive:
                break;
            case Positivity::Undecided:
                fail(errc::undecided, "positivity of an atom class is undecided at the stage cap",
                     "atom " + std::to_string(i));
            default:
                fail(errc::non_positive_class, "atom classes must be positive and nonzero",
                     "atom " + std::to_string(i));
        }
        TraceWeight w = model.apply_pairing(a.cls);
        if (!weight_nonnegative(w))
            fail(errc::schema_violation, "atom has a negative trace mass",
                 "atom " + std::to_string(i));
        masses.push_back(std::move(w));
    }

    std::vector<GroupElement> classes;
    classes.reserve(merged.size());
    for (const Atom& a : merged) classes.push_back(a.cls);
    switch (equals(sum(classes, model.group), model.unit, model.group)) {
        case Ternary::True:
            break;
        case Ternary::Undecided:
            fail(errc::undecided, "unit-sum check is undecided at the stage cap");
        case Ternary::False:
            fail(errc::unit_mismatch, "atom classes must sum to the unit");
    }

    return AtomicHom(std::move(merged), std::move(masses), std::move(support));
}

std::vector<GroupElement> AtomicHom::classes() const {
    std::vector<GroupElement> out;
    out.reserve(atoms_.size());
    for (const Atom& a : atoms_) out.push_back(a.cls);
    return out;
}

TraceWeight trace_mass(const AtomicHom& hom, const IndexSet& A, const ModelSpec& model) {
    TraceWeight acc = weight_zero(model.trace_count);
    for (std::size_t i : A) acc = weight_add(acc, hom.mass_of(i));
    return acc;
}

GroupElement class_mass(const AtomicHom& hom, const IndexSet& A, const ModelSpec& model) {
    if (A.empty()) return zero_element(model.group);
    GroupElement acc = hom[A.front()].cls;
    for (std::size_t t = 1; t < A.size(); ++t) acc = add(acc, hom[A[t]].cls, model.group);
    return acc;
}

} // namespace om
