// Model data: a weight group together with a distinguished unit and a finite
// family of normalized traces given by a rational pairing matrix, plus the
// finitely supported atomic maps (point -> class) the metrics operate on.
#pragma once

#include "om/geometry.hpp"
#include "om/group.hpp"
#include "om/rational.hpp"

#include <vector>

namespace om {

// A value of the trace family: one rational per trace coordinate.
struct TraceWeight {
    std::vector<Rat> coords;
};

TraceWeight weight_zero(std::size_t m);
TraceWeight weight_add(const TraceWeight& a, const TraceWeight& b);
bool weight_leq(const TraceWeight& a, const TraceWeight& b);      // entrywise <=
bool weight_lt(const TraceWeight& a, const TraceWeight& b);       // entrywise <
bool weight_is_zero(const TraceWeight& a);
bool weight_nonnegative(const TraceWeight& a);

struct ModelSpec {
    std::size_t trace_count = 1;                 // m
    GroupSpec group;
    GroupElement unit;                           // order unit; every trace sends it to 1
    std::vector<std::vector<Rat>> pairing;       // m x free_rank(stage 1)
    // When set (and the group is simplicial) every pairing entry must be
    // strictly positive, so traces separate the cone.
    bool simple = false;

    // Trace values of g's free part.  For the stagewise presentation the
    // pairing acts on stage-1 coordinates, so g must be given at stage 1.
    TraceWeight apply_pairing(const GroupElement& g) const;

    void validate() const;

    // The model of n x n matrices: one trace, Z with unit n, pairing 1/n.
    static ModelSpec matrix_model(std::size_t n);
};

struct Atom {
    PlanarPoint point;
    GroupElement cls;
};

// A finitely supported positive map with total class equal to the unit.
// Construction validates positivity of every class, the unit sum, and
// nonnegativity of each atom's trace masses; atoms closer than merge_tol are
// combined.
class AtomicHom {
public:
    static AtomicHom make(std::vector<Atom> atoms, const ModelSpec& model,
                          double merge_tol = PointSet::kDefaultMergeTol);

    std::size_t size() const noexcept { return atoms_.size(); }
    const Atom& operator[](std::size_t i) const { return atoms_[i]; }
    const std::vector<Atom>& atoms() const noexcept { return atoms_; }
    const PointSet& support() const noexcept { return support_; }
    const TraceWeight& mass_of(std::size_t i) const { return masses_[i]; }

    std::vector<GroupElement> classes() const;

private:
    AtomicHom(std::vector<Atom> atoms, std::vector<TraceWeight> masses, PointSet support);

    std::vector<Atom> atoms_;
    std::vector<TraceWeight> masses_;
    PointSet support_;
};

// Sum of trace masses over the atom subset A.
TraceWeight trace_mass(const AtomicHom& hom, const IndexSet& A, const ModelSpec& model);

// Sum of classes over the atom subset A.
GroupElement class_mass(const AtomicHom& hom, const IndexSet& A, const ModelSpec& model);

} // namespace om
