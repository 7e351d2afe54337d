// Ordered weight groups.  Weights live in one of three presentations:
//   * simplicial   Z^k with the entrywise cone,
//   * torsion      Z^k (+) Z/n_1 (+) ... (+) Z/n_t, ordered by the free part,
//   * stagewise    an inductive system of Z^{r(1)} -> Z^{r(2)} -> ... given by
//                  nonnegative integer matrices, where positivity means "some
//                  finite stage image is entrywise nonnegative and nonzero".
// For the stagewise presentation questions are answered by pushing elements
// forward up to a declared stage cap; when the cap runs out without a
// certificate either way the answer is Undecided rather than a guess.
#pragma once

#include "om/rational.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace om {

using Int = long long;

struct SimplicialSpec {
    std::size_t k = 1;
};

struct TorsionSpec {
    std::size_t k = 1;
    std::vector<Int> orders; // each >= 2
};

struct BratteliSpec {
    // maps[t] carries stage t+1 coordinates to stage t+2 coordinates; entry
    // [row][col] is the multiplicity.  If stage_cap asks for more stages than
    // maps provides, the last map repeats (it must be square in that case).
    std::vector<std::vector<std::vector<Int>>> maps;
    std::size_t stage_cap = 1;

    std::size_t stage_count() const noexcept { return stage_cap; }
    std::size_t rank_at(std::size_t stage) const; // stages are 1-based
    const std::vector<std::vector<Int>>& map_from(std::size_t stage) const;
};

struct GroupSpec {
    std::variant<SimplicialSpec, TorsionSpec, BratteliSpec> presentation;

    bool is_simplicial() const noexcept { return std::holds_alternative<SimplicialSpec>(presentation); }
    bool is_torsion() const noexcept { return std::holds_alternative<TorsionSpec>(presentation); }
    bool is_stagewise() const noexcept { return std::holds_alternative<BratteliSpec>(presentation); }

    const SimplicialSpec& simplicial() const { return std::get<SimplicialSpec>(presentation); }
    const TorsionSpec& torsion() const { return std::get<TorsionSpec>(presentation); }
    const BratteliSpec& stagewise() const { return std::get<BratteliSpec>(presentation); }

    // Number of free coordinates at the element's natural stage.
    std::size_t free_rank(std::size_t stage = 1) const;
    std::size_t torsion_rank() const;

    void validate() const;
};

struct GroupElement {
    std::vector<Int> free;
    std::vector<Int> torsion;  // reduced representatives in [0, order)
    std::size_t stage = 1;     // stagewise presentation only
};

enum class Positivity { Positive, Zero, NotPositive, Undecided };
enum class Ternary { True, False, Undecided };

const char* to_string(Positivity p) noexcept;
const char* to_string(Ternary t) noexcept;

// Shape/stage checks; throws errc::dimension_mismatch or stage_out_of_range.
void validate_element(const GroupElement& g, const GroupSpec& spec);

GroupElement zero_element(const GroupSpec& spec, std::size_t stage = 1);
GroupElement neg(const GroupElement& g, const GroupSpec& spec);
// Addition aligns stages by pushing the earlier element forward.
GroupElement add(const GroupElement& a, const GroupElement& b, const GroupSpec& spec);
GroupElement sub(const GroupElement& a, const GroupElement& b, const GroupSpec& spec);

// Image of the free part at stage n (n >= g.stage).
std::vector<Int> push_to_stage(const GroupElement& g, const GroupSpec& spec, std::size_t n);

// Cone membership.  Positive means "in the positive cone and nonzero"; for
// the stagewise presentation the verdict is certified by the first stage <=
// stage_cap whose image decides, else Undecided.  decided_stage (optional out)
// receives that stage.
Positivity is_positive(const GroupElement& g, const GroupSpec& spec,
                       std::size_t* decided_stage = nullptr);

// a <= b in the cone order, i.e. b - a is Positive or Zero.
Ternary leq(const GroupElement& a, const GroupElement& b, const GroupSpec& spec,
            std::size_t* decided_stage = nullptr);

// a == b as group elements (stagewise: some common image coincides; a
// certified nonzero sign makes it False, cap exhaustion Undecided).
Ternary equals(const GroupElement& a, const GroupElement& b, const GroupSpec& spec,
               std::size_t* decided_stage = nullptr);

GroupElement sum(const std::vector<GroupElement>& gs, const GroupSpec& spec);

} // namespace om
