#include "om/group.hpp"

#include "om/errors.hpp"

#include <algorithm>
#include <limits>

namespace om {

namespace {

Int reduce_mod(Int v, Int order) noexcept {
    Int r = v % order;
    if (r < 0) r += order;
    return r;
}

// Free-part image of v under the connecting maps from stage `from` to `to`,
// computed in arbitrary precision so deep stage caps cannot overflow.
std::vector<BigInt> push_big(std::vector<BigInt> v, const BratteliSpec& spec,
                             std::size_t from, std::size_t to) {
    for (std::size_t s = from; s < to; ++s) {
        const auto& M = spec.map_from(s);
        std::vector<BigInt> next(M.size(), 0);
        for (std::size_t r = 0; r < M.size(); ++r)
            for (std::size_t c = 0; c < M[r].size(); ++c)
                if (M[r][c] != 0) next[r] += BigInt(M[r][c]) * v[c];
        v = std::move(next);
    }
    return v;
}

std::vector<BigInt> to_big(const std::vector<Int>& v) {
    return std::vector<BigInt>(v.begin(), v.end());
}

enum class Sign { Zero, NonNeg, NonPos, Mixed };

Sign sign_of(const std::vector<BigInt>& v) noexcept {
    bool pos = false, neg = false;
    for (const BigInt& x : v) {
        if (x > 0) pos = true;
        else if (x < 0) neg = true;
    }
    if (pos && neg) return Sign::Mixed;
    if (pos) return Sign::NonNeg;
    if (neg) return Sign::NonPos;
    return Sign::Zero;
}

} // namespace

std::size_t BratteliSpec::rank_at(std::size_t stage) const {
    if (maps.empty()) fail(errc::presentation_required, "stagewise presentation has no connecting maps");
    if (stage < 1 || stage > stage_cap) {
        fail(errc::stage_out_of_range, "stage " + std::to_string(stage) + " outside [1, cap]");
    }
    if (stage == 1) return maps.front().front().size();
    return map_from(stage - 1).size();
}

const std::vector<std::vector<Int>>& BratteliSpec::map_from(std::size_t stage) const {
    if (maps.empty()) fail(errc::presentation_required, "stagewise presentation has no connecting maps");
    const std::size_t idx = std::min(stage - 1, maps.size() - 1);
    return maps[idx];
}

std::size_t GroupSpec::free_rank(std::size_t stage) const {
    if (is_simplicial()) return simplicial().k;
    if (is_torsion()) return torsion().k;
    return stagewise().rank_at(stage);
}

std::size_t GroupSpec::torsion_rank() const {
    return is_torsion() ? torsion().orders.size() : 0;
}

void GroupSpec::validate() const {
    if (is_simplicial()) {
        if (simplicial().k == 0) fail(errc::schema_violation, "simplicial rank must be >= 1");
        return;
    }
    if (is_torsion()) {
        const auto& t = torsion();
        if (t.k == 0) fail(errc::schema_violation, "free rank must be >= 1");
        if (t.orders.empty()) fail(errc::schema_violation, "torsion presentation needs at least one finite order");
        for (Int n : t.orders)
            if (n < 2) fail(errc::schema_violation, "torsion orders must be >= 2");
        return;
    }
    const auto& b = stagewise();
    if (b.stage_cap < 1) fail(errc::schema_violation, "stage cap must be >= 1");
    if (b.maps.empty()) fail(errc::presentation_required, "stagewise presentation needs connecting maps");
    for (std::size_t t = 0; t < b.maps.size(); ++t) {
        const auto& M = b.maps[t];
        if (M.empty() || M.front().empty())
            fail(errc::schema_violation, "connecting map " + std::to_string(t) + " is empty");
        const std::size_t cols = M.front().size();
        for (const auto& row : M) {
            if (row.size() != cols)
                fail(errc::schema_violation, "connecting map " + std::to_string(t) + " is ragged");
            for (Int e : row)
                if (e < 0) fail(errc::schema_violation, "connecting maps must be nonnegative");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            bool nonzero = false;
            for (const auto& row : M) nonzero = nonzero || row[c] != 0;
            if (!nonzero)
                fail(errc::schema_violation,
                     "connecting map " + std::to_string(t) + " has a zero column");
        }
        if (t + 1 < b.maps.size() && b.maps[t + 1].front().size() != M.size())
            fail(errc::schema_violation, "connecting maps do not chain (rank mismatch)");
    }
    if (b.stage_cap > b.maps.size() + 1) {
        const auto& last = b.maps.back();
        if (last.size() != last.front().size())
            fail(errc::schema_violation,
                 "stage cap repeats the last connecting map, which must be square");
    }
}

const char* to_string(Positivity p) noexcept {
    switch (p) {
        case Positivity::Positive:    return "positive";
        case Positivity::Zero:        return "zero";
        case Positivity::NotPositive: return "not-positive";
        case Positivity::Undecided:   return "undecided";
    }
    return "?";
}

const char* to_string(Ternary t) noexcept {
    switch (t) {
        case Ternary::True:      return "true";
        case Ternary::False:     return "false";
        case Ternary::Undecided: return "undecided";
    }
    return "?";
}

void validate_element(const GroupElement& g, const GroupSpec& spec) {
    if (spec.is_stagewise()) {
        const auto& b = spec.stagewise();
        if (g.stage < 1 || g.stage > b.stage_cap)
            fail(errc::stage_out_of_range,
                 "element stage " + std::to_string(g.stage) + " outside [1, cap]");
        if (g.free.size() != b.rank_at(g.stage))
            fail(errc::dimension_mismatch, "free part does not match the rank of its stage");
        if (!g.torsion.empty())
            fail(errc::dimension_mismatch, "stagewise elements carry no torsion part");
        return;
    }
    if (g.stage != 1)
        fail(errc::stage_out_of_range, "only the stagewise presentation has stages");
    if (g.free.size() != spec.free_rank())
        fail(errc::dimension_mismatch, "free part has wrong length");
    if (spec.is_torsion()) {
        const auto& orders = spec.torsion().orders;
        if (g.torsion.size() != orders.size())
            fail(errc::dimension_mismatch, "torsion part has wrong length");
        for (std::size_t i = 0; i < orders.size(); ++i)
            if (g.torsion[i] < 0 || g.torsion[i] >= orders[i])
                fail(errc::schema_violation, "torsion coordinate not reduced into [0, order)");
    } else if (!g.torsion.empty()) {
        fail(errc::dimension_mismatch, "simplicial elements carry no torsion part");
    }
}

GroupElement zero_element(const GroupSpec& spec, std::size_t stage) {
    GroupElement g;
    g.stage = spec.is_stagewise() ? stage : 1;
    g.free.assign(spec.free_rank(g.stage), 0);
    g.torsion.assign(spec.torsion_rank(), 0);
    return g;
}

GroupElement neg(const GroupElement& g, const GroupSpec& spec) {
    GroupElement out = g;
    for (Int& v : out.free) v = -v;
    if (spec.is_torsion()) {
        const auto& orders = spec.torsion().orders;
        for (std::size_t i = 0; i < out.torsion.size(); ++i)
            out.torsion[i] = reduce_mod(-out.torsion[i], orders[i]);
    }
    return out;
}

GroupElement add(const GroupElement& a, const GroupElement& b, const GroupSpec& spec) {
    GroupElement lhs = a, rhs = b;
    if (spec.is_stagewise() && lhs.stage != rhs.stage) {
        const std::size_t target = std::max(lhs.stage, rhs.stage);
        lhs.free = push_to_stage(lhs, spec, target);
        rhs.free = push_to_stage(rhs, spec, target);
        lhs.stage = rhs.stage = target;
    }
    if (lhs.free.size() != rhs.free.size() || lhs.torsion.size() != rhs.torsion.size())
        fail(errc::dimension_mismatch, "cannot add elements of different shape");
    GroupElement out = lhs;
    for (std::size_t i = 0; i < out.free.size(); ++i) out.free[i] += rhs.free[i];
    if (spec.is_torsion()) {
        const auto& orders = spec.torsion().orders;
        for (std::size_t i = 0; i < out.torsion.size(); ++i)
            out.torsion[i] = reduce_mod(out.torsion[i] + rhs.torsion[i], orders[i]);
    }
    return out;
}

GroupElement sub(const GroupElement& a, const GroupElement& b, const GroupSpec& spec) {
    return add(a, neg(b, spec), spec);
}

std::vector<Int> push_to_stage(const GroupElement& g, const GroupSpec& spec, std::size_t n) {
    if (!spec.is_stagewise()) {
        if (n != 1) fail(errc::stage_out_of_range, "only the stagewise presentation has stages");
        return g.free;
    }
    const auto& b = spec.stagewise();
    if (n < g.stage) fail(errc::stage_out_of_range, "cannot push an element to an earlier stage");
    if (n > b.stage_cap) fail(errc::stage_out_of_range, "stage beyond the declared cap");
    const std::vector<BigInt> img = push_big(to_big(g.free), b, g.stage, n);
    std::vector<Int> out(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (img[i] > std::numeric_limits<Int>::max() || img[i] < std::numeric_limits<Int>::min())
            fail(errc::stage_out_of_range, "stage image exceeds 64-bit range");
        out[i] = img[i].convert_to<Int>();
    }
    return out;
}

Positivity is_positive(const GroupElement& g, const GroupSpec& spec,
                       std::size_t* decided_stage) {
    validate_element(g, spec);
    if (decided_stage) *decided_stage = 1;
    if (spec.is_simplicial() || spec.is_torsion()) {
        bool free_zero = std::all_of(g.free.begin(), g.free.end(), [](Int v) { return v == 0; });
        bool free_nonneg = std::all_of(g.free.begin(), g.free.end(), [](Int v) { return v >= 0; });
        bool tor_zero = std::all_of(g.torsion.begin(), g.torsion.end(), [](Int v) { return v == 0; });
        if (free_zero) return tor_zero ? Positivity::Zero : Positivity::NotPositive;
        return free_nonneg ? Positivity::Positive : Positivity::NotPositive;
    }
    const auto& b = spec.stagewise();
    std::vector<BigInt> img = to_big(g.free);
    for (std::size_t s = g.stage; s <= b.stage_cap; ++s) {
        if (s > g.stage) img = push_big(std::move(img), b, s - 1, s);
        switch (sign_of(img)) {
            case Sign::Zero:
                if (decided_stage) *decided_stage = s;
                return Positivity::Zero;
            case Sign::NonNeg:
                // Entrywise >= 0 and nonzero persists: the maps are nonnegative
                // with no zero column, so the image stays in the cone forever.
                if (decided_stage) *decided_stage = s;
                return Positivity::Positive;
            case Sign::NonPos:
                if (decided_stage) *decided_stage = s;
                return Positivity::NotPositive;
            case Sign::Mixed:
                break;
        }
    }
    return Positivity::Undecided;
}

Ternary leq(const GroupElement& a, const GroupElement& b, const GroupSpec& spec,
            std::size_t* decided_stage) {
    switch (is_positive(sub(b, a, spec), spec, decided_stage)) {
        case Positivity::Positive:
        case Positivity::Zero:
            return Ternary::True;
        case Positivity::NotPositive:
            return Ternary::False;
        case Positivity::Undecided:
            return Ternary::Undecided;
    }
    return Ternary::Undecided;
}

Ternary equals(const GroupElement& a, const GroupElement& b, const GroupSpec& spec,
               std::size_t* decided_stage) {
    const GroupElement d = sub(a, b, spec);
    if (decided_stage) *decided_stage = d.stage;
    if (!spec.is_stagewise()) {
        bool zero = std::all_of(d.free.begin(), d.free.end(), [](Int v) { return v == 0; }) &&
                    std::all_of(d.torsion.begin(), d.torsion.end(), [](Int v) { return v == 0; });
        return zero ? Ternary::True : Ternary::False;
    }
    const auto& spec_b = spec.stagewise();
    std::vector<BigInt> img = to_big(d.free);
    for (std::size_t s = d.stage; s <= spec_b.stage_cap; ++s) {
        if (s > d.stage) img = push_big(std::move(img), spec_b, s - 1, s);
        switch (sign_of(img)) {
            case Sign::Zero:
                if (decided_stage) *decided_stage = s;
                return Ternary::True;
            case Sign::NonNeg:
            case Sign::NonPos:
                // A certified sign never returns to zero (no zero columns).
                if (decided_stage) *decided_stage = s;
                return Ternary::False;
            case Sign::Mixed:
                break;
        }
    }
    return Ternary::Undecided;
}

GroupElement sum(const std::vector<GroupElement>& gs, const GroupSpec& spec) {
    if (gs.empty()) return zero_element(spec);
    GroupElement acc = gs.front();
    for (std::size_t i = 1; i < gs.size(); ++i) acc = add(acc, gs[i], spec);
    return acc;
}

} // namespace om
