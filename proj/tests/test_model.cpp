#include "om/model.hpp"

#include "om/errors.hpp"

#include "doctest.h"

#include <functional>
#include <stdexcept>
#include <vector>

using namespace om;

namespace {

GroupElement el(std::vector<Int> free, std::vector<Int> tor = {}) {
    GroupElement g;
    g.free = std::move(free);
    g.torsion = std::move(tor);
    return g;
}

errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    throw std::logic_error("expected an om::error");
}

} // namespace

TEST_CASE("trace weight arithmetic and comparisons") {
    TraceWeight a = weight_zero(2);
    a.coords = {Rat(1, 2), Rat(1, 3)};
    TraceWeight b;
    b.coords = {Rat(1, 2), Rat(2, 3)};
    const TraceWeight s = weight_add(a, b);
    CHECK(s.coords[0] == Rat(1));
    CHECK(s.coords[1] == Rat(1));
    CHECK(weight_leq(a, b));
    CHECK(!weight_leq(b, a));
    CHECK(!weight_lt(a, b));  // first coordinate ties
    TraceWeight c;
    c.coords = {Rat(2, 3), Rat(1)};
    CHECK(weight_lt(a, c));
    CHECK(weight_is_zero(weight_zero(3)));
    CHECK(!weight_is_zero(a));
    CHECK(weight_nonnegative(a));
    TraceWeight n;
    n.coords = {Rat(-1), Rat(0)};
    CHECK(!weight_nonnegative(n));
}

TEST_CASE("the n-by-n matrix model has a unit of trace one") {
    const ModelSpec m = ModelSpec::matrix_model(4);
    CHECK_NOTHROW(m.validate());
    CHECK(m.trace_count == 1);
    CHECK(m.unit.free == std::vector<Int>{4});
    const TraceWeight w = m.apply_pairing(el({1}));
    CHECK(w.coords[0] == Rat(1, 4));
    CHECK(m.apply_pairing(m.unit).coords[0] == Rat(1));
}

TEST_CASE("pairing application is an exact rational matrix product") {
    ModelSpec m;
    m.trace_count = 2;
    m.group.presentation = SimplicialSpec{2};
    m.unit = el({2, 3});
    m.pairing = {{Rat(1, 2), Rat(0)}, {Rat(0), Rat(1, 3)}};
    CHECK_NOTHROW(m.validate());
    const TraceWeight w = m.apply_pairing(el({1, 2}));
    CHECK(w.coords[0] == Rat(1, 2));
    CHECK(w.coords[1] == Rat(2, 3));
}

TEST_CASE("model validation rejects inconsistent pieces") {
    ModelSpec m;
    m.trace_count = 1;
    m.group.presentation = SimplicialSpec{2};
    m.unit = el({1, 1});
    m.pairing = {{Rat(1, 2), Rat(1, 2)}};
    CHECK_NOTHROW(m.validate());

    SUBCASE("pairing width must match the free rank") {
        m.pairing = {{Rat(1)}};
        CHECK(code_of([&] { m.validate(); }) == errc::dimension_mismatch);
    }
    SUBCASE("row count must match the trace count") {
        m.trace_count = 2;
        CHECK(code_of([&] { m.validate(); }) == errc::dimension_mismatch);
    }
    SUBCASE("the unit must be positive") {
        m.unit = el({0, 0});
        CHECK(code_of([&] { m.validate(); }) == errc::schema_violation);
    }
    SUBCASE("the unit must have trace one") {
        m.unit = el({2, 2});
        CHECK(code_of([&] { m.validate(); }) == errc::unit_mismatch);
    }
    SUBCASE("the simple flag needs strictly positive pairings") {
        m.simple = true;
        m.pairing = {{Rat(1), Rat(0)}};
        CHECK(code_of([&] { m.validate(); }) == errc::schema_violation);
    }
    SUBCASE("the simple flag is simplicial-only") {
        m.simple = true;
        m.group.presentation = TorsionSpec{2, {3}};
        m.unit.torsion = {0};
        CHECK(code_of([&] { m.validate(); }) == errc::schema_violation);
    }
}

TEST_CASE("atom families merge duplicate points and sum their classes") {
    const ModelSpec m = ModelSpec::matrix_model(3);
    std::vector<Atom> atoms{{{0, 0}, el({1})}, {{1, 0}, el({1})}, {{0, 1e-13}, el({1})}};
    const AtomicHom h = AtomicHom::make(atoms, m);
    REQUIRE(h.size() == 2);
    CHECK(h[0].cls.free == std::vector<Int>{2});
    CHECK(h[1].cls.free == std::vector<Int>{1});
    CHECK(h.mass_of(0).coords[0] == Rat(2, 3));
    CHECK(h.mass_of(1).coords[0] == Rat(1, 3));
    CHECK(h.support().size() == 2);
}

TEST_CASE("atom families preserve first-occurrence order of distinct points") {
    const ModelSpec m = ModelSpec::matrix_model(3);
    std::vector<Atom> atoms{{{5, 0}, el({1})}, {{-1, 0}, el({1})}, {{2, 2}, el({1})}};
    const AtomicHom h = AtomicHom::make(atoms, m);
    REQUIRE(h.size() == 3);
    CHECK(h[0].point.re == 5.0);
    CHECK(h[1].point.re == -1.0);
    CHECK(h[2].point.re == 2.0);
}

TEST_CASE("atom validation rejects bad classes and sums") {
    const ModelSpec m = ModelSpec::matrix_model(2);
    SUBCASE("empty family") {
        CHECK(code_of([&] { AtomicHom::make({}, m); }) == errc::empty_input);
    }
    SUBCASE("class must be positive") {
        std::vector<Atom> atoms{{{0, 0}, el({0})}, {{1, 0}, el({2})}};
        CHECK(code_of([&] { AtomicHom::make(atoms, m); }) == errc::non_positive_class);
    }
    SUBCASE("classes must sum to the unit") {
        std::vector<Atom> atoms{{{0, 0}, el({1})}, {{1, 0}, el({2})}};
        CHECK(code_of([&] { AtomicHom::make(atoms, m); }) == errc::unit_mismatch);
    }
    SUBCASE("negative trace masses are rejected") {
        ModelSpec k;
        k.trace_count = 1;
        k.group.presentation = SimplicialSpec{2};
        k.unit = el({2, 1});
        k.pairing = {{Rat(1), Rat(-1)}};
        CHECK_NOTHROW(k.validate());
        // class (0, 1) is positive in the cone but pairs to -1
        std::vector<Atom> atoms{{{0, 0}, el({2, 0})}, {{1, 0}, el({0, 1})}};
        CHECK(code_of([&] { AtomicHom::make(atoms, k); }) == errc::schema_violation);
    }
}

TEST_CASE("torsion classes sum to the unit modulo the orders") {
    ModelSpec m;
    m.trace_count = 1;
    m.group.presentation = TorsionSpec{1, {3}};
    m.unit = el({2}, {0});
    m.pairing = {{Rat(1, 2)}};
    CHECK_NOTHROW(m.validate());
    // torsion parts 1 + 2 = 3 = 0 (mod 3)
    std::vector<Atom> atoms{{{0, 0}, el({1}, {1})}, {{1, 0}, el({1}, {2})}};
    const AtomicHom h = AtomicHom::make(atoms, m);
    CHECK(h.size() == 2);
    CHECK(h.mass_of(0).coords[0] == Rat(1, 2));
}

TEST_CASE("subset masses accumulate") {
    const ModelSpec m = ModelSpec::matrix_model(4);
    std::vector<Atom> atoms{{{0, 0}, el({1})}, {{1, 0}, el({2})}, {{2, 0}, el({1})}};
    const AtomicHom h = AtomicHom::make(atoms, m);
    CHECK(trace_mass(h, {0, 1}, m).coords[0] == Rat(3, 4));
    CHECK(trace_mass(h, {}, m).coords[0] == Rat(0));
    CHECK(class_mass(h, {0, 2}, m).free == std::vector<Int>{2});
    CHECK(is_positive(class_mass(h, {}, m), m.group) == Positivity::Zero);
    const auto classes = h.classes();
    REQUIRE(classes.size() == 3);
    CHECK(classes[1].free == std::vector<Int>{2});
}
