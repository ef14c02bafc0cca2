#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fibrak/corpus.hpp"
#include "fibrak/functor.hpp"
#include "fibrak/kernel.hpp"

using namespace fibrak;

namespace {

// Walking cospan a -> c <- b.
CatPtr cospan_cat() {
    FinCatBuilder b;
    b.object("a");
    b.object("b");
    b.object("c");
    b.arrow("f", "a", "c");
    b.arrow("g", "b", "c");
    return b.build();
}

}  // namespace

TEST_CASE("builder fills identity composites and validates tables") {
    auto c = cospan_cat();
    CHECK(c->num_objects() == 3);
    CHECK(c->num_arrows() == 5);  // 3 identities + f + g
    const ArrId f = c->find_arrow("f");
    CHECK(c->compose(f, c->identity(c->find_object("a"))) == f);
    CHECK(c->compose(c->identity(c->find_object("c")), f) == f);
    CHECK(check_category(*c).ok());
    CHECK(check_category_serial(*c).ok());
}

TEST_CASE("missing composite is rejected at build time") {
    FinCatBuilder b;
    b.object("x");
    b.arrow("e", "x", "x");
    CHECK_THROWS_AS(b.build(), MalformedTable);  // e . e undeclared
}

TEST_CASE("check_category reports a mutated composite") {
    FinCatBuilder b;
    b.object("x");
    b.object("y");
    b.arrow("f", "x", "y");
    b.arrow("e", "x", "x");
    b.set_compose("e", "e", "id_x");
    b.set_compose("f", "e", "f");
    auto good = b.build();
    CHECK(check_category(*good).ok());

    // Same tables but f . e answered with an arrow of the wrong endpoints.
    FinCatBuilder bad;
    bad.object("x");
    bad.object("y");
    bad.arrow("f", "x", "y");
    bad.arrow("e", "x", "x");
    bad.set_compose("e", "e", "id_x");
    bad.set_compose("f", "e", "e");
    auto broken = bad.build();
    auto report = check_category(*broken);
    CHECK(!report.ok());
    CHECK(check_category_serial(*broken).violations == report.violations);
}

TEST_CASE("finset skeleton sizes match hand counts") {
    auto c1 = finset_skeleton(1);
    CHECK(c1->num_objects() == 2);  // 0 and 1
    CHECK(c1->num_arrows() == 3);   // id_0, id_1, 0 -> 1... plus none from 1 -> 0
    CHECK(check_category(*c1).ok());

    auto c2 = finset_skeleton(2);
    CHECK(c2->num_objects() == 3);
    // sum over (m, k) of k^m: hom(0,k)=1 each, hom(1,k)=k, hom(2,k)=k^2
    CHECK(c2->num_arrows() == 11);
    CHECK(check_category(*c2).ok());

    auto c3 = finset_skeleton(3);
    CHECK(c3->num_objects() == 4);
    CHECK(c3->num_arrows() == 1 + 1 + 1 + 1 + 1 + 2 + 3 + 1 + 4 + 9 + 1 + 8 + 27);
    CHECK(check_category(*c3).ok());
    CHECK_THROWS_AS(finset_skeleton(7), CapExceeded);
}

TEST_CASE("finset skeleton arrows are lexicographically ordered per hom-set") {
    auto c2 = finset_skeleton(2);
    const ObjId two = c2->find_object("2");
    const auto& endo = c2->hom(two, two);
    REQUIRE(endo.size() == 4);
    // graphs in lex order: (0,0) < (0,1) < (1,0) < (1,1)
    CHECK(endo[0] == c2->find_arrow("c2_2_00"));
    CHECK(endo[1] == c2->identity(two));
    CHECK(endo[2] == c2->find_arrow("c2_2_10"));
    CHECK(endo[3] == c2->find_arrow("c2_2_11"));
}

TEST_CASE("terminal object of finset skeleton is 1") {
    auto c2 = finset_skeleton(2);
    auto t = terminal_object(*c2);
    REQUIRE(t.has_value());
    CHECK(c2->object_name(*t) == "1");
    // discrete two-object category has none
    FinCatBuilder b;
    b.object("x");
    b.object("y");
    CHECK(!terminal_object(*b.build()).has_value());
}

TEST_CASE("pullbacks over the terminal object are products (or absent)") {
    auto c2 = finset_skeleton(2);
    Budget budget;
    // 1 x 2 = 2 exists in the truncation
    const ArrId bang2 = c2->find_arrow("c2_1_00");  // 2 -> 1
    auto cone = find_pullback(*c2, c2->identity(c2->find_object("1")), bang2, budget);
    REQUIRE(cone.has_value());
    CHECK(c2->object_name(cone->apex) == "2");
    CHECK(cone->p2 == c2->identity(c2->find_object("2")));
    // 2 x 2 = 4 is outside the truncation: no object satisfies the
    // universal property, so the search comes back empty
    CHECK(!find_pullback(*c2, bang2, bang2, budget).has_value());
}

TEST_CASE("pullback along identity is (dom f, id, f)") {
    auto c = cospan_cat();
    const ArrId f = c->find_arrow("f");
    const ArrId idc = c->identity(c->find_object("c"));
    Budget budget;
    auto cone = find_pullback(*c, f, idc, budget);
    REQUIRE(cone.has_value());
    CHECK(cone->apex == c->find_object("a"));
    CHECK(cone->p1 == c->identity(c->find_object("a")));
    CHECK(cone->p2 == f);
}

TEST_CASE("cospan category has no pullback of f, g") {
    auto c = cospan_cat();
    Budget budget;
    auto cone = find_pullback(*c, c->find_arrow("f"), c->find_arrow("g"), budget);
    CHECK(!cone.has_value());
    CHECK_THROWS_AS(find_pullback(*c, c->find_arrow("f"), c->identity(0), budget), NotACospan);
}

TEST_CASE("budget trips deterministically") {
    auto c2 = finset_skeleton(2);
    Budget tiny(10);
    CHECK_THROWS_AS(find_pullback(*c2, c2->find_arrow("c2_1_00"), c2->find_arrow("c2_1_00"), tiny), BudgetExceeded);
}

TEST_CASE("find_iso prefers identities and ignores non-isos") {
    auto c2 = finset_skeleton(2);
    const ObjId two = c2->find_object("2");
    auto iso = find_iso(*c2, two, two);
    REQUIRE(iso.has_value());
    CHECK(*iso == c2->identity(two));
    CHECK(!find_iso(*c2, c2->find_object("1"), two).has_value());
    CHECK(c2->is_iso(c2->find_arrow("c2_2_10")));   // the swap
    CHECK(!c2->is_iso(c2->find_arrow("c2_2_00")));  // constant
}

TEST_CASE("mono and epi detection in finset skeleton") {
    auto c2 = finset_skeleton(2);
    const ArrId incl = c2->find_arrow("c1_2_0");  // 1 -> 2 picking 0
    CHECK(c2->is_mono(incl));
    CHECK(!c2->is_epi(incl));
    const ArrId surj = c2->find_arrow("c2_1_00");  // 2 -> 1
    CHECK(c2->is_epi(surj));
    CHECK(!c2->is_mono(surj));
    CHECK(c2->is_mono(c2->find_arrow("c2_2_10")));
    CHECK(c2->is_epi(c2->find_arrow("c2_2_10")));
}

TEST_CASE("check_functor catches a non-functorial arrow map") {
    auto c2 = finset_skeleton(2);
    auto id = identity_functor(c2);
    CHECK(check_functor(id).ok());
    auto broken = id;
    // send the swap to a constant: breaks composition (swap . swap = id)
    broken.arr_map[c2->find_arrow("c2_2_10")] = c2->find_arrow("c2_2_00");
    auto report = check_functor(broken);
    CHECK(!report.ok());
    CHECK(check_functor_serial(broken).violations == report.violations);
}
