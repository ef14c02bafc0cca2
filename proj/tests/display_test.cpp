#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fibrak/corpus.hpp"
#include "fibrak/display.hpp"

using namespace fibrak;

TEST_CASE("all arrows on the interval form a closed class") {
    CatPtr b = interval_cat();
    DisplayClass f = DisplayClass::all_arrows(b);
    ClosureReport r = verify_display_class(f);
    CHECK(r.pullback_closed);
    CHECK(r.has_units);
    CHECK(r.composition_closed);
    CHECK(r.well_rooted);
}

TEST_CASE("identities are pullback and composition closed but not well rooted") {
    CatPtr b = interval_cat();
    DisplayClass f = DisplayClass::identities(b);
    ClosureReport r = verify_display_class(f);
    CHECK(r.pullback_closed);
    CHECK(r.composition_closed);
    CHECK(!r.well_rooted);  // the terminal projection f : a -> b is missing
    CHECK(!r.counterexamples.empty());
}

TEST_CASE("all maps on the truncated finset skeleton are not pullback closed") {
    CatPtr b = finset_skeleton(2);
    DisplayClass f = DisplayClass::all_arrows(b);
    ClosureReport r = verify_display_class(f);
    // The kernel pair of 2 -> 1 needs the missing object 4.
    CHECK(!r.pullback_closed);
}

TEST_CASE("monos of finset2 are closed") {
    CatPtr b = finset_skeleton(2);
    DisplayClass f = DisplayClass::monos(b);
    ClosureReport r = verify_display_class(f);
    CHECK(r.pullback_closed);
    CHECK(r.composition_closed);
    CHECK(r.has_units);
    for (ArrId u : f.members()) CHECK(b->is_mono(u));
}

TEST_CASE("chosen pullbacks agree with find_pullback and are memoized") {
    CatPtr b = finset_skeleton(2);
    DisplayClass f = DisplayClass::monos(b);
    Budget bud;
    const ArrId i0 = b->find_arrow("c1_2_0");
    const ArrId i1 = b->find_arrow("c1_2_1");
    const PullbackCone& pb = f.chosen_pullback(i0, i1);
    auto direct = find_pullback(*b, i0, i1, bud);
    REQUIRE(direct.has_value());
    CHECK(pb.apex == direct->apex);
    CHECK(pb.p1 == direct->p1);
    CHECK(pb.p2 == direct->p2);
    CHECK(&f.chosen_pullback(i0, i1) == &pb);  // same cached object
}

TEST_CASE("missing pullbacks are reported, not invented") {
    CatPtr b = finset_skeleton(2);
    DisplayClass f = DisplayClass::all_arrows(b);
    const ArrId surj = b->find_arrow("c2_1_00");
    CHECK(f.try_chosen_pullback(surj, surj) == nullptr);
    CHECK_THROWS_AS(f.chosen_pullback(surj, surj), PreconditionFailed);
}

TEST_CASE("dependent products on the interval") {
    CatPtr b = interval_cat();
    DisplayClass f = DisplayClass::all_arrows(b);
    Budget bud;
    CHECK(has_dependent_products(f, bud).ok);
    const ArrId fa = b->find_arrow("f");
    const ArrId ida = b->identity(b->find_object("a"));
    auto d = dependent_product(f, ida, fa, bud);
    REQUIRE(d.has_value());
    CHECK(b->cod(d->h) == b->cod(fa));
    // The evaluation closes the square: f . e = p2.
    CHECK(b->compose(d->f, d->e) == d->square.p2);
}

TEST_CASE("dependent products can be missing") {
    CatPtr b = finset_skeleton(2);
    DisplayClass f = DisplayClass::all_arrows(b);
    Budget bud;
    DepProdReport r = has_dependent_products(f, bud);
    CHECK(!r.ok);
    CHECK(!r.failing_pairs.empty());
}

TEST_CASE("members_into filters by codomain") {
    CatPtr b = interval_cat();
    DisplayClass f = DisplayClass::all_arrows(b);
    const ObjId bb = b->find_object("b");
    for (ArrId u : f.members_into(bb)) CHECK(b->cod(u) == bb);
    CHECK(f.members_into(bb).size() == 2);  // id_b and f
}
