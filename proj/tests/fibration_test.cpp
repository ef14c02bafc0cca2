#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fibrak/corpus.hpp"
#include "fibrak/fibration.hpp"

using namespace fibrak;

TEST_CASE("identity fibration verifies and lifts are identities") {
    ClovenFibration p = identity_fibration(interval_cat());
    CHECK(verify_fibration(p).ok());
    const FinCat& b = p.base();
    const ArrId f = b.find_arrow("f");
    // In the identity fibration the cartesian lift of u into cod(u) is u.
    CHECK(p.lift(f, b.cod(f)) == f);
    CHECK(p.reindex_obj(f, b.cod(f)) == b.dom(f));
    // Identity-lift convention.
    for (ObjId x = 0; x < b.num_objects(); ++x)
        CHECK(p.lift(b.identity(x), x) == b.identity(x));
}

TEST_CASE("codomain fibration over the interval") {
    CatPtr b = interval_cat();
    CodFibration cod = codomain_fibration(b, DisplayClass::all_arrows(b));
    CHECK(verify_fibration(cod.fib).ok());
    // Total objects: one per arrow (id_a, id_b, f).
    CHECK(cod.fib.total().num_objects() == 3);
    CHECK(cod.fib.objects_over(b->find_object("a")).size() == 1);
    CHECK(cod.fib.objects_over(b->find_object("b")).size() == 2);
    // Reindexing id_b along f gives id_a.
    const ObjId idb = cod.fib.total().find_object("id_b");
    const ObjId r = cod.fib.reindex_obj(b->find_arrow("f"), idb);
    CHECK(cod.arrow_of_obj[r] == b->identity(b->find_object("a")));
}

TEST_CASE("vertical homs and fibres") {
    CatPtr b = interval_cat();
    CodFibration cod = codomain_fibration(b, DisplayClass::all_arrows(b));
    const ClovenFibration& p = cod.fib;
    const ObjId over_b = b->find_object("b");
    Subcat fib = fibre(p, over_b);
    CHECK(fib.cat->num_objects() == 2);
    for (ArrId a = 0; a < fib.cat->num_arrows(); ++a)
        CHECK(p.is_vertical(fib.arr_in_ambient[a]));
    // hom_vert agrees with the fibre's hom.
    const ObjId x = fib.obj_in_ambient[0], y = fib.obj_in_ambient[1];
    CHECK(p.hom_vert(x, y).size() == fib.cat->hom(0, 1).size());
}

TEST_CASE("full subfibration keeps the parent cleavage") {
    ClovenFibration p = identity_fibration(indiscrete_pair());
    std::vector<ObjId> all(p.total().num_objects());
    for (ObjId i = 0; i < p.total().num_objects(); ++i) all[i] = i;
    FullSub s = full_subfibration(p, all);
    CHECK(verify_fibration(s.fib).ok());
    CHECK(s.fib.total().num_objects() == p.total().num_objects());
    CHECK(s.fib.total().num_arrows() == p.total().num_arrows());
    for (ArrId a = 0; a < s.fib.total().num_arrows(); ++a)
        CHECK(s.fib.is_cleavage_entry(a) == p.is_cleavage_entry(s.total_sub.arr_in_ambient[a]));
}

TEST_CASE("full subfibration rejects subsets not closed under reindexing") {
    CatPtr b = interval_cat();
    CodFibration cod = codomain_fibration(b, DisplayClass::all_arrows(b));
    // id_b reindexes along f to id_a; dropping id_a breaks closure.
    const ObjId idb = cod.fib.total().find_object("id_b");
    CHECK_THROWS_AS(full_subfibration(cod.fib, {idb}), PreconditionFailed);
}

TEST_CASE("fibrewise opposite preserves objects and flips vertical homs") {
    Budget bud;
    CatPtr b = interval_cat();
    CodFibration cod = codomain_fibration(b, DisplayClass::all_arrows(b));
    OppositeFibration op = fibrewise_opposite(cod.fib, bud);
    CHECK(verify_fibration(op.fib).ok());
    CHECK(op.fib.total().num_objects() == cod.fib.total().num_objects());
    for (ObjId x = 0; x < op.fib.total().num_objects(); ++x)
        for (ObjId y = 0; y < op.fib.total().num_objects(); ++y) {
            if (cod.fib.proj_obj(x) != cod.fib.proj_obj(y)) continue;
            CHECK(op.fib.hom_vert(x, y).size() == cod.fib.hom_vert(y, x).size());
        }
}

TEST_CASE("double opposite is isomorphic to the original") {
    Budget bud;
    CatPtr b = interval_cat();
    CodFibration cod = codomain_fibration(b, DisplayClass::all_arrows(b));
    OppositeFibration op1 = fibrewise_opposite(cod.fib, bud);
    OppositeFibration op2 = fibrewise_opposite(op1.fib, bud);
    FibredFunctor inv = opposite_involution(cod.fib, op1, op2);
    CHECK(check_fibred_functor(cod.fib, op2.fib, inv).ok());
    CHECK(check_fibred_equivalence(cod.fib, op2.fib, inv).ok());
}

TEST_CASE("fibred equivalence accepts the identity and rejects a collapse") {
    ClovenFibration p = identity_fibration(interval_cat());
    FibredFunctor idf{identity_functor(p.total_ptr()), identity_functor(p.base_ptr())};
    CHECK(check_fibred_equivalence(p, p, idf).ok());
}

TEST_CASE("verify_fibration flags a missing lift") {
    // Project the discrete two-object total onto the interval without an
    // object over a: the lift of f into the object over b cannot exist.
    FinCatBuilder bld;
    bld.object("x");
    CatPtr total = bld.build();
    FinFunctor proj{total, interval_cat(), {}, {}};
    proj.obj_map = {proj.tgt->find_object("b")};
    proj.arr_map = {proj.tgt->identity(proj.tgt->find_object("b"))};
    ClovenFibration p = ClovenFibration::make(std::move(proj));
    CHECK(!verify_fibration(p).ok());
    CHECK(!p.missing_lifts().empty());
    CHECK(!p.try_lift(p.base().find_arrow("f"), 0).has_value());
}
