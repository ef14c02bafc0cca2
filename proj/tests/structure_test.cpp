#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fibrak/corpus.hpp"
#include "fibrak/structure.hpp"

using namespace fibrak;

TEST_CASE("adjoints along an identity are the identity transport") {
    Budget bud;
    ClovenFibration p = identity_fibration(interval_cat());
    const ArrId ida = p.base().identity(p.base().find_object("a"));
    const ObjId a = p.total().find_object("a");
    for (auto dir : {AdjointData::kLeft, AdjointData::kRight}) {
        auto at = find_adjoint_at(p, ida, a, dir, bud);
        REQUIRE(at.has_value());
        CHECK(at->first == a);
        CHECK(at->second == p.total().identity(a));
    }
}

TEST_CASE("codomain fibration over the interval has both adjoints along f") {
    Budget bud;
    CatPtr b = interval_cat();
    CodFibration cod = codomain_fibration(b, DisplayClass::all_arrows(b));
    const ArrId f = b->find_arrow("f");
    for (auto dir : {AdjointData::kLeft, AdjointData::kRight}) {
        auto adj = adjoint_along(cod.fib, f, dir, bud);
        REQUIRE(adj.has_value());
        CHECK(adj->laws.ok());
    }
    // Coproduct along f of the fibre object id_a is postcomposition: f.
    auto left = find_adjoint_at(cod.fib, f, cod.fib.total().find_object("id_a"), AdjointData::kLeft, bud);
    REQUIRE(left.has_value());
    CHECK(cod.arrow_of_obj[left->first] == f);
}

TEST_CASE("missing adjoints are reported as absent") {
    Budget bud;
    auto fam = family_fibration(2, finset_skeleton(2));
    const FinCat& b = fam.fib.base();
    const ArrId surj = b.find_arrow("c2_1_00");
    bool missing = false;
    for (ObjId alpha : fam.fib.objects_over(b.dom(surj)))
        if (!find_adjoint_at(fam.fib, surj, alpha, AdjointData::kLeft, bud)) missing = true;
    CHECK(missing);
}

TEST_CASE("verify_fibred_structure holds on the interval codomain fibration") {
    Budget bud;
    CatPtr b = interval_cat();
    DisplayClass F = DisplayClass::all_arrows(b);
    CodFibration cod = codomain_fibration(b, F);
    CHECK(verify_fibred_structure(cod.fib, F, AdjointData::kLeft, bud).ok);
    CHECK(verify_fibred_structure(cod.fib, F, AdjointData::kRight, bud).ok);
}

TEST_CASE("verify_fibred_structure fails where adjoints are missing") {
    Budget bud;
    auto fam = family_fibration(2, finset_skeleton(2));
    DisplayClass F = DisplayClass::all_arrows(fam.fib.base_ptr());
    StructureReport r = verify_fibred_structure(fam.fib, F, AdjointData::kLeft, bud);
    CHECK(!r.ok);
    CHECK(!r.failures.empty());
}

TEST_CASE("Beck-Chevalley squares are isos on the subobject fibration") {
    Budget bud;
    auto sub = subobject_fibration(finset_skeleton(2));
    DisplayClass F = DisplayClass::all_arrows(sub.fib.base_ptr());
    // Restrict to members with pullbacks against everything: monos class.
    DisplayClass monos = DisplayClass::monos(sub.fib.base_ptr());
    for (ArrId v : monos.members())
        for (const BCSquare& sq : beck_chevalley(sub.fib, monos, v, AdjointData::kLeft, bud)) {
            INFO(sub.fib.base().arrow_name(v), " / ", sub.fib.base().arrow_name(sq.f));
            CHECK(sq.verdict);
        }
}

TEST_CASE("square_iso mediates composite cartesian lifts") {
    Budget bud;
    CatPtr b = interval_cat();
    CodFibration cod = codomain_fibration(b, DisplayClass::all_arrows(b));
    const ClovenFibration& p = cod.fib;
    const FinCat& t = p.total();
    const ArrId ida = b->identity(b->find_object("a"));
    const ArrId f = b->find_arrow("f");
    // Square f . id_a = f . id_a.
    for (ObjId x : p.objects_over(b->cod(f))) {
        const ArrId c = square_iso(p, ida, f, ida, f, x);
        CHECK(p.is_vertical(c));
        CHECK(t.is_iso(c));
    }
}
