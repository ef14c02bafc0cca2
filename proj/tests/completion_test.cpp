#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fibrak/completion.hpp"
#include "fibrak/corpus.hpp"
#include "fibrak/structure.hpp"

using namespace fibrak;

TEST_CASE("coproduct completion of the interval identity fibration") {
    Budget bud;
    CatPtr b = interval_cat();
    ClovenFibration p = identity_fibration(b);
    DisplayClass F = DisplayClass::all_arrows(b);
    SigmaFibration s = sigma_completion(p, F, bud);
    // Objects: (id_a, a), (id_b, b), (f, a) — one per member and object over
    // its domain.
    CHECK(s.objects.size() == 3);
    CHECK(verify_fibration(s.fib).ok());
    CHECK(check_category(s.fib.total()).ok());
    // The completion has coproducts along every member.
    CHECK(verify_fibred_structure(s.fib, F, AdjointData::kLeft, bud).ok);
}

TEST_CASE("completion refuses a class that is not closed") {
    Budget bud;
    CatPtr b = finset_skeleton(2);
    ClovenFibration p = identity_fibration(b);
    CHECK_THROWS_AS(sigma_completion(p, DisplayClass::all_arrows(b), bud), PreconditionFailed);
}

TEST_CASE("coproducts in the completion are postcomposition") {
    Budget bud;
    CatPtr b = interval_cat();
    ClovenFibration p = identity_fibration(b);
    DisplayClass F = DisplayClass::all_arrows(b);
    SigmaFibration s = sigma_completion(p, F, bud);
    const ArrId f = b->find_arrow("f");
    const ObjId ins = s.object_of(b->identity(b->dom(f)), p.total().find_object("a"));
    auto left = find_adjoint_at(s.fib, f, ins, AdjointData::kLeft, bud);
    REQUIRE(left.has_value());
    // Transport of (id_a, a) along f is vertically isomorphic to (f, a).
    const ObjId expect = s.object_of(f, p.total().find_object("a"));
    CHECK((left->first == expect || !s.fib.hom_vert(left->first, expect).empty()));
}

TEST_CASE("sigma_unit matches an adjoint unit up to the transport iso") {
    Budget bud;
    CatPtr b = interval_cat();
    ClovenFibration p = identity_fibration(b);
    DisplayClass F = DisplayClass::all_arrows(b);
    SigmaFibration s = sigma_completion(p, F, bud);
    const FinCat& st = s.fib.total();
    const ArrId f = b->find_arrow("f");
    for (ObjId so = 0; so < st.num_objects(); ++so) {
        if (s.objects[so].base != b->dom(f)) continue;
        const ArrId unit = sigma_unit(p, F, s, f, so);
        CHECK(st.dom(unit) == so);
        CHECK(s.fib.is_vertical(unit));
        // Its codomain is the reindexing along f of the postcomposition
        // coproduct (f . g, alpha).
        const ObjId cop = s.object_of(b->compose(f, s.objects[so].g), s.objects[so].alpha);
        CHECK(st.cod(unit) == s.fib.reindex_obj(f, cop));
    }
}

TEST_CASE("pi completion translation is an isomorphism of fibrations") {
    Budget bud;
    for (const char* which : {"interval", "indiscrete"}) {
        CatPtr b = std::string(which) == "interval" ? interval_cat() : indiscrete_pair();
        ClovenFibration p = identity_fibration(b);
        DisplayClass F = DisplayClass::all_arrows(b);
        PiFibration pi = pi_completion(p, F, bud);
        INFO(which);
        CHECK(pi.check.ok());
        CHECK(verify_fibration(pi.direct).ok());
        CHECK(verify_fibration(pi.fib()).ok());
        CHECK(pi.direct.total().num_arrows() == pi.fib().total().num_arrows());
        // The completion has products along every member.
        CHECK(verify_fibred_structure(pi.fib(), F, AdjointData::kRight, bud).ok);
    }
}

TEST_CASE("dialectica stacks a coproduct completion on a product completion") {
    Budget bud;
    CatPtr b = interval_cat();
    ClovenFibration p = identity_fibration(b);
    DisplayClass F = DisplayClass::all_arrows(b);
    DialFibration d = dialectica(p, F, bud);
    CHECK(verify_fibration(d.fib()).ok());
    CHECK(check_category(d.fib().total()).ok());
    CHECK(verify_fibred_structure(d.fib(), F, AdjointData::kLeft, bud).ok);
    CHECK(verify_fibred_structure(d.fib(), F, AdjointData::kRight, bud).ok);
    // Base is untouched by both steps.
    CHECK(d.fib().base_ptr() == p.base_ptr());
}

TEST_CASE("completion object and arrow lookups are inverse to the tables") {
    Budget bud;
    CatPtr b = interval_cat();
    ClovenFibration p = identity_fibration(b);
    DisplayClass F = DisplayClass::all_arrows(b);
    SigmaFibration s = sigma_completion(p, F, bud);
    const FinCat& st = s.fib.total();
    for (ObjId i = 0; i < st.num_objects(); ++i)
        CHECK(s.object_of(s.objects[i].g, s.objects[i].alpha) == i);
    for (ArrId a = 0; a < st.num_arrows(); ++a)
        CHECK(s.arrow_of(st.dom(a), st.cod(a), s.arrows[a].f0, s.arrows[a].phi) == a);
}
