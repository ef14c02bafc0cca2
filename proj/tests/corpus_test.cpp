#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "fibrak/corpus.hpp"
#include "fibrak/logic.hpp"

using namespace fibrak;

TEST_CASE("finset skeleton sizes") {
    CatPtr c = finset_skeleton(2);
    CHECK(c->num_objects() == 3);  // 0, 1, 2
    // hom(m, k) has k^m maps: 1+1+1 (from 0) + 0+1+2 (from 1) + 0+1+4 (from 2).
    CHECK(c->num_arrows() == 11);
    CHECK(check_category(*c).ok());
    CHECK_THROWS_AS(finset_skeleton(9), CapExceeded);
}

TEST_CASE("small categories are lawful") {
    for (CatPtr c : {terminal_cat(), interval_cat(), indiscrete_pair(), finset_skeleton(1)})
        CHECK(check_category(*c).ok());
    CHECK(terminal_cat()->num_arrows() == 1);
    CHECK(interval_cat()->num_arrows() == 3);
    CHECK(indiscrete_pair()->num_arrows() == 4);
}

TEST_CASE("every corpus entry is a lawful fibration") {
    for (const std::string& name : corpus_names()) {
        CorpusEntry e = make_corpus_entry(name);
        INFO(name);
        CHECK(check_category(e.fibration.base()).ok());
        CHECK(check_category(e.fibration.total()).ok());
        CHECK(verify_fibration(e.fibration).ok());
    }
}

TEST_CASE("corpus construction is deterministic") {
    for (const std::string& name : corpus_names()) {
        CorpusEntry a = make_corpus_entry(name);
        CorpusEntry b = make_corpus_entry(name);
        INFO(name);
        REQUIRE(a.fibration.total().num_arrows() == b.fibration.total().num_arrows());
        for (ArrId f = 0; f < a.fibration.total().num_arrows(); ++f)
            CHECK(a.fibration.total().arrow_name(f) == b.fibration.total().arrow_name(f));
    }
}

TEST_CASE("classification matches every expected corpus verdict") {
    for (const std::string& name : corpus_names()) {
        CorpusEntry e = make_corpus_entry(name);
        Budget bud;
        ClassificationReport r = classify(e.fibration, e.display, bud);
        INFO(name);
        CHECK(r.is_hilbert_epsilon == e.expected.at("is_hilbert_epsilon"));
        CHECK(r.is_hilbert_tau == e.expected.at("is_hilbert_tau"));
        CHECK(r.is_skolem == e.expected.at("is_skolem"));
        CHECK(r.is_goedel == e.expected.at("is_goedel"));
    }
}

TEST_CASE("indecomposables of the finset skeleton") {
    CatPtr c = finset_skeleton(2);
    std::vector<ObjId> ind = indecomposables(*c);
    REQUIRE(ind.size() == 1);
    CHECK(c->object_name(ind[0]) == "1");  // 0 is the empty sum, 2 = 1 + 1
}

TEST_CASE("polynomials over the interval evaluate like polynomials") {
    Budget bud;
    CatPtr b = interval_cat();
    PolyFibre pf = polynomial_fibre(b, DisplayClass::all_arrows(b), bud);
    // Every fibre object evaluates monotonically in the argument size.
    for (ObjId x = 0; x < pf.fibre.cat->num_objects(); ++x) {
        const long at1 = evaluate_polynomial(pf, x, 1);
        const long at2 = evaluate_polynomial(pf, x, 2);
        CHECK(at1 >= 0);
        CHECK(at2 >= at1);
    }
}

TEST_CASE("family fibration tuples index the fibres") {
    auto fam = family_fibration(2, finset_skeleton(1));
    const FinCat& b = fam.fib.base();
    // Fibre over n holds |values|^n objects; values = finset_skeleton(1) has 2.
    CHECK(fam.fib.objects_over(b.find_object("0")).size() == 1);
    CHECK(fam.fib.objects_over(b.find_object("1")).size() == 2);
    CHECK(fam.fib.objects_over(b.find_object("2")).size() == 4);
    for (ObjId x = 0; x < fam.fib.total().num_objects(); ++x)
        CHECK(fam.tuple_of_obj[x].size() ==
              static_cast<std::size_t>(std::stoi(b.object_name(fam.fib.proj_obj(x)))));
}

TEST_CASE("unknown corpus names are rejected") {
    CHECK_THROWS_AS(make_corpus_entry("no-such-entry"), PreconditionFailed);
}
