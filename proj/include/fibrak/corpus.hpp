#pragma once

#include <map>

#include "fibrak/completion.hpp"

namespace fibrak {

/// Skeleton of finite sets up to size n: objects "0".."n", arrows all
/// functions named c<m>_<k>_<digits> (digits = images, lexicographic order
/// within each hom-set), identities "id_<k>".  Throws CapExceeded past cap.
CatPtr finset_skeleton(int n, int cap = 4);

/// The walking arrow a -> b (arrow "f").
CatPtr interval_cat();

/// One object "*".
CatPtr terminal_cat();

/// Two objects "x", "y" with a unique arrow in each direction.
CatPtr indiscrete_pair();

/// The identity fibration on a base.
ClovenFibration identity_fibration(CatPtr b);

/// The codomain fibration restricted to a member class: total category is
/// the full subcategory of the arrow category on members, projected to the
/// codomain, with chosen-pullback reindexing.
struct CodFibration {
    ClovenFibration fib;
    std::vector<ArrId> arrow_of_obj;                    // total object -> base arrow
    std::vector<std::pair<ArrId, ArrId>> legs_of_arr;   // total arrow -> (s, t)
};
CodFibration codomain_fibration(CatPtr b, const DisplayClass& F);

/// The subobject fibration: fibres are skeletal posets of monos, one
/// order-least representative per isomorphism class.
struct SubFibration {
    ClovenFibration fib;
    std::vector<ArrId> mono_of_obj;  // total object -> representative mono
};
SubFibration subobject_fibration(CatPtr b);

/// Finite truncation of the family fibration: base finset_skeleton(index_cap),
/// fibre over n = n-tuples of value objects, reindexing by precomposition.
struct FamFibration {
    ClovenFibration fib;
    std::vector<std::vector<ObjId>> tuple_of_obj;  // total object -> value tuple
};
FamFibration family_fibration(int index_cap, CatPtr values);

/// Objects whose covariant hom-functor preserves binary and empty
/// coproducts.  Throws PreconditionFailed if C lacks the coproducts.
std::vector<ObjId> indecomposables(const FinCat& c);

/// The fibre over the terminal base object of the Dialectica construction
/// applied to the restricted codomain fibration: the category of
/// F-polynomials.
struct PolyFibre {
    CodFibration cod;
    DialFibration dial;
    Subcat fibre;
};
PolyFibre polynomial_fibre(CatPtr b, const DisplayClass& F, Budget& budget);

/// Evaluates a polynomial object on a set of the given size by global-point
/// counting: the sum over points a of the position object of
/// x_size^(directions over a).
long evaluate_polynomial(const PolyFibre& pf, ObjId fibre_obj, int x_size);

/// A named deterministic instance with its expected classification.
struct CorpusEntry {
    std::string name;
    ClovenFibration fibration;
    DisplayClass display;
    std::map<std::string, bool> expected;  // property name -> verdict
};

const std::vector<std::string>& corpus_names();
CorpusEntry make_corpus_entry(const std::string& name);

}  // namespace fibrak
