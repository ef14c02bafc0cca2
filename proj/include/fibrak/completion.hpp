#pragma once

#include <map>
#include <tuple>

#include "fibrak/display.hpp"
#include "fibrak/fibration.hpp"
#include "fibrak/structure.hpp"

namespace fibrak {

/// An object of the coproduct completion: a member g : X ->> I together
/// with an object alpha of the input fibration lying over X.
struct SigmaObject {
    ObjId base;   // I
    ArrId g;      // member X ->> I
    ObjId alpha;  // input total object over dom g
};

/// A morphism (g: X ->> I, alpha) -> (h: Y ->> J, beta): a base square
/// h . f1 = f0 . g together with an input arrow phi : alpha -> beta over f1.
struct SigmaArrow {
    ArrId f0;   // I -> J
    ArrId f1;   // X -> Y (the projection of phi)
    ArrId phi;  // alpha -> beta in the input total category
};

/// The coproduct completion of a fibration along a display class, with
/// back-references from the completed total category into its presentation.
struct SigmaFibration {
    ClovenFibration fib;
    std::vector<SigmaObject> objects;  // indexed by completed total object id
    std::vector<SigmaArrow> arrows;    // indexed by completed total arrow id

    ObjId object_of(ArrId g, ObjId alpha) const { return obj_id.at({g, alpha}); }
    ArrId arrow_of(ObjId src, ObjId dst, ArrId f0, ArrId phi) const {
        return arr_id.at({src, dst, f0, phi});
    }

    std::map<std::pair<ArrId, ObjId>, ObjId> obj_id;
    std::map<std::tuple<ObjId, ObjId, ArrId, ArrId>, ArrId> arr_id;
};

/// Builds the coproduct completion.  Requires the display class to be
/// pullback- and composition-closed; throws PreconditionFailed otherwise.
/// The result has coproducts along every member, given by postcomposition.
SigmaFibration sigma_completion(const ClovenFibration& p, const DisplayClass& F, Budget& budget);

/// A morphism of the direct product-completion presentation, from
/// (g: X ->> J, alpha) to (h: Y ->> K, beta) over f0 : J -> K.  With
/// (W, p1 : W -> Y, u' : W ->> J) the chosen pullback of h along f0, it is
/// a pair of f1 : W -> X with g . f1 = u' and a vertical phi over W from
/// the f1-reindexing of alpha to the p1-reindexing of beta.
struct PiArrow {
    ArrId f0;
    ArrId f1;
    ArrId phi;
};

/// The product completion, derived as the fibrewise opposite of the
/// coproduct completion of the fibrewise opposite.  A direct presentation
/// (PiArrow data) is built alongside and translated arrow-by-arrow onto the
/// derived one; `iso` is the resulting fibred isomorphism and `check`
/// records any failure of the translation to be bijective and functorial.
struct PiFibration {
    OppositeFibration op_in;   // opposite of the input
    SigmaFibration sigma;      // coproduct completion of the opposite
    OppositeFibration op_out;  // its opposite: the product completion

    ClovenFibration direct;          // direct presentation
    std::vector<PiArrow> direct_arrows;  // indexed by direct total arrow id
    FibredFunctor iso;               // direct -> derived, identity on objects
    LawReport check;

    const ClovenFibration& fib() const { return op_out.fib; }
};

PiFibration pi_completion(const ClovenFibration& p, const DisplayClass& F, Budget& budget);

/// The Dialectica construction: coproduct completion after product
/// completion.
struct DialFibration {
    PiFibration pi;
    SigmaFibration sigma;  // coproduct completion of pi.fib()

    const ClovenFibration& fib() const { return sigma.fib; }
};

DialFibration dialectica(const ClovenFibration& p, const DisplayClass& F, Budget& budget);

/// The closed-form completion unit at sigma = (g : X ->> I, alpha) along a
/// member u : I ->> J: the arrow sigma -> u*(coproduct of sigma along u) in
/// the completed total category, built from the mediator into the chosen
/// pullback of u.g along u.  Agrees with the unit found by adjoint search
/// up to the mediating vertical isomorphism of coproduct objects.
ArrId sigma_unit(const ClovenFibration& p, const DisplayClass& F, const SigmaFibration& s, ArrId u,
                 ObjId sigma_obj);

}  // namespace fibrak
