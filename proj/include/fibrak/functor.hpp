#pragma once

#include "fibrak/fincat.hpp"

namespace fibrak {

/// A functor between finite categories, as explicit object and arrow maps.
struct FinFunctor {
    CatPtr src;
    CatPtr tgt;
    std::vector<ObjId> obj_map;  // indexed by src object id
    std::vector<ArrId> arr_map;  // indexed by src arrow id

    ObjId on_obj(ObjId x) const { return obj_map[x]; }
    ArrId on_arr(ArrId f) const { return arr_map[f]; }
};

FinFunctor identity_functor(CatPtr c);

/// g after f.  Precondition: f.tgt == g.src.
FinFunctor compose(const FinFunctor& g, const FinFunctor& f);

/// Checks endpoint coherence, identity preservation, and composition
/// preservation, listing every violation.
LawReport check_functor(const FinFunctor& f);
LawReport check_functor_serial(const FinFunctor& f);

/// A natural transformation src => tgt between parallel functors.
struct NatTransf {
    const FinFunctor* src;
    const FinFunctor* tgt;
    std::vector<ArrId> comp;  // component at each src-category object

    ArrId at(ObjId x) const { return comp[x]; }
};

/// Checks component endpoints and naturality squares.
LawReport check_nat(const NatTransf& n);

}  // namespace fibrak
