#pragma once

#include "fibrak/display.hpp"
#include "fibrak/fibration.hpp"

namespace fibrak {

/// A fibrewise left or right adjoint to reindexing along a base arrow u,
/// found object-by-object via universal-arrow search and stored on
/// total-category ids.
///
/// Left (dir = kLeft): transport is the coproduct functor along u : L -> J,
/// structural[alpha] is the unit component alpha ⇝ u*(transport alpha).
/// Right (dir = kRight): transport is the product functor, structural[alpha]
/// is the counit component u*(transport alpha) ⇝ alpha.
struct AdjointData {
    enum Dir { kLeft, kRight };
    Dir dir;
    ArrId u;  // base arrow L -> J
    std::unordered_map<ObjId, ObjId> obj_map;      // fibre(L) object -> fibre(J) object
    std::unordered_map<ArrId, ArrId> arr_map;      // vertical over L -> vertical over J
    std::unordered_map<ObjId, ArrId> structural;   // unit (left) / counit (right) at each source object
    std::unordered_map<ObjId, ArrId> other;        // counit (left) / unit (right) at each fibre(J) object
    LawReport laws;  // functoriality, naturality, triangle identities
};

/// Universal arrow at a single object: the transported object and the
/// structural (unit/counit) component, or absent if no representation exists.
std::optional<std::pair<ObjId, ArrId>> find_adjoint_at(const ClovenFibration& p, ArrId u, ObjId alpha,
                                                       AdjointData::Dir dir, Budget& budget);

/// Full fibrewise adjoint along u; absent if any object lacks a
/// representation.  When present, `laws` is populated (and empty on any
/// correctly represented instance).
std::optional<AdjointData> adjoint_along(const ClovenFibration& p, ArrId u, AdjointData::Dir dir, Budget& budget);

/// One Beck–Chevalley square over the chosen pullback of v along f,
/// with the canonical mate components and the per-object iso verdict.
struct BCSquare {
    ArrId v;  // member L -> J
    ArrId f;  // arbitrary arrow I -> J
    PullbackCone square;  // chosen pullback of v along f: p1 = g : K -> L, p2 = u : K -> I
    std::unordered_map<ObjId, ArrId> mate;  // per beta over L, the mate component (vertical over I)
    bool verdict = true;  // all mate components are two-sided vertical isos
    std::string failure;
};

/// All Beck–Chevalley squares for a member v in the given direction.
/// dir = kLeft checks the mates of coproducts along v, kRight of products.
std::vector<BCSquare> beck_chevalley(const ClovenFibration& p, const DisplayClass& F, ArrId v,
                                     AdjointData::Dir dir, Budget& budget);

struct StructureReport {
    bool ok = true;
    std::vector<std::string> failures;
    void fail(std::string why) {
        ok = false;
        failures.push_back(std::move(why));
    }
};

/// Adjoints along every member plus all Beck–Chevalley squares.
StructureReport verify_fibred_structure(const ClovenFibration& p, const DisplayClass& F,
                                        AdjointData::Dir dir, Budget& budget);

/// The canonical vertical iso g*v*X -> u*f*X over the commuting square
/// v.g = f.u, mediated by the composite cartesian lifts.
ArrId square_iso(const ClovenFibration& p, ArrId g, ArrId v, ArrId u, ArrId f, ObjId x);

}  // namespace fibrak
