#pragma once

#include <optional>
#include <unordered_map>

#include "fibrak/budget.hpp"
#include "fibrak/functor.hpp"
#include "fibrak/kernel.hpp"

namespace fibrak {

/// A full subcategory presented as its own FinCat together with the
/// embedding into the ambient category.
struct Subcat {
    CatPtr cat;
    CatPtr ambient;
    std::vector<ObjId> obj_in_ambient;  // indexed by sub object id
    std::vector<ArrId> arr_in_ambient;
    std::unordered_map<ObjId, ObjId> obj_to_sub;
    std::unordered_map<ArrId, ArrId> arr_to_sub;
};

/// A functor equipped with a cleavage: for every base arrow u and total
/// object Y over cod(u), a chosen cartesian arrow into Y over u.
///
/// The cleavage follows the identity-lift convention: the chosen lift of an
/// identity is the identity, so chosen reindexing along identities is the
/// literal identity on the fibre.
class ClovenFibration {
   public:
    /// Empty shell; assign from make() before use.
    ClovenFibration() = default;

    /// Derives the order-least cleavage by search.  Missing lifts are
    /// recorded (not fatal) so verify_fibration can report them.
    static ClovenFibration make(FinFunctor proj);

    /// Uses an explicitly supplied cleavage: entries keyed (base arrow u,
    /// total object Y over cod u).  Unsupplied entries are searched.
    static ClovenFibration make(FinFunctor proj, const std::unordered_map<std::int64_t, ArrId>& cleavage);

    static std::int64_t cleavage_key(ArrId u, ObjId y) {
        return (static_cast<std::int64_t>(u) << 32) | static_cast<std::uint32_t>(y);
    }

    const FinCat& total() const { return *proj_.src; }
    const FinCat& base() const { return *proj_.tgt; }
    CatPtr total_ptr() const { return proj_.src; }
    CatPtr base_ptr() const { return proj_.tgt; }
    const FinFunctor& proj() const { return proj_; }

    ObjId proj_obj(ObjId x) const { return proj_.obj_map[x]; }
    ArrId proj_arr(ArrId f) const { return proj_.arr_map[f]; }
    bool is_vertical(ArrId f) const { return base().is_identity(proj_arr(f)); }

    /// The chosen cartesian lift of u into y.  Throws NotAFibration if the
    /// projection admits none.
    ArrId lift(ArrId u, ObjId y) const;
    std::optional<ArrId> try_lift(ArrId u, ObjId y) const;

    /// Chosen reindexing of the object y along u: dom(lift(u, y)).
    ObjId reindex_obj(ArrId u, ObjId y) const { return total().dom(lift(u, y)); }

    /// Chosen reindexing of a vertical arrow v : x -> y over cod(u): the
    /// unique vertical filler u*x -> u*y against the cleavage.
    ArrId reindex_arr(ArrId u, ArrId v) const;

    /// Total objects over a base object, in id order.
    const std::vector<ObjId>& objects_over(ObjId i) const { return over_[i]; }

    /// Vertical arrows x -> y (both over the same base object).
    std::vector<ArrId> hom_vert(ObjId x, ObjId y) const;

    const std::vector<std::pair<ArrId, ObjId>>& missing_lifts() const { return missing_; }
    bool is_cleavage_entry(ArrId f) const { return chosen_[f]; }

   private:
    FinFunctor proj_;
    std::vector<ArrId> cleav_;  // (u, y) -> lift, kNoArr if N/A or missing
    std::vector<char> chosen_;  // per total arrow: is it a cleavage entry
    std::vector<std::vector<ObjId>> over_;
    std::vector<std::pair<ArrId, ObjId>> missing_;
};

/// Exhaustively decides whether f is cartesian over its projection.
bool is_cartesian(const ClovenFibration& p, ArrId f, Budget& budget);
bool is_cartesian_serial(const ClovenFibration& p, ArrId f, Budget& budget);

/// Checks that the projection is a functor, every (u, y) has a cartesian
/// lift, and every cleavage entry really is cartesian.
LawReport verify_fibration(const ClovenFibration& p);

/// The fibre over a base object, as a full subcategory of the total
/// category on the objects over it and the vertical arrows between them.
Subcat fibre(const ClovenFibration& p, ObjId i);

/// Chosen reindexing functor fibre(cod u) -> fibre(dom u).
FinFunctor reindex(const ClovenFibration& p, ArrId u, const Subcat& fib_cod, const Subcat& fib_dom);

/// A morphism of fibrations: total functor over a base functor.
struct FibredFunctor {
    FinFunctor total_map;
    FinFunctor base_map;
};

/// Commutation with projections and preservation of cartesian arrows.
LawReport check_fibred_functor(const ClovenFibration& p, const ClovenFibration& q, const FibredFunctor& g);

/// Fibred equivalence over the identity base functor: fibrewise essentially
/// surjective and fully faithful.
LawReport check_fibred_equivalence(const ClovenFibration& p, const ClovenFibration& q, const FibredFunctor& g);

/// A full subfibration: the full subcategory of the total category on a
/// subset of objects, with the restricted projection and the parent
/// cleavage.  The subset must be closed under chosen reindexing.
struct FullSub {
    ClovenFibration fib;
    Subcat total_sub;  // embedding into the parent total category
};

/// Builds the full subfibration on the given total objects.  Throws
/// PreconditionFailed if the subset is not closed under chosen reindexing.
FullSub full_subfibration(const ClovenFibration& p, const std::vector<ObjId>& objects);

/// The fibrewise opposite: same objects, arrows x => y are equivalence
/// classes of spans (c : d -> y cartesian, v : d -> x vertical).
struct OppositeFibration {
    ClovenFibration fib;
    // Back-references into the original fibration, per opposite arrow:
    // the least representative span.
    std::vector<std::pair<ArrId, ArrId>> rep;  // (cartesian, vertical)
    std::unordered_map<std::int64_t, ArrId> class_of;  // span key -> arrow

    static std::int64_t span_key(ArrId c, ArrId v) {
        return (static_cast<std::int64_t>(c) << 32) | static_cast<std::uint32_t>(v);
    }
    /// Arrow id of the class containing span (c, v); c cartesian, v vertical,
    /// common domain.
    ArrId arrow_of(ArrId c, ArrId v) const { return class_of.at(span_key(c, v)); }
};

OppositeFibration fibrewise_opposite(const ClovenFibration& p, Budget& budget);

/// The canonical comparison p -> op(op(p)); always an isomorphism of
/// fibrations, returned so callers can verify that on the nose.
FibredFunctor opposite_involution(const ClovenFibration& p, const OppositeFibration& op1, const OppositeFibration& op2);

}  // namespace fibrak
