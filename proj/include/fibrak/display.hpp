#pragma once

#include <functional>
#include <map>

#include "fibrak/kernel.hpp"

namespace fibrak {

/// A distinguished class of base arrows closed under pullback (the closure
/// is a checkable property, not an axiom), with memoized chosen pullbacks.
class DisplayClass {
   public:
    DisplayClass(CatPtr base, std::vector<char> member)
        : base_(std::move(base)), member_(std::move(member)) {}

    static DisplayClass all_arrows(CatPtr base);
    static DisplayClass identities(CatPtr base);
    static DisplayClass monos(CatPtr base);
    static DisplayClass of_arrows(CatPtr base, const std::vector<ArrId>& members);

    const FinCat& base() const { return *base_; }
    CatPtr base_ptr() const { return base_; }
    bool is_member(ArrId f) const { return member_[f]; }
    std::vector<ArrId> members() const;
    std::vector<ArrId> members_into(ObjId i) const;

    /// Memoized canonical pullback of the cospan (f, g); agrees with
    /// find_pullback.  Throws PreconditionFailed if none exists.
    const PullbackCone& chosen_pullback(ArrId f, ArrId g) const;

    /// As above but nullptr when the pullback does not exist.
    const PullbackCone* try_chosen_pullback(ArrId f, ArrId g) const;

   private:
    CatPtr base_;
    std::vector<char> member_;
    mutable std::map<std::pair<ArrId, ArrId>, std::optional<PullbackCone>> pullbacks_;
};

struct ClosureReport {
    bool pullback_closed = true;
    bool has_units = true;          // all isos are members
    bool composition_closed = true;
    bool well_rooted = true;  // terminal exists and every !_X is a member
    std::vector<std::string> counterexamples;

    bool all() const { return pullback_closed && has_units && composition_closed && well_rooted; }
};

/// Checks the four closure properties; each failure records a counterexample.
/// Pullback closure asks that for every member f and every g into cod f the
/// canonical pullback exists and its leg opposite g (the pullback of f along
/// g) is again a member.
ClosureReport verify_display_class(const DisplayClass& f);

/// The data of a dependent product of f along g inside the base category:
/// h : E -> J together with the evaluation e off the chosen pullback of h
/// along g, universal among such in the reduced (unique-k) form.
struct DepProdDiagram {
    ArrId f;  // K ->> I
    ArrId g;  // I ->> J
    ArrId h;  // E ->> J, the product object
    PullbackCone square;  // chosen pullback of h along g, apex Z
    ArrId e;  // Z -> K, evaluation
};

/// Order-least dependent product of f along g, or absent.
/// Pre: f, g members with cod f = dom g... cod f = dom g is the composable
/// shape f : K ->> I, g : I ->> J.
std::optional<DepProdDiagram> dependent_product(const DisplayClass& F, ArrId f, ArrId g, Budget& budget);

struct DepProdReport {
    bool ok = true;
    std::vector<std::pair<ArrId, ArrId>> failing_pairs;
};

/// True iff every composable member pair has a dependent product.
DepProdReport has_dependent_products(const DisplayClass& F, Budget& budget);

}  // namespace fibrak
