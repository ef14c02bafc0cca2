#include "fibrak/display.hpp"

namespace fibrak {

DisplayClass DisplayClass::all_arrows(CatPtr base) {
    std::vector<char> m(base->num_arrows(), 1);
    return DisplayClass(std::move(base), std::move(m));
}

DisplayClass DisplayClass::identities(CatPtr base) {
    std::vector<char> m(base->num_arrows(), 0);
    for (ArrId f = 0; f < base->num_arrows(); ++f) m[f] = base->is_identity(f);
    return DisplayClass(std::move(base), std::move(m));
}

DisplayClass DisplayClass::monos(CatPtr base) {
    std::vector<char> m(base->num_arrows(), 0);
    for (ArrId f = 0; f < base->num_arrows(); ++f) m[f] = base->is_mono(f);
    return DisplayClass(std::move(base), std::move(m));
}

DisplayClass DisplayClass::of_arrows(CatPtr base, const std::vector<ArrId>& members) {
    std::vector<char> m(base->num_arrows(), 0);
    for (ArrId f : members) m[f] = 1;
    return DisplayClass(std::move(base), std::move(m));
}

std::vector<ArrId> DisplayClass::members() const {
    std::vector<ArrId> out;
    for (ArrId f = 0; f < base().num_arrows(); ++f)
        if (member_[f]) out.push_back(f);
    return out;
}

std::vector<ArrId> DisplayClass::members_into(ObjId i) const {
    std::vector<ArrId> out;
    for (ArrId f : base().in(i))
        if (member_[f]) out.push_back(f);
    return out;
}

const PullbackCone* DisplayClass::try_chosen_pullback(ArrId f, ArrId g) const {
    auto [it, inserted] = pullbacks_.try_emplace({f, g});
    if (inserted) {
        Budget budget;
        it->second = find_pullback(base(), f, g, budget);
    }
    return it->second ? &*it->second : nullptr;
}

const PullbackCone& DisplayClass::chosen_pullback(ArrId f, ArrId g) const {
    const PullbackCone* c = try_chosen_pullback(f, g);
    if (!c)
        throw PreconditionFailed("no pullback of '" + base().arrow_name(f) + "' along '" + base().arrow_name(g) + "'");
    return *c;
}

ClosureReport verify_display_class(const DisplayClass& F) {
    const FinCat& b = F.base();
    ClosureReport r;
    for (ArrId f : F.members())
        for (ArrId g : b.in(b.cod(f))) {
            const PullbackCone* cone = F.try_chosen_pullback(f, g);
            // the pullback of f along g is the leg into dom g
            if (!cone || !F.is_member(cone->p2)) {
                r.pullback_closed = false;
                r.counterexamples.push_back("pullback of member '" + b.arrow_name(f) + "' along '" + b.arrow_name(g) + "' " +
                                            (cone ? "has non-member leg '" + b.arrow_name(cone->p2) + "'" : "does not exist"));
            }
        }
    for (ArrId f = 0; f < b.num_arrows(); ++f)
        if (b.is_iso(f) && !F.is_member(f)) {
            r.has_units = false;
            r.counterexamples.push_back("iso '" + b.arrow_name(f) + "' is not a member");
        }
    for (ArrId f : F.members())
        for (ArrId g : F.members())
            if (b.composable(g, f) && !F.is_member(b.compose(g, f))) {
                r.composition_closed = false;
                r.counterexamples.push_back("composite '" + b.arrow_name(g) + " . " + b.arrow_name(f) + "' is not a member");
            }
    auto t = terminal_object(b);
    if (!t) {
        r.well_rooted = false;
        r.counterexamples.push_back("base has no terminal object");
    } else {
        for (ObjId x = 0; x < b.num_objects(); ++x)
            if (!F.is_member(b.hom(x, *t)[0])) {
                r.well_rooted = false;
                r.counterexamples.push_back("terminal projection of '" + b.object_name(x) + "' is not a member");
            }
    }
    return r;
}

std::optional<DepProdDiagram> dependent_product(const DisplayClass& F, ArrId f, ArrId g, Budget& budget) {
    const FinCat& b = F.base();
    if (!F.is_member(f) || !F.is_member(g)) throw PreconditionFailed("dependent product arguments must be members");
    if (b.dom(g) != b.cod(f)) throw PreconditionFailed("dependent product needs cod f = dom g");
    const ObjId k_obj = b.dom(f), j = b.cod(g);

    // all competing data (h', Z', e') over which universality is checked
    struct Competitor {
        ArrId h;
        const PullbackCone* square;  // chosen pullback of h along g
        ArrId e;
    };
    std::vector<Competitor> comps;
    for (ArrId h : F.members_into(j)) {
        const PullbackCone* sq = F.try_chosen_pullback(h, g);
        if (!sq) continue;
        for (ArrId e : b.hom(sq->apex, k_obj)) {
            budget.charge();
            if (b.compose(f, e) == sq->p2) comps.push_back({h, sq, e});
        }
    }

    for (const Competitor& cand : comps) {
        bool universal = true;
        for (const Competitor& other : comps) {
            // exactly one k : E' -> E with h.k = h' and e.w_k = e'
            int n = 0;
            for (ArrId k : b.hom(b.dom(other.h), b.dom(cand.h))) {
                budget.charge();
                if (b.compose(cand.h, k) != other.h) continue;
                // induced map between the chosen pullbacks
                ArrId w = kNoArr;
                for (ArrId w0 : b.hom(other.square->apex, cand.square->apex)) {
                    budget.charge();
                    if (b.compose(cand.square->p1, w0) == b.compose(k, other.square->p1) &&
                        b.compose(cand.square->p2, w0) == other.square->p2) {
                        w = w0;
                        break;
                    }
                }
                if (w != kNoArr && b.compose(cand.e, w) == other.e && ++n > 1) break;
            }
            if (n != 1) {
                universal = false;
                break;
            }
        }
        if (universal) return DepProdDiagram{f, g, cand.h, *cand.square, cand.e};
    }
    return std::nullopt;
}

DepProdReport has_dependent_products(const DisplayClass& F, Budget& budget) {
    DepProdReport r;
    const FinCat& b = F.base();
    for (ArrId f : F.members())
        for (ArrId g : F.members())
            if (b.dom(g) == b.cod(f) && !dependent_product(F, f, g, budget)) {
                r.ok = false;
                r.failing_pairs.emplace_back(f, g);
            }
    return r;
}

}  // namespace fibrak
