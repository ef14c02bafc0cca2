#include "fibrak/completion.hpp"

#include <unordered_map>

namespace fibrak {

namespace {

std::string paren(const std::string& a, const std::string& b) { return "(" + a + "," + b + ")"; }

/// The pullback cone of (member, u) that reindexing in the completion
/// actually follows.  Along an identity the cleavage convention forces the
/// chosen lift to be the identity, so the cone must be the trivial one; the
/// order-least pullback can differ when the base has non-identity
/// isomorphisms.
PullbackCone reindex_cone(const DisplayClass& F, const FinCat& b, ArrId member, ArrId u) {
    if (b.is_identity(u))
        return PullbackCone{member, u, b.dom(member), b.identity(b.dom(member)), member};
    return F.chosen_pullback(member, u);
}

}  // namespace

SigmaFibration sigma_completion(const ClovenFibration& p, const DisplayClass& F, Budget& budget) {
    const FinCat& b = p.base();
    const FinCat& t = p.total();
    ClosureReport closure = verify_display_class(F);
    if (!closure.composition_closed || !closure.pullback_closed)
        throw PreconditionFailed("coproduct completion needs a pullback- and composition-closed class");

    SigmaFibration s;
    FinCatBuilder bld;
    std::vector<std::string> names;
    for (ArrId g : F.members())
        for (ObjId alpha : p.objects_over(b.dom(g))) {
            names.push_back(paren(b.arrow_name(g), t.object_name(alpha)));
            const ObjId id = bld.object(names.back());
            s.objects.push_back({b.cod(g), g, alpha});
            s.obj_id[{g, alpha}] = id;
        }

    const int n = static_cast<int>(s.objects.size());
    for (ObjId src = 0; src < n; ++src)
        for (ObjId dst = 0; dst < n; ++dst) {
            const SigmaObject& a = s.objects[src];
            const SigmaObject& c = s.objects[dst];
            for (ArrId f0 : b.hom(a.base, c.base))
                for (ArrId phi : t.hom(a.alpha, c.alpha)) {
                    budget.charge();
                    const ArrId f1 = p.proj_arr(phi);
                    if (b.compose(c.g, f1) != b.compose(f0, a.g)) continue;
                    const bool ident = src == dst && b.is_identity(f0) && t.is_identity(phi);
                    const std::string name =
                        ident ? "id_" + names[src]
                              : "[" + b.arrow_name(f0) + ";" + t.arrow_name(phi) + "]" +
                                    names[src] + ">" + names[dst];
                    const ArrId id = bld.arrow(name, src, dst);
                    s.arrows.push_back({f0, f1, phi});
                    s.arr_id[{src, dst, f0, phi}] = id;
                }
        }

    // composition is componentwise; every paste of valid squares is valid
    const int m = static_cast<int>(s.arrows.size());
    for (ArrId x = 0; x < m; ++x)
        for (ArrId y = 0; y < m; ++y) {
            if (bld.dom(y) != bld.cod(x)) continue;
            budget.charge();
            const SigmaArrow& ax = s.arrows[x];
            const SigmaArrow& ay = s.arrows[y];
            bld.set_compose(y, x, s.arr_id.at({bld.dom(x), bld.cod(y), b.compose(ay.f0, ax.f0),
                                               t.compose(ay.phi, ax.phi)}));
        }

    CatPtr total = bld.build();

    FinFunctor proj;
    proj.src = total;
    proj.tgt = p.base_ptr();
    for (ObjId x = 0; x < n; ++x) proj.obj_map.push_back(s.objects[x].base);
    for (ArrId f = 0; f < total->num_arrows(); ++f) proj.arr_map.push_back(s.arrows[f].f0);

    // cleavage: the lift of u into (g, alpha) sits over the chosen pullback
    // of g along u, carrying the cartesian lift of alpha along its top leg
    std::unordered_map<std::int64_t, ArrId> cleavage;
    for (ArrId u = 0; u < b.num_arrows(); ++u)
        for (ObjId y = 0; y < n; ++y) {
            if (s.objects[y].base != b.cod(u)) continue;
            budget.charge();
            const SigmaObject& o = s.objects[y];
            const PullbackCone pb = reindex_cone(F, b, o.g, u);
            const ArrId ell = p.lift(pb.p1, o.alpha);
            const ObjId dom = s.obj_id.at({pb.p2, t.dom(ell)});
            cleavage[ClovenFibration::cleavage_key(u, y)] = s.arr_id.at({dom, y, u, ell});
        }

    s.fib = ClovenFibration::make(std::move(proj), cleavage);
    return s;
}

PiFibration pi_completion(const ClovenFibration& p, const DisplayClass& F, Budget& budget) {
    const FinCat& b = p.base();
    const FinCat& t = p.total();
    PiFibration pi;
    pi.op_in = fibrewise_opposite(p, budget);
    pi.sigma = sigma_completion(pi.op_in.fib, F, budget);
    pi.op_out = fibrewise_opposite(pi.sigma.fib, budget);
    const ClovenFibration& derived = pi.op_out.fib;
    const FinCat& dt = derived.total();

    // direct presentation, translated arrow-by-arrow onto the derived one
    FinCatBuilder bld;
    const int n = static_cast<int>(pi.sigma.objects.size());
    for (ObjId x = 0; x < n; ++x) bld.object(dt.object_name(x));

    std::vector<ArrId> translate;                      // direct arrow -> derived arrow
    std::unordered_map<ArrId, ArrId> from_derived;     // inverse of translate
    for (ObjId src = 0; src < n; ++src)
        for (ObjId dst = 0; dst < n; ++dst) {
            const SigmaObject& a = pi.sigma.objects[src];  // (g : I ->> J, alpha)
            const SigmaObject& c = pi.sigma.objects[dst];  // (h : Y ->> K, beta)
            for (ArrId f0 : b.hom(a.base, c.base)) {
                const PullbackCone pb = reindex_cone(F, b, c.g, f0);  // p1: W -> Y, p2: W ->> J
                const ObjId w = pb.apex;
                for (ArrId f1 : b.hom(w, b.dom(a.g))) {
                    if (b.compose(a.g, f1) != pb.p2) continue;
                    const ObjId fa = p.reindex_obj(f1, a.alpha);
                    const ObjId pbb = p.reindex_obj(pb.p1, c.alpha);
                    for (ArrId phi : p.hom_vert(fa, pbb)) {
                        budget.charge();
                        const bool ident = src == dst && b.is_identity(f0) && b.is_identity(f1) &&
                                           t.is_identity(phi);
                        const std::string name =
                            ident ? "id_" + dt.object_name(src)
                                  : "[" + b.arrow_name(f0) + ";" + b.arrow_name(f1) + ";" +
                                        t.arrow_name(phi) + "]" + dt.object_name(src) + ">" +
                                        dt.object_name(dst);
                        const ArrId id = bld.arrow(name, src, dst);
                        pi.direct_arrows.push_back({f0, f1, phi});

                        // translation: the opposite-span made of the chosen
                        // cartesian lift of f0 into dst and the vertical leg
                        // carrying phi read as an opposite arrow over f1
                        const ArrId cart = pi.sigma.fib.lift(f0, dst);
                        const ObjId d = pi.sigma.fib.total().dom(cart);
                        const ArrId psi = pi.op_in.arrow_of(p.lift(f1, a.alpha), phi);
                        const ArrId vert =
                            pi.sigma.arrow_of(d, src, b.identity(a.base), psi);
                        const ArrId der = pi.op_out.arrow_of(cart, vert);
                        translate.push_back(der);
                        if (!from_derived.emplace(der, id).second)
                            throw InternalDisagreement("product-completion translation is not injective");
                    }
                }
            }
        }
    if (static_cast<int>(translate.size()) != dt.num_arrows())
        throw InternalDisagreement("product-completion translation is not surjective");

    const int m = static_cast<int>(translate.size());
    for (ArrId x = 0; x < m; ++x)
        for (ArrId y = 0; y < m; ++y) {
            if (bld.dom(y) != bld.cod(x)) continue;
            budget.charge();
            bld.set_compose(y, x, from_derived.at(dt.compose(translate[y], translate[x])));
        }
    CatPtr total = bld.build();

    FinFunctor proj;
    proj.src = total;
    proj.tgt = p.base_ptr();
    for (ObjId x = 0; x < n; ++x) proj.obj_map.push_back(pi.sigma.objects[x].base);
    for (ArrId f = 0; f < m; ++f) proj.arr_map.push_back(pi.direct_arrows[f].f0);

    std::unordered_map<std::int64_t, ArrId> cleavage;
    for (ArrId u = 0; u < b.num_arrows(); ++u)
        for (ObjId y = 0; y < n; ++y) {
            if (pi.sigma.objects[y].base != b.cod(u)) continue;
            cleavage[ClovenFibration::cleavage_key(u, y)] = from_derived.at(derived.lift(u, y));
        }
    pi.direct = ClovenFibration::make(std::move(proj), cleavage);

    pi.iso.total_map = FinFunctor{total, derived.total_ptr(), {}, translate};
    for (ObjId x = 0; x < n; ++x) pi.iso.total_map.obj_map.push_back(x);
    pi.iso.base_map = identity_functor(p.base_ptr());
    pi.check = check_fibred_functor(pi.direct, derived, pi.iso);
    return pi;
}

DialFibration dialectica(const ClovenFibration& p, const DisplayClass& F, Budget& budget) {
    DialFibration d;
    d.pi = pi_completion(p, F, budget);
    d.sigma = sigma_completion(d.pi.fib(), F, budget);
    return d;
}

ArrId sigma_unit(const ClovenFibration& p, const DisplayClass& F, const SigmaFibration& s, ArrId u,
                 ObjId sigma_obj) {
    const FinCat& b = p.base();
    const FinCat& t = p.total();
    const SigmaObject& o = s.objects[sigma_obj];
    if (!F.is_member(u) || b.dom(u) != o.base)
        throw PreconditionFailed("unit needs a member out of the object's base");
    const ArrId ug = b.compose(u, o.g);
    const ObjId cop = s.object_of(ug, o.alpha);
    const ArrId ell = s.fib.lift(u, cop);
    const ObjId target = s.fib.total().dom(ell);

    const PullbackCone pb = reindex_cone(F, b, ug, u);  // p1: W -> X, p2: W -> I
    const ObjId x = b.dom(o.g);
    ArrId med = kNoArr;
    for (ArrId m : b.hom(x, pb.apex))
        if (b.compose(pb.p1, m) == b.identity(x) && b.compose(pb.p2, m) == o.g) {
            med = m;
            break;
        }
    if (med == kNoArr) throw InternalDisagreement("no mediator into the chosen pullback");

    const ArrId top = p.lift(pb.p1, o.alpha);
    ArrId phi = kNoArr;
    for (ArrId c : t.hom(o.alpha, t.dom(top)))
        if (p.proj_arr(c) == med && t.compose(top, c) == t.identity(o.alpha)) {
            phi = c;
            break;
        }
    if (phi == kNoArr) throw InternalDisagreement("identity fails to factor through the cartesian lift");
    return s.arr_id.at({sigma_obj, target, b.identity(o.base), phi});
}

}  // namespace fibrak
