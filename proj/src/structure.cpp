#include "fibrak/structure.hpp"

#include "fibrak/parallel.hpp"

namespace fibrak {

namespace {

// Is cand the universal (gamma, eta) for alpha along u (left case)?
// eta : alpha -> u* gamma; every h : alpha -> u* beta must factor as
// u*(t) . eta for exactly one vertical t : gamma -> beta.
bool left_universal(const ClovenFibration& p, ArrId u, ObjId alpha, ObjId gamma, ArrId eta, Budget& budget) {
    const FinCat& t = p.total();
    const ObjId j = p.base().cod(u);
    for (ObjId beta : p.objects_over(j)) {
        const ObjId ub = p.reindex_obj(u, beta);
        for (ArrId h : p.hom_vert(alpha, ub)) {
            budget.charge();
            int n = 0;
            for (ArrId tt : p.hom_vert(gamma, beta)) {
                budget.charge();
                if (t.compose(p.reindex_arr(u, tt), eta) == h && ++n > 1) break;
            }
            if (n != 1) return false;
        }
    }
    return true;
}

bool right_universal(const ClovenFibration& p, ArrId u, ObjId alpha, ObjId delta, ArrId eps, Budget& budget) {
    const FinCat& t = p.total();
    const ObjId j = p.base().cod(u);
    for (ObjId beta : p.objects_over(j)) {
        const ObjId ub = p.reindex_obj(u, beta);
        for (ArrId h : p.hom_vert(ub, alpha)) {
            budget.charge();
            int n = 0;
            for (ArrId tt : p.hom_vert(beta, delta)) {
                budget.charge();
                if (t.compose(eps, p.reindex_arr(u, tt)) == h && ++n > 1) break;
            }
            if (n != 1) return false;
        }
    }
    return true;
}

}  // namespace

std::optional<std::pair<ObjId, ArrId>> find_adjoint_at(const ClovenFibration& p, ArrId u, ObjId alpha,
                                                       AdjointData::Dir dir, Budget& budget) {
    if (p.proj_obj(alpha) != p.base().dom(u))
        throw PreconditionFailed("adjoint search: object is not over dom of the base arrow");
    if (p.base().is_identity(u)) return std::make_pair(alpha, p.total().identity(alpha));
    const ObjId j = p.base().cod(u);
    for (ObjId gamma : p.objects_over(j)) {
        const ObjId ug = p.reindex_obj(u, gamma);
        if (dir == AdjointData::kLeft) {
            for (ArrId eta : p.hom_vert(alpha, ug)) {
                budget.charge();
                if (left_universal(p, u, alpha, gamma, eta, budget)) return std::make_pair(gamma, eta);
            }
        } else {
            for (ArrId eps : p.hom_vert(ug, alpha)) {
                budget.charge();
                if (right_universal(p, u, alpha, gamma, eps, budget)) return std::make_pair(gamma, eps);
            }
        }
    }
    return std::nullopt;
}

std::optional<AdjointData> adjoint_along(const ClovenFibration& p, ArrId u, AdjointData::Dir dir, Budget& budget) {
    AdjointData a;
    a.dir = dir;
    a.u = u;
    const FinCat& t = p.total();
    const ObjId l = p.base().dom(u), j = p.base().cod(u);

    for (ObjId alpha : p.objects_over(l)) {
        auto rep = find_adjoint_at(p, u, alpha, dir, budget);
        if (!rep) return std::nullopt;
        a.obj_map[alpha] = rep->first;
        a.structural[alpha] = rep->second;
    }

    // transport of vertical arrows via the universal property
    auto transport_arrow = [&](ArrId x) -> ArrId {
        const ObjId src = t.dom(x), dst = t.cod(x);
        const ObjId gs = a.obj_map.at(src), gd = a.obj_map.at(dst);
        for (ArrId tt : p.hom_vert(gs, gd)) {
            budget.charge();
            const ArrId ut = p.reindex_arr(u, tt);
            if (dir == AdjointData::kLeft) {
                if (t.compose(ut, a.structural.at(src)) == t.compose(a.structural.at(dst), x)) return tt;
            } else {
                if (t.compose(a.structural.at(dst), ut) == t.compose(x, a.structural.at(src))) return tt;
            }
        }
        throw InternalDisagreement("universal property granted no transport for a vertical arrow");
    };
    for (ObjId alpha : p.objects_over(l))
        for (ObjId alpha2 : p.objects_over(l))
            for (ArrId x : p.hom_vert(alpha, alpha2)) a.arr_map[x] = transport_arrow(x);

    // the other structural transformation, by factoring the identity
    for (ObjId beta : p.objects_over(j)) {
        const ObjId ub = p.reindex_obj(u, beta);
        ArrId found = kNoArr;
        if (dir == AdjointData::kLeft) {
            // counit: transport(u* beta) -> beta with u*(counit) . eta = id
            for (ArrId tt : p.hom_vert(a.obj_map.at(ub), beta)) {
                budget.charge();
                if (t.compose(p.reindex_arr(u, tt), a.structural.at(ub)) == t.identity(ub)) {
                    found = tt;
                    break;
                }
            }
        } else {
            // unit: beta -> transport(u* beta) with counit . u*(unit) = id
            for (ArrId tt : p.hom_vert(beta, a.obj_map.at(ub))) {
                budget.charge();
                if (t.compose(a.structural.at(ub), p.reindex_arr(u, tt)) == t.identity(ub)) {
                    found = tt;
                    break;
                }
            }
        }
        if (found == kNoArr) throw InternalDisagreement("identity failed to factor through a universal arrow");
        a.other[beta] = found;
    }

    // laws: functoriality, naturality of both transformations, triangles
    for (ObjId alpha : p.objects_over(l))
        if (a.arr_map.at(t.identity(alpha)) != t.identity(a.obj_map.at(alpha)))
            a.laws.add("transport does not preserve the identity at '" + t.object_name(alpha) + "'");
    for (const auto& [x, tx] : a.arr_map)
        for (const auto& [y, ty] : a.arr_map)
            if (t.composable(y, x) && a.arr_map.at(t.compose(y, x)) != t.compose(ty, tx))
                a.laws.add("transport breaks composition at '" + t.arrow_name(y) + " . " + t.arrow_name(x) + "'");
    for (const auto& [x, tx] : a.arr_map) {
        const ObjId src = t.dom(x), dst = t.cod(x);
        const bool natural =
            dir == AdjointData::kLeft
                ? t.compose(p.reindex_arr(u, tx), a.structural.at(src)) == t.compose(a.structural.at(dst), x)
                : t.compose(a.structural.at(dst), p.reindex_arr(u, tx)) == t.compose(x, a.structural.at(src));
        if (!natural) a.laws.add("structural transformation not natural at '" + t.arrow_name(x) + "'");
    }
    for (ObjId alpha : p.objects_over(l)) {
        if (dir == AdjointData::kLeft) {
            // counit_{transport alpha} . transport(eta_alpha) = id
            const ArrId lhs = t.compose(a.other.at(a.obj_map.at(alpha)),
                                        a.arr_map.count(a.structural.at(alpha))
                                            ? a.arr_map.at(a.structural.at(alpha))
                                            : transport_arrow(a.structural.at(alpha)));
            if (lhs != t.identity(a.obj_map.at(alpha)))
                a.laws.add("triangle identity fails at '" + t.object_name(alpha) + "'");
        } else {
            // transport(eps_alpha) . unit_{transport alpha} = id
            const ArrId lhs = t.compose(a.arr_map.count(a.structural.at(alpha))
                                            ? a.arr_map.at(a.structural.at(alpha))
                                            : transport_arrow(a.structural.at(alpha)),
                                        a.other.at(a.obj_map.at(alpha)));
            if (lhs != t.identity(a.obj_map.at(alpha)))
                a.laws.add("triangle identity fails at '" + t.object_name(alpha) + "'");
        }
    }
    return a;
}

ArrId square_iso(const ClovenFibration& p, ArrId g, ArrId v, ArrId u, ArrId f, ObjId x) {
    const FinCat& t = p.total();
    const ArrId lv = p.lift(v, x);
    const ArrId m1 = t.compose(lv, p.lift(g, t.dom(lv)));
    const ArrId lf = p.lift(f, x);
    const ArrId m2 = t.compose(lf, p.lift(u, t.dom(lf)));
    for (ArrId c : p.hom_vert(t.dom(m1), t.dom(m2)))
        if (t.compose(m2, c) == m1) return c;
    throw InternalDisagreement("cartesian composite admits no vertical mediator");
}

std::vector<BCSquare> beck_chevalley(const ClovenFibration& p, const DisplayClass& F, ArrId v,
                                     AdjointData::Dir dir, Budget& budget) {
    if (!F.is_member(v)) throw PreconditionFailed("beck_chevalley expects a member arrow");
    const FinCat& t = p.total();
    const FinCat& b = p.base();
    const ObjId j = b.cod(v), l = b.dom(v);

    auto adj_v = adjoint_along(p, v, dir, budget);
    if (!adj_v) throw PreconditionFailed("no fibrewise adjoint along '" + b.arrow_name(v) + "'");

    std::vector<BCSquare> out;
    for (ArrId f : b.in(j)) {
        BCSquare sq;
        sq.v = v;
        sq.f = f;
        const PullbackCone* pb = F.try_chosen_pullback(v, f);
        if (!pb) {
            sq.verdict = false;
            sq.failure = "no base pullback of '" + b.arrow_name(v) + "' along '" + b.arrow_name(f) + "'";
            out.push_back(std::move(sq));
            continue;
        }
        sq.square = *pb;
        const ArrId g = sq.square.p1;  // K -> L
        const ArrId u = sq.square.p2;  // K -> I, a member by closure
        auto adj_u = adjoint_along(p, u, dir, budget);
        if (!adj_u) {
            sq.verdict = false;
            sq.failure = "no adjoint along the pulled-back member '" + b.arrow_name(u) + "'";
            out.push_back(std::move(sq));
            continue;
        }
        for (ObjId beta : p.objects_over(l)) {
            const ObjId vb = adj_v->obj_map.at(beta);  // transport along v
            const ArrId c = square_iso(p, g, v, u, f, vb);
            const ObjId gb = p.reindex_obj(g, beta);
            ArrId mate = kNoArr;
            if (dir == AdjointData::kLeft) {
                // unique t : transport_u(g* beta) -> f* (transport_v beta)
                // with u*(t) . eta^u = c . g*(eta^v_beta)
                const ArrId rhs = t.compose(c, p.reindex_arr(g, adj_v->structural.at(beta)));
                const ObjId tgt = p.reindex_obj(f, vb);
                for (ArrId cand : p.hom_vert(adj_u->obj_map.at(gb), tgt)) {
                    budget.charge();
                    if (t.compose(p.reindex_arr(u, cand), adj_u->structural.at(gb)) == rhs) {
                        mate = cand;
                        break;
                    }
                }
            } else {
                // unique t : f* (transport_v beta) -> transport_u(g* beta)
                // with eps^u . u*(t) = g*(eps^v_beta) . c^{-1}
                const ArrId cinv = *t.inverse(c);
                const ArrId rhs = t.compose(p.reindex_arr(g, adj_v->structural.at(beta)), cinv);
                const ObjId src = p.reindex_obj(f, vb);
                for (ArrId cand : p.hom_vert(src, adj_u->obj_map.at(gb))) {
                    budget.charge();
                    if (t.compose(adj_u->structural.at(gb), p.reindex_arr(u, cand)) == rhs) {
                        mate = cand;
                        break;
                    }
                }
            }
            if (mate == kNoArr) {
                sq.verdict = false;
                sq.failure = "mate does not exist at '" + t.object_name(beta) + "'";
                break;
            }
            sq.mate[beta] = mate;
            if (!t.is_iso(mate)) {
                sq.verdict = false;
                sq.failure = "mate at '" + t.object_name(beta) + "' is not an isomorphism";
                break;
            }
        }
        out.push_back(std::move(sq));
    }
    return out;
}

StructureReport verify_fibred_structure(const ClovenFibration& p, const DisplayClass& F,
                                        AdjointData::Dir dir, Budget& budget) {
    StructureReport r;
    for (ArrId v : F.members()) {
        auto adj = adjoint_along(p, v, dir, budget);
        if (!adj) {
            r.fail("no fibrewise adjoint along '" + p.base().arrow_name(v) + "'");
            continue;
        }
        if (!adj->laws.ok())
            for (const auto& msg : adj->laws.violations) r.fail("adjoint along '" + p.base().arrow_name(v) + "': " + msg);
        for (const BCSquare& sq : beck_chevalley(p, F, v, dir, budget))
            if (!sq.verdict)
                r.fail("Beck-Chevalley fails for ('" + p.base().arrow_name(v) + "', '" + p.base().arrow_name(sq.f) + "'): " + sq.failure);
    }
    return r;
}

}  // namespace fibrak
