#include "fibrak/logic.hpp"

#include <algorithm>

namespace fibrak {

namespace {

AdjointData::Dir dir_of(Quant which) {
    return which == Quant::kCoprod ? AdjointData::kLeft : AdjointData::kRight;
}

int idx_of(Quant which) { return which == Quant::kCoprod ? 0 : 1; }

/// The functor a coproduct completion applies to a map of input fibrations
/// over the identity base: (g, x) -> (g, k x) and componentwise on arrows.
FinFunctor sigma_map(const SigmaFibration& ssrc, const SigmaFibration& sdst, const FinFunctor& k) {
    const FinCat& st = ssrc.fib.total();
    FinFunctor m{ssrc.fib.total_ptr(), sdst.fib.total_ptr(), {}, {}};
    m.obj_map.resize(st.num_objects());
    m.arr_map.resize(st.num_arrows());
    for (ObjId i = 0; i < st.num_objects(); ++i)
        m.obj_map[i] = sdst.object_of(ssrc.objects[i].g, k.obj_map[ssrc.objects[i].alpha]);
    for (ArrId a = 0; a < st.num_arrows(); ++a) {
        const SigmaArrow& sa = ssrc.arrows[a];
        m.arr_map[a] = sdst.arrow_of(m.obj_map[st.dom(a)], m.obj_map[st.cod(a)], sa.f0, k.arr_map[sa.phi]);
    }
    return m;
}

FinFunctor invert(const FinFunctor& f) {
    FinFunctor inv{f.tgt, f.src, {}, {}};
    inv.obj_map.assign(f.tgt->num_objects(), kNoObj);
    inv.arr_map.assign(f.tgt->num_arrows(), kNoArr);
    for (ObjId x = 0; x < f.src->num_objects(); ++x) inv.obj_map[f.obj_map[x]] = x;
    for (ArrId a = 0; a < f.src->num_arrows(); ++a) inv.arr_map[f.arr_map[a]] = a;
    for (ObjId x : inv.obj_map)
        if (x == kNoObj) throw InternalDisagreement("invert: functor is not bijective on objects");
    for (ArrId a : inv.arr_map)
        if (a == kNoArr) throw InternalDisagreement("invert: functor is not bijective on arrows");
    return inv;
}

}  // namespace

LogicEngine::LogicEngine(const ClovenFibration& p, const DisplayClass& F, Budget& budget)
    : p_(p), F_(F), budget_(budget) {}

const std::optional<std::pair<ObjId, ArrId>>& LogicEngine::adjoint_at(ArrId u, ObjId beta,
                                                                      AdjointData::Dir dir) {
    const auto key = std::make_tuple(u, beta, static_cast<int>(dir));
    auto it = adj_.find(key);
    if (it == adj_.end()) it = adj_.emplace(key, find_adjoint_at(p_, u, beta, dir, budget_)).first;
    return it->second;
}

const StructureReport& LogicEngine::structure(AdjointData::Dir dir) {
    const int i = dir == AdjointData::kLeft ? 0 : 1;
    if (!structure_[i]) structure_[i] = verify_fibred_structure(p_, F_, dir, budget_);
    return *structure_[i];
}

std::vector<ArrId> LogicEngine::sections(ArrId u) const {
    const FinCat& b = p_.base();
    std::vector<ArrId> out;
    for (ArrId s : b.hom(b.cod(u), b.dom(u)))
        if (b.compose(u, s) == b.identity(b.cod(u))) out.push_back(s);
    return out;
}

SplittingReport LogicEngine::splitting_direct(ObjId alpha, Quant which) {
    const FinCat& t = p_.total();
    const FinCat& b = p_.base();
    const ObjId a = p_.proj_obj(alpha);
    SplittingReport rep;
    for (ArrId u : F_.members_into(a)) {
        const ObjId bo = b.dom(u);
        const std::vector<ArrId> secs = sections(u);
        for (ObjId beta : p_.objects_over(bo)) {
            const auto& ad = adjoint_at(u, beta, dir_of(which));
            if (!ad) continue;  // no transport along u at beta: nothing to factor through
            const ObjId gamma = ad->first;
            const ArrId str = ad->second;
            const auto fail = [&](ArrId h, int found) {
                rep.ok = false;
                rep.failure = std::string(found ? "multiple factorizations" : "no factorization") +
                              " of '" + t.arrow_name(h) + "' against ('" + b.arrow_name(u) + "', '" +
                              t.object_name(beta) + "')";
            };
            if (which == Quant::kCoprod) {
                const ArrId iota = t.compose(p_.lift(u, gamma), str);  // beta -> gamma over u
                for (ArrId h : p_.hom_vert(alpha, gamma)) {
                    int found = 0;
                    SplittingWitness w{u, beta, h, kNoArr, kNoArr};
                    for (ArrId s : secs) {
                        const ArrId ls = p_.lift(s, beta);
                        for (ArrId hb : p_.hom_vert(alpha, t.dom(ls))) {
                            budget_.charge();
                            if (t.compose(iota, t.compose(ls, hb)) == h) {
                                ++found;
                                w.section = s;
                                w.hbar = hb;
                            }
                        }
                    }
                    if (found != 1) {
                        fail(h, found);
                        return rep;
                    }
                    rep.witnesses.push_back(w);
                }
            } else {
                const ArrId lu = p_.lift(u, gamma);
                const ObjId ugamma = t.dom(lu);
                for (ArrId h : p_.hom_vert(gamma, alpha)) {
                    int found = 0;
                    SplittingWitness w{u, beta, h, kNoArr, kNoArr};
                    for (ArrId s : secs) {
                        const ArrId m = t.compose(lu, p_.lift(s, ugamma));  // s*u*gamma -> gamma
                        const ArrId ce = p_.reindex_arr(s, str);            // s*(u*gamma) -> s*beta
                        for (ArrId hb : p_.hom_vert(p_.reindex_obj(s, beta), alpha)) {
                            budget_.charge();
                            if (t.compose(h, m) == t.compose(hb, ce)) {
                                ++found;
                                w.section = s;
                                w.hbar = hb;
                            }
                        }
                    }
                    if (found != 1) {
                        fail(h, found);
                        return rep;
                    }
                    rep.witnesses.push_back(w);
                }
            }
        }
    }
    return rep;
}

const SplittingReport& LogicEngine::splitting(ObjId alpha, Quant which) {
    const auto key = std::make_pair(alpha, idx_of(which));
    auto it = split_.find(key);
    if (it != split_.end()) return it->second;
    SplittingReport rep = splitting_direct(alpha, which);
    if (which == Quant::kProd) {
        const bool opok = op_engine().splitting(alpha, Quant::kCoprod).ok;
        if (opok != rep.ok)
            throw InternalDisagreement("product splitting of '" + p_.total().object_name(alpha) +
                                       "' disagrees with the coproduct splitting in the opposite");
    }
    return split_.emplace(key, std::move(rep)).first->second;
}

bool LogicEngine::qfree(ObjId alpha, Quant which) {
    const auto key = std::make_pair(alpha, idx_of(which));
    auto it = qf_.find(key);
    if (it != qf_.end()) return it->second;
    bool ok = true;
    for (ArrId f : p_.base().in(p_.proj_obj(alpha)))
        if (!splitting(p_.reindex_obj(f, alpha), which).ok) {
            ok = false;
            break;
        }
    qf_[key] = ok;
    return ok;
}

const FullSub& LogicEngine::qfree_sub(Quant which) {
    const int i = idx_of(which);
    if (!sub_[i]) {
        std::vector<ObjId> objs;
        for (ObjId x = 0; x < p_.total().num_objects(); ++x)
            if (qfree(x, which)) objs.push_back(x);
        sub_[i] = full_subfibration(p_, objs);
    }
    return *sub_[i];
}

const EnoughReport& LogicEngine::enough(Quant which) {
    const int i = idx_of(which);
    if (enough_[i]) return *enough_[i];
    const FinCat& t = p_.total();
    const FinCat& b = p_.base();
    EnoughReport rep;
    for (ObjId alpha = 0; alpha < t.num_objects(); ++alpha) {
        const ObjId over = p_.proj_obj(alpha);
        if (qfree(alpha, which)) {
            rep.covers[alpha] = QfCover{b.identity(over), alpha, t.identity(alpha)};
            continue;
        }
        bool found = false;
        for (ArrId f : F_.members_into(over)) {
            for (ObjId beta : p_.objects_over(b.dom(f))) {
                if (!qfree(beta, which)) continue;
                const auto& ad = adjoint_at(f, beta, dir_of(which));
                if (!ad) continue;
                for (ArrId c : p_.hom_vert(ad->first, alpha)) {
                    budget_.charge();
                    if (t.inverse(c)) {
                        rep.covers[alpha] = QfCover{f, beta, c};
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) {
            rep.ok = false;
            if (rep.failure.empty())
                rep.failure = "no quantifier-free cover for '" + t.object_name(alpha) + "'";
        }
    }
    enough_[i] = std::move(rep);
    return *enough_[i];
}

HilbertReport LogicEngine::hilbert(Quant mode) {
    const AdjointData::Dir dir = dir_of(mode);
    const FinCat& t = p_.total();
    const FinCat& b = p_.base();
    HilbertReport r;
    r.structure_ok = structure(dir).ok;
    if (!r.structure_ok) {
        r.counterexample = "missing fibred structure: " + structure(dir).failures.front();
        return r;  // the characterization's hypotheses fail outright
    }

    r.direct = true;
    for (ObjId x = 0; x < t.num_objects() && r.direct; ++x) {
        if (qfree(x, mode)) continue;
        r.direct = false;
        for (ArrId f : b.in(p_.proj_obj(x))) {
            const SplittingReport& s = splitting(p_.reindex_obj(f, x), mode);
            if (!s.ok) {
                r.counterexample = s.failure;
                break;
            }
        }
    }

    r.characterization = true;
    std::map<std::pair<ObjId, ArrId>, HilbertEntry> table;
    for (ArrId f : F_.members()) {
        const ObjId i = b.dom(f);
        const auto secs = sections(f);
        for (ObjId alpha : p_.objects_over(i)) {
            const auto& ad = adjoint_at(f, alpha, dir);
            if (!ad) throw InternalDisagreement("adjoint missing despite verified fibred structure");
            const ObjId gamma = ad->first;
            const ArrId str = ad->second;
            const ArrId lf = p_.lift(f, gamma);
            const ObjId fgamma = t.dom(lf);
            int found = 0;
            HilbertEntry e{alpha, f, kNoArr, kNoArr};
            for (ArrId s : secs) {
                const ArrId m = t.compose(lf, p_.lift(s, fgamma));  // s*f*gamma -> gamma, vertical
                const ArrId mid = p_.reindex_arr(s, str);
                if (mode == Quant::kCoprod) {
                    for (ArrId bar : p_.hom_vert(gamma, p_.reindex_obj(s, alpha))) {
                        budget_.charge();
                        if (t.compose(m, t.compose(mid, bar)) == t.identity(gamma)) {
                            ++found;
                            e.op = s;
                            e.bar = bar;
                        }
                    }
                } else {
                    for (ArrId bar : p_.hom_vert(p_.reindex_obj(s, alpha), gamma)) {
                        budget_.charge();
                        if (t.compose(bar, mid) == m) {
                            ++found;
                            e.op = s;
                            e.bar = bar;
                        }
                    }
                }
            }
            if (found != 1) {
                r.characterization = false;
                if (r.counterexample.empty())
                    r.counterexample = std::string(found ? "multiple" : "no") +
                                       " (section, comparison) pairs for ('" + t.object_name(alpha) +
                                       "', '" + b.arrow_name(f) + "')";
            } else {
                table[{alpha, f}] = e;
            }
        }
    }
    if (r.characterization) {
        // Condition (3): every admissible decomposition already uses the
        // tabled section and comparison.
        for (ArrId g : F_.members()) {
            const auto secs = sections(g);
            for (ObjId beta : p_.objects_over(b.dom(g))) {
                const HilbertEntry& e = table.at({beta, g});
                const auto& ad = adjoint_at(g, beta, dir);
                const ObjId gamma = ad->first;
                const ArrId str = ad->second;
                const ArrId lg = p_.lift(g, gamma);
                const ObjId ggamma = t.dom(lg);
                for (ArrId s : secs) {
                    const ArrId m = t.compose(lg, p_.lift(s, ggamma));
                    const ArrId mid = p_.reindex_arr(s, str);
                    for (ObjId ap : p_.objects_over(b.cod(g))) {
                        if (mode == Quant::kCoprod) {
                            for (ArrId u : p_.hom_vert(ap, gamma))
                                for (ArrId h : p_.hom_vert(ap, p_.reindex_obj(s, beta))) {
                                    budget_.charge();
                                    if (t.compose(m, t.compose(mid, h)) != u) continue;
                                    if (s != e.op || h != t.compose(e.bar, u)) {
                                        r.characterization = false;
                                        if (r.counterexample.empty())
                                            r.counterexample = "decomposition of '" + t.arrow_name(u) +
                                                               "' evades the epsilon table";
                                    }
                                }
                        } else {
                            for (ArrId u : p_.hom_vert(gamma, ap))
                                for (ArrId h : p_.hom_vert(p_.reindex_obj(s, beta), ap)) {
                                    budget_.charge();
                                    if (t.compose(u, m) != t.compose(h, mid)) continue;
                                    if (s != e.op || h != t.compose(u, e.bar)) {
                                        r.characterization = false;
                                        if (r.counterexample.empty())
                                            r.counterexample = "decomposition of '" + t.arrow_name(u) +
                                                               "' evades the tau table";
                                    }
                                }
                        }
                    }
                }
            }
        }
    }
    if (r.direct != r.characterization)
        throw InternalDisagreement(std::string("Hilbert routes disagree: direct=") +
                                   (r.direct ? "true" : "false") + " characterization=" +
                                   (r.characterization ? "true" : "false") +
                                   (r.counterexample.empty() ? "" : " (" + r.counterexample + ")"));
    r.verdict = r.direct;
    for (const auto& [k, e] : table) r.table.push_back(e);
    if (r.verdict)
        for (const HilbertEntry& e : r.table)
            if (!t.inverse(e.bar)) {
                r.corollary_iso = false;
                throw TheoremViolation("Hilbert comparison at ('" + t.object_name(e.alpha) + "', '" +
                                       b.arrow_name(e.f) + "') is not an isomorphism");
            }
    return r;
}

SkolemReport LogicEngine::skolem() {
    SkolemReport r;
    const DepProdReport dep = has_dependent_products(F_, budget_);
    r.base_products = dep.ok;
    if (!dep.ok)
        r.counterexample = "no base dependent product of '" +
                           p_.base().arrow_name(dep.failing_pairs.front().first) + "' along '" +
                           p_.base().arrow_name(dep.failing_pairs.front().second) + "'";
    r.fibred_coproducts = structure(AdjointData::kLeft).ok;
    if (!r.fibred_coproducts && r.counterexample.empty())
        r.counterexample = structure(AdjointData::kLeft).failures.front();
    r.fibred_products = structure(AdjointData::kRight).ok;
    if (!r.fibred_products && r.counterexample.empty())
        r.counterexample = structure(AdjointData::kRight).failures.front();
    r.enough_coprod_qf = enough(Quant::kCoprod).ok;
    if (!r.enough_coprod_qf && r.counterexample.empty()) r.counterexample = enough(Quant::kCoprod).failure;
    r.stable = r.fibred_products;
    if (r.fibred_products) {
        for (ObjId x = 0; x < p_.total().num_objects() && r.stable; ++x) {
            if (!qfree(x, Quant::kCoprod)) continue;
            const ObjId i = p_.proj_obj(x);
            for (ArrId f : F_.members()) {
                if (p_.base().dom(f) != i) continue;
                const auto& ad = adjoint_at(f, x, AdjointData::kRight);
                if (!ad) throw InternalDisagreement("product missing despite verified fibred structure");
                if (!qfree(ad->first, Quant::kCoprod)) {
                    r.stable = false;
                    if (r.counterexample.empty())
                        r.counterexample = "product of '" + p_.total().object_name(x) + "' along '" +
                                           p_.base().arrow_name(f) + "' is not quantifier-free";
                    break;
                }
            }
        }
    }
    r.ok = r.base_products && r.fibred_products && r.fibred_coproducts && r.enough_coprod_qf && r.stable;
    return r;
}

LogicEngine& LogicEngine::sub_engine() {
    if (!sub_engine_) {
        qfree_sub(Quant::kCoprod);
        sub_engine_ = std::make_unique<LogicEngine>(sub_[0]->fib, F_, budget_);
    }
    return *sub_engine_;
}

const OppositeFibration& LogicEngine::opposite() {
    if (!op_) op_ = fibrewise_opposite(p_, budget_);
    return *op_;
}

LogicEngine& LogicEngine::op_engine() {
    if (!op_engine_) {
        opposite();
        op_engine_ = std::make_unique<LogicEngine>(op_->fib, F_, budget_);
    }
    return *op_engine_;
}

GoedelReport LogicEngine::goedel() {
    GoedelReport g;
    g.skolem = skolem();
    if (!g.skolem.ok) {
        g.counterexample = "not a Skolem fibration: " + g.skolem.counterexample;
        return g;
    }
    g.enough_prod_qf_in_sub = sub_engine().enough(Quant::kProd).ok;
    if (!g.enough_prod_qf_in_sub)
        g.counterexample = "in the quantifier-free subfibration: " + sub_engine().enough(Quant::kProd).failure;
    g.ok = g.enough_prod_qf_in_sub;
    return g;
}

ComparisonFunctor LogicEngine::comparison() {
    if (!enough(Quant::kCoprod).ok)
        throw PreconditionFailed("comparison_functor: " + enough(Quant::kCoprod).failure);
    if (!structure(AdjointData::kLeft).ok)
        throw PreconditionFailed("comparison_functor: missing fibred coproducts");
    ComparisonFunctor c;
    c.sub = qfree_sub(Quant::kCoprod);
    c.completion = sigma_completion(c.sub.fib, F_, budget_);
    const FinCat& st = c.completion.fib.total();
    const FinCat& t = p_.total();
    FinFunctor tm{c.completion.fib.total_ptr(), p_.total_ptr(), {}, {}};
    tm.obj_map.resize(st.num_objects());
    tm.arr_map.resize(st.num_arrows());
    std::vector<ArrId> iota(st.num_objects());  // insertion beta -> transport, over g
    for (ObjId i = 0; i < st.num_objects(); ++i) {
        const SigmaObject& so = c.completion.objects[i];
        const ObjId amb = c.sub.total_sub.obj_in_ambient[so.alpha];
        const auto& ad = adjoint_at(so.g, amb, AdjointData::kLeft);
        if (!ad) throw InternalDisagreement("coproduct missing despite verified fibred structure");
        tm.obj_map[i] = ad->first;
        iota[i] = t.compose(p_.lift(so.g, ad->first), ad->second);
    }
    for (ArrId a = 0; a < st.num_arrows(); ++a) {
        const SigmaArrow& sa = c.completion.arrows[a];
        const ObjId sx = st.dom(a);
        const ObjId sy = st.cod(a);
        const ArrId want = t.compose(iota[sy], c.sub.total_sub.arr_in_ambient[sa.phi]);
        ArrId img = kNoArr;
        int n = 0;
        for (ArrId cnd : t.hom(tm.obj_map[sx], tm.obj_map[sy])) {
            budget_.charge();
            if (p_.proj_arr(cnd) == sa.f0 && t.compose(cnd, iota[sx]) == want) {
                img = cnd;
                ++n;
            }
        }
        if (n != 1)
            throw InternalDisagreement("comparison_functor: factorization through the insertion not unique at '" +
                                       st.arrow_name(a) + "'");
        tm.arr_map[a] = img;
    }
    c.functor.total_map = std::move(tm);
    c.functor.base_map = identity_functor(p_.base_ptr());
    return c;
}

IsoWitness LogicEngine::skolemize(ArrId g, ArrId f, ObjId beta) {
    const FinCat& b = p_.base();
    if (!F_.is_member(f) || !F_.is_member(g) || b.cod(f) != b.dom(g))
        throw PreconditionFailed("skolemize: (g, f) must be a composable pair of display maps");
    if (p_.proj_obj(beta) != b.dom(f)) throw PreconditionFailed("skolemize: beta must lie over dom f");
    const auto d = dependent_product(F_, f, g, budget_);
    if (!d) throw PreconditionFailed("skolemize: no dependent product of f along g");
    const auto& c1 = adjoint_at(f, beta, AdjointData::kLeft);
    if (!c1) throw PreconditionFailed("skolemize: missing coproduct along f");
    const auto& lhs = adjoint_at(g, c1->first, AdjointData::kRight);
    if (!lhs) throw PreconditionFailed("skolemize: missing product along g");
    const ObjId ebeta = p_.reindex_obj(d->e, beta);
    const auto& pr = adjoint_at(d->square.p1, ebeta, AdjointData::kRight);
    if (!pr) throw PreconditionFailed("skolemize: missing product along the pulled-back display map");
    const auto& rhs = adjoint_at(d->h, pr->first, AdjointData::kLeft);
    if (!rhs) throw PreconditionFailed("skolemize: missing coproduct along the dependent product");
    IsoWitness w{lhs->first, rhs->first, kNoArr, kNoArr};
    for (ArrId c : p_.hom_vert(w.lhs, w.rhs)) {
        budget_.charge();
        if (auto inv = p_.total().inverse(c)) {
            w.iso = c;
            w.inverse = *inv;
            break;
        }
    }
    if (w.iso == kNoArr)
        throw TheoremViolation("skolemize: no vertical isomorphism '" + p_.total().object_name(w.lhs) +
                               "' = '" + p_.total().object_name(w.rhs) + "'");
    return w;
}

HomBijection LogicEngine::skolem_bijection(ObjId sigma, ObjId beta, const DepProdDiagram& d) {
    const FinCat& t = p_.total();
    const FinCat& b = p_.base();
    const ArrId f = d.f, g = d.g, h = d.h, gp = d.square.p1, hp = d.square.p2, e = d.e;
    const ObjId A = b.dom(g);
    const ObjId apex = b.dom(gp);
    const ArrId idA = b.identity(A);
    if (!qfree(sigma, Quant::kCoprod))
        throw PreconditionFailed("skolem_bijection: sigma is not coprod-quantifier-free");
    if (p_.proj_obj(sigma) != b.cod(g) || p_.proj_obj(beta) != b.dom(f))
        throw PreconditionFailed("skolem_bijection: endpoints do not match the diagram");

    const auto& lf = adjoint_at(f, beta, AdjointData::kLeft);
    if (!lf) throw PreconditionFailed("skolem_bijection: missing coproduct along f");
    const ObjId ebeta = p_.reindex_obj(e, beta);
    const auto& rg = adjoint_at(gp, ebeta, AdjointData::kRight);
    if (!rg) throw PreconditionFailed("skolem_bijection: missing product along the pulled-back map");
    const ObjId alphaO = rg->first;
    const auto& lh = adjoint_at(h, alphaO, AdjointData::kLeft);
    if (!lh) throw PreconditionFailed("skolem_bijection: missing coproduct along the dependent product");

    const ObjId gamma1 = lf->first;
    const ArrId iotaF = t.compose(p_.lift(f, gamma1), lf->second);  // beta -> gamma1 over f
    const ObjId gamma2 = lh->first;
    const ArrId iotaH = t.compose(p_.lift(h, gamma2), lh->second);  // alphaO -> gamma2 over h
    const ObjId gsigma = p_.reindex_obj(g, sigma);

    // Per section k of h: its pullback mediator k', the induced section
    // u = e k' of f, and the evaluation map g*(k* alphaO) -> u* beta.
    struct Leg {
        ArrId k, kprime, u, dmap;
        ObjId kalpha;
    };
    std::vector<Leg> legs;
    for (ArrId k : sections(h)) {
        const ArrId kg = b.compose(k, g);
        ArrId kp = kNoArr;
        int n = 0;
        for (ArrId j : b.hom(A, apex)) {
            budget_.charge();
            if (b.compose(gp, j) == kg && b.compose(hp, j) == idA) {
                kp = j;
                ++n;
            }
        }
        if (n != 1) throw InternalDisagreement("skolem_bijection: pullback mediator not unique");
        Leg L{k, kp, b.compose(e, kp), kNoArr, p_.reindex_obj(k, alphaO)};
        const ArrId i1 = square_iso(p_, g, k, kp, gp, alphaO);     // g*k*alphaO -> k'*gp*alphaO
        const ArrId mid = p_.reindex_arr(kp, rg->second);           // -> k'*(e* beta)
        const ArrId i2 = square_iso(p_, kp, e, idA, L.u, beta);     // k'*(e* beta) -> u* beta
        L.dmap = t.compose(i2, t.compose(mid, i1));
        legs.push_back(L);
    }

    HomBijection bij;
    bij.dom = p_.hom_vert(gsigma, gamma1);
    bij.cod = p_.hom_vert(sigma, gamma2);

    const auto phi = [&](ArrId m) -> ArrId {
        ArrId usec = kNoArr, mbar = kNoArr;
        int n = 0;
        for (ArrId u : sections(f)) {
            const ArrId lu = p_.lift(u, beta);
            for (ArrId c : p_.hom_vert(gsigma, t.dom(lu))) {
                budget_.charge();
                if (t.compose(iotaF, t.compose(lu, c)) == m) {
                    usec = u;
                    mbar = c;
                    ++n;
                }
            }
        }
        if (n != 1) throw TheoremViolation("skolem_bijection: splitting of a hom element not unique");
        const Leg* leg = nullptr;
        int ln = 0;
        for (const Leg& L : legs)
            if (L.u == usec) {
                leg = &L;
                ++ln;
            }
        if (ln != 1) throw TheoremViolation("skolem_bijection: induced section of h not unique");
        ArrId rt = kNoArr;
        int rn = 0;
        for (ArrId c : p_.hom_vert(sigma, leg->kalpha)) {
            budget_.charge();
            if (t.compose(leg->dmap, p_.reindex_arr(g, c)) == mbar) {
                rt = c;
                ++rn;
            }
        }
        if (rn != 1) throw TheoremViolation("skolem_bijection: transpose across the product not unique");
        return t.compose(iotaH, t.compose(p_.lift(leg->k, alphaO), rt));
    };

    const auto psi = [&](ArrId r) -> ArrId {
        const Leg* leg = nullptr;
        ArrId rt = kNoArr;
        int n = 0;
        for (const Leg& L : legs) {
            const ArrId lk = p_.lift(L.k, alphaO);
            for (ArrId c : p_.hom_vert(sigma, L.kalpha)) {
                budget_.charge();
                if (t.compose(iotaH, t.compose(lk, c)) == r) {
                    leg = &L;
                    rt = c;
                    ++n;
                }
            }
        }
        if (n != 1) throw TheoremViolation("skolem_bijection: splitting of a hom element not unique");
        const ArrId mbar = t.compose(leg->dmap, p_.reindex_arr(g, rt));
        return t.compose(iotaF, t.compose(p_.lift(leg->u, beta), mbar));
    };

    for (ArrId m : bij.dom) bij.phi.push_back(phi(m));
    for (ArrId r : bij.cod) bij.psi.push_back(psi(r));
    bij.ok = true;
    for (std::size_t i = 0; i < bij.dom.size() && bij.ok; ++i) {
        const auto at = std::find(bij.cod.begin(), bij.cod.end(), bij.phi[i]);
        if (at == bij.cod.end() || bij.psi[at - bij.cod.begin()] != bij.dom[i]) {
            bij.ok = false;
            bij.failure = "psi . phi is not the identity at '" + t.arrow_name(bij.dom[i]) + "'";
        }
    }
    for (std::size_t j = 0; j < bij.cod.size() && bij.ok; ++j) {
        const auto at = std::find(bij.dom.begin(), bij.dom.end(), bij.psi[j]);
        if (at == bij.dom.end() || bij.phi[at - bij.dom.begin()] != bij.cod[j]) {
            bij.ok = false;
            bij.failure = "phi . psi is not the identity at '" + t.arrow_name(bij.cod[j]) + "'";
        }
    }
    return bij;
}

PrenexForm LogicEngine::prenex(ObjId alpha) {
    if (!goedel().ok) throw PreconditionFailed("prenex: not a Goedel fibration");
    const FinCat& t = p_.total();
    const QfCover& c1 = enough(Quant::kCoprod).covers.at(alpha);
    LogicEngine& se = sub_engine();
    const FullSub& sub = qfree_sub(Quant::kCoprod);
    const QfCover& c2 = se.enough(Quant::kProd).covers.at(sub.total_sub.obj_to_sub.at(c1.beta));
    const auto& pad = se.adjoint_at(c2.f, c2.beta, AdjointData::kRight);
    if (!pad) throw InternalDisagreement("prenex: product cover lost its product");
    const ObjId prod = sub.total_sub.obj_in_ambient[pad->first];
    const ArrId iso2 = sub.total_sub.arr_in_ambient[c2.iso];  // prod -> c1.beta
    const auto& adP = adjoint_at(c1.f, prod, AdjointData::kLeft);
    const auto& adG = adjoint_at(c1.f, c1.beta, AdjointData::kLeft);
    if (!adP || !adG) throw InternalDisagreement("prenex: coproduct missing despite Skolem structure");
    // Transport iso2 along the coproduct: the unique vertical arrow whose
    // reindexing intertwines the units.
    const ArrId want = t.compose(adG->second, iso2);
    ArrId tr = kNoArr;
    int n = 0;
    for (ArrId c : p_.hom_vert(adP->first, adG->first)) {
        budget_.charge();
        if (t.compose(p_.reindex_arr(c1.f, c), adP->second) == want) {
            tr = c;
            ++n;
        }
    }
    if (n != 1) throw TheoremViolation("prenex: transported comparison not unique");
    PrenexForm pf{c1.f, c2.f, sub.total_sub.obj_in_ambient[c2.beta], t.compose(c1.iso, tr)};
    if (!t.inverse(pf.iso)) throw TheoremViolation("prenex: composite comparison is not an isomorphism");
    return pf;
}

RoundtripReport LogicEngine::roundtrip() {
    RoundtripReport rep;
    if (!goedel().ok) throw PreconditionFailed("roundtrip: not a Goedel fibration");

    // p = Sigma of its coprod-quantifier-free subfibration A.
    ComparisonFunctor C1 = comparison();
    rep.details.merge(check_fibred_equivalence(C1.completion.fib, p_, C1.functor));

    // A = Pi of its prod-quantifier-free subfibration, witnessed on the
    // coproduct side of the fibrewise opposite of A.
    LogicEngine& aeng = sub_engine();
    const OppositeFibration& oa = aeng.opposite();
    ComparisonFunctor C2 = aeng.op_engine().comparison();
    rep.details.merge(check_fibred_equivalence(C2.completion.fib, oa.fib, C2.functor));

    // The designated input and its Dialectica completion.
    const FullSub& q = aeng.qfree_sub(Quant::kProd);
    DialFibration D = dialectica(q.fib, F_, budget_);

    // J : opposite of q -> the coprod-qf subfibration of the opposite of A.
    const OppositeFibration& oq = D.pi.op_in;
    const FinCat& oqt = oq.fib.total();
    FinFunctor J{oq.fib.total_ptr(), C2.sub.fib.total_ptr(), {}, {}};
    J.obj_map.resize(oqt.num_objects());
    J.arr_map.resize(oqt.num_arrows());
    for (ObjId x = 0; x < oqt.num_objects(); ++x) {
        const auto it = C2.sub.total_sub.obj_to_sub.find(q.total_sub.obj_in_ambient[x]);
        if (it == C2.sub.total_sub.obj_to_sub.end())
            throw InternalDisagreement("roundtrip: a prod-qf object is not coprod-qf in the opposite");
        J.obj_map[x] = it->second;
    }
    for (ArrId a = 0; a < oqt.num_arrows(); ++a) {
        const auto [c, v] = oq.rep[a];
        const auto key = OppositeFibration::span_key(q.total_sub.arr_in_ambient[c],
                                                     q.total_sub.arr_in_ambient[v]);
        const auto it = oa.class_of.find(key);
        if (it == oa.class_of.end())
            throw InternalDisagreement("roundtrip: representative span missing in the ambient opposite");
        J.arr_map[a] = C2.sub.total_sub.arr_to_sub.at(it->second);
    }

    // W : Sigma(op q) -> op A, through Sigma(J) and the comparison.
    const FinFunctor W = compose(C2.functor.total_map, sigma_map(D.pi.sigma, C2.completion, J));
    rep.details.merge(
        check_fibred_functor(D.pi.sigma.fib, oa.fib, FibredFunctor{W, identity_functor(p_.base_ptr())}));

    // K : Pi(q) -> A, the opposite of W followed by the inverse involution.
    Budget& bud = budget_;
    OppositeFibration ooa = fibrewise_opposite(oa.fib, bud);
    const FinCat& pot = D.pi.op_out.fib.total();
    FinFunctor opw{D.pi.op_out.fib.total_ptr(), ooa.fib.total_ptr(), W.obj_map, {}};
    opw.arr_map.resize(pot.num_arrows());
    for (ArrId a = 0; a < pot.num_arrows(); ++a) {
        const auto [c, v] = D.pi.op_out.rep[a];
        const auto it = ooa.class_of.find(OppositeFibration::span_key(W.arr_map[c], W.arr_map[v]));
        if (it == ooa.class_of.end())
            throw InternalDisagreement("roundtrip: image span missing in the double opposite");
        opw.arr_map[a] = it->second;
    }
    const FibredFunctor invol = opposite_involution(C1.sub.fib, oa, ooa);
    const FinFunctor K = compose(invert(invol.total_map), opw);

    // The full comparison Dial(q) -> p.
    const FinFunctor G = compose(C1.functor.total_map, sigma_map(D.sigma, C1.completion, K));
    const FibredFunctor gf{G, identity_functor(p_.base_ptr())};
    rep.details.merge(check_fibred_functor(D.fib(), p_, gf));
    rep.details.merge(check_fibred_equivalence(D.fib(), p_, gf));
    rep.equivalence_ok = rep.details.ok();
    if (!rep.equivalence_ok)
        throw TheoremViolation("roundtrip: equivalence failed:\n" + rep.details.to_string());

    // Converse direction: the Dialectica output is itself Goedel.
    LogicEngine deng(D.fib(), F_, budget_);
    rep.converse_goedel_ok = deng.goedel().ok;
    if (!rep.converse_goedel_ok)
        throw TheoremViolation("roundtrip: the Dialectica output is not a Goedel fibration");
    return rep;
}

SplittingReport is_splitting(const ClovenFibration& p, const DisplayClass& F, ObjId alpha, Quant which,
                             Budget& budget) {
    LogicEngine e(p, F, budget);
    return e.splitting(alpha, which);
}

bool is_qfree(const ClovenFibration& p, const DisplayClass& F, ObjId alpha, Quant which, Budget& budget) {
    LogicEngine e(p, F, budget);
    return e.qfree(alpha, which);
}

ClovenFibration qfree_subfibration(const ClovenFibration& p, const DisplayClass& F, Quant which,
                                   Budget& budget) {
    LogicEngine e(p, F, budget);
    return e.qfree_sub(which).fib;
}

EnoughReport enough_qfree(const ClovenFibration& p, const DisplayClass& F, Quant which, Budget& budget) {
    LogicEngine e(p, F, budget);
    return e.enough(which);
}

HilbertReport hilbert_check(const ClovenFibration& p, const DisplayClass& F, Quant mode, Budget& budget) {
    LogicEngine e(p, F, budget);
    return e.hilbert(mode);
}

SkolemReport is_skolem(const ClovenFibration& p, const DisplayClass& F, Budget& budget) {
    LogicEngine e(p, F, budget);
    return e.skolem();
}

GoedelReport is_goedel(const ClovenFibration& p, const DisplayClass& F, Budget& budget) {
    LogicEngine e(p, F, budget);
    return e.goedel();
}

ComparisonFunctor comparison_functor(const ClovenFibration& p, const DisplayClass& F, Budget& budget) {
    LogicEngine e(p, F, budget);
    return e.comparison();
}

IsoWitness skolemize(const ClovenFibration& p, const DisplayClass& F, ArrId g, ArrId f, ObjId beta,
                     Budget& budget) {
    LogicEngine e(p, F, budget);
    return e.skolemize(g, f, beta);
}

HomBijection skolem_bijection(const ClovenFibration& p, const DisplayClass& F, ObjId sigma, ObjId beta,
                              const DepProdDiagram& d, Budget& budget) {
    LogicEngine e(p, F, budget);
    return e.skolem_bijection(sigma, beta, d);
}

PrenexForm prenex(const ClovenFibration& p, const DisplayClass& F, ObjId alpha, Budget& budget) {
    LogicEngine e(p, F, budget);
    return e.prenex(alpha);
}

RoundtripReport goedel_dialectica_roundtrip(const ClovenFibration& p, const DisplayClass& F,
                                            Budget& budget) {
    LogicEngine e(p, F, budget);
    return e.roundtrip();
}

}  // namespace fibrak
