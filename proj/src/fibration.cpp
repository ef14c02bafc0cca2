#include "fibrak/fibration.hpp"

#include <algorithm>
#include <numeric>

#include "fibrak/parallel.hpp"

namespace fibrak {

namespace {

// Cartesianness of f over u = proj(f), restricted to competing arrows from z.
bool cartesian_at(const FinFunctor& proj, ArrId f, ObjId z, Budget& budget) {
    const FinCat& t = *proj.src;
    const FinCat& b = *proj.tgt;
    const ArrId u = proj.arr_map[f];
    const ObjId x = t.dom(f), y = t.cod(f);
    const ObjId a = b.dom(u), pz = proj.obj_map[z];
    for (ArrId g : t.hom(z, y))
        for (ArrId w : b.hom(pz, a)) {
            budget.charge();
            if (b.compose(u, w) != proj.arr_map[g]) continue;
            int n = 0;
            for (ArrId h : t.hom(z, x)) {
                budget.charge();
                if (proj.arr_map[h] == w && t.compose(f, h) == g && ++n > 1) break;
            }
            if (n != 1) return false;
        }
    return true;
}

bool cartesian_serial(const FinFunctor& proj, ArrId f, Budget& budget) {
    for (ObjId z = 0; z < proj.src->num_objects(); ++z)
        if (!cartesian_at(proj, f, z, budget)) return false;
    return true;
}

bool cartesian_parallel(const FinFunctor& proj, ArrId f, Budget& budget) {
    if (!parallel_enabled()) return cartesian_serial(proj, f, budget);
    const int no = proj.src->num_objects();
    bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
    for (int z = 0; z < no; ++z) {
        bool part;
        try {
            part = cartesian_at(proj, f, z, budget);
        } catch (const BudgetExceeded&) {
            part = false;
        }
        ok = ok && part;
    }
    if (!ok && budget.used() > budget.cap())
        throw BudgetExceeded("universal-property search exceeded budget of " + std::to_string(budget.cap()) + " candidates");
    return ok;
}

}  // namespace

bool is_cartesian(const ClovenFibration& p, ArrId f, Budget& budget) {
    return cartesian_parallel(p.proj(), f, budget);
}

bool is_cartesian_serial(const ClovenFibration& p, ArrId f, Budget& budget) {
    return cartesian_serial(p.proj(), f, budget);
}

ClovenFibration ClovenFibration::make(FinFunctor proj) {
    return make(std::move(proj), {});
}

ClovenFibration ClovenFibration::make(FinFunctor proj, const std::unordered_map<std::int64_t, ArrId>& cleavage) {
    ClovenFibration p;
    const FinCat& t = *proj.src;
    const FinCat& b = *proj.tgt;
    p.over_.assign(b.num_objects(), {});
    for (ObjId y = 0; y < t.num_objects(); ++y) p.over_[proj.obj_map[y]].push_back(y);
    p.cleav_.assign(static_cast<std::size_t>(b.num_arrows()) * t.num_objects(), kNoArr);
    p.chosen_.assign(t.num_arrows(), 0);

    for (ArrId u = 0; u < b.num_arrows(); ++u)
        for (ObjId y = 0; y < t.num_objects(); ++y) {
            if (proj.obj_map[y] != b.cod(u)) continue;
            const std::size_t slot = static_cast<std::size_t>(u) * t.num_objects() + y;
            if (b.is_identity(u)) {
                p.cleav_[slot] = t.identity(y);  // identity-lift convention
                p.chosen_[t.identity(y)] = 1;
                continue;
            }
            if (auto it = cleavage.find(cleavage_key(u, y)); it != cleavage.end()) {
                p.cleav_[slot] = it->second;
                p.chosen_[it->second] = 1;
                continue;
            }
            // order-least cartesian arrow into y over u
            for (ArrId f : t.in(y)) {
                if (proj.arr_map[f] != u) continue;
                Budget budget;
                if (cartesian_parallel(proj, f, budget)) {
                    p.cleav_[slot] = f;
                    p.chosen_[f] = 1;
                    break;
                }
            }
            if (p.cleav_[slot] == kNoArr) p.missing_.emplace_back(u, y);
        }
    p.proj_ = std::move(proj);
    return p;
}

ArrId ClovenFibration::lift(ArrId u, ObjId y) const {
    auto f = try_lift(u, y);
    if (!f)
        throw NotAFibration("no cartesian lift of '" + base().arrow_name(u) + "' into '" + total().object_name(y) + "'");
    return *f;
}

std::optional<ArrId> ClovenFibration::try_lift(ArrId u, ObjId y) const {
    if (proj_.obj_map[y] != base().cod(u))
        throw PreconditionFailed("lift target '" + total().object_name(y) + "' is not over cod of '" + base().arrow_name(u) + "'");
    const ArrId f = cleav_[static_cast<std::size_t>(u) * total().num_objects() + y];
    if (f == kNoArr) return std::nullopt;
    return f;
}

ArrId ClovenFibration::reindex_arr(ArrId u, ArrId v) const {
    const FinCat& t = total();
    const ObjId x = t.dom(v), y = t.cod(v);
    const ArrId lx = lift(u, x), ly = lift(u, y);
    for (ArrId h : t.hom(t.dom(lx), t.dom(ly)))
        if (is_vertical(h) && t.compose(ly, h) == t.compose(v, lx)) return h;
    throw NotAFibration("no vertical filler reindexing '" + t.arrow_name(v) + "' along '" + base().arrow_name(u) + "'");
}

std::vector<ArrId> ClovenFibration::hom_vert(ObjId x, ObjId y) const {
    std::vector<ArrId> out;
    for (ArrId f : total().hom(x, y))
        if (is_vertical(f)) out.push_back(f);
    return out;
}

LawReport verify_fibration(const ClovenFibration& p) {
    LawReport r = check_functor(p.proj());
    if (!r.ok()) return r;
    for (const auto& [u, y] : p.missing_lifts())
        r.add("no cartesian lift of '" + p.base().arrow_name(u) + "' into '" + p.total().object_name(y) + "'");

    // every cleavage entry must actually be cartesian
    std::vector<std::pair<ArrId, ObjId>> entries;
    for (ArrId u = 0; u < p.base().num_arrows(); ++u)
        for (ObjId y : p.objects_over(p.base().cod(u)))
            if (auto f = p.try_lift(u, y)) {
                if (p.total().cod(*f) != y || p.proj_arr(*f) != u)
                    r.add("cleavage entry for ('" + p.base().arrow_name(u) + "', '" + p.total().object_name(y) + "') has wrong endpoints");
                else
                    entries.emplace_back(*f, y);
            }
    std::vector<char> bad(entries.size(), 0);
    const int n = static_cast<int>(entries.size());
#pragma omp parallel for schedule(dynamic) if (parallel_enabled())
    for (int i = 0; i < n; ++i) {
        Budget budget;
        bad[i] = !cartesian_serial(p.proj(), entries[i].first, budget);
    }
    for (int i = 0; i < n; ++i)
        if (bad[i]) r.add("cleavage entry '" + p.total().arrow_name(entries[i].first) + "' is not cartesian");
    return r;
}

Subcat fibre(const ClovenFibration& p, ObjId i) {
    Subcat s;
    s.ambient = p.total_ptr();
    FinCatBuilder b;
    for (ObjId x : p.objects_over(i)) {
        ObjId sx = b.object(p.total().object_name(x));
        s.obj_in_ambient.push_back(x);
        s.obj_to_sub[x] = sx;
    }
    const FinCat& t = p.total();
    std::vector<ArrId> verts;
    for (ObjId x : p.objects_over(i))
        for (ArrId f : t.out(x))
            if (p.is_vertical(f)) verts.push_back(f);
    std::sort(verts.begin(), verts.end());
    for (ArrId f : verts) {
        ArrId sf = b.arrow(t.arrow_name(f), s.obj_to_sub.at(t.dom(f)), s.obj_to_sub.at(t.cod(f)));
        s.arr_in_ambient.push_back(f);
        s.arr_to_sub[f] = sf;
    }
    for (ArrId f : verts)
        for (ArrId g : verts)
            if (t.composable(g, f) && !t.is_identity(f) && !t.is_identity(g))
                b.set_compose(s.arr_to_sub.at(g), s.arr_to_sub.at(f), s.arr_to_sub.at(t.compose(g, f)));
    s.cat = b.build();
    // identities were declared (verticals include them), so ids line up
    return s;
}

FinFunctor reindex(const ClovenFibration& p, ArrId u, const Subcat& fib_cod, const Subcat& fib_dom) {
    FinFunctor f{fib_cod.cat, fib_dom.cat, {}, {}};
    f.obj_map.resize(fib_cod.cat->num_objects());
    f.arr_map.resize(fib_cod.cat->num_arrows());
    for (ObjId y = 0; y < fib_cod.cat->num_objects(); ++y)
        f.obj_map[y] = fib_dom.obj_to_sub.at(p.reindex_obj(u, fib_cod.obj_in_ambient[y]));
    for (ArrId v = 0; v < fib_cod.cat->num_arrows(); ++v)
        f.arr_map[v] = fib_dom.arr_to_sub.at(p.reindex_arr(u, fib_cod.arr_in_ambient[v]));
    return f;
}

LawReport check_fibred_functor(const ClovenFibration& p, const ClovenFibration& q, const FibredFunctor& g) {
    LawReport r;
    r.merge(check_functor(g.total_map));
    r.merge(check_functor(g.base_map));
    if (!r.ok()) return r;
    for (ObjId x = 0; x < p.total().num_objects(); ++x)
        if (q.proj_obj(g.total_map.obj_map[x]) != g.base_map.obj_map[p.proj_obj(x)]) {
            r.add("projection square fails on object '" + p.total().object_name(x) + "'");
            return r;
        }
    for (ArrId f = 0; f < p.total().num_arrows(); ++f)
        if (q.proj_arr(g.total_map.arr_map[f]) != g.base_map.arr_map[p.proj_arr(f)]) {
            r.add("projection square fails on arrow '" + p.total().arrow_name(f) + "'");
            return r;
        }
    const int na = p.total().num_arrows();
    std::vector<char> bad(na, 0);
#pragma omp parallel for schedule(dynamic) if (parallel_enabled())
    for (int f = 0; f < na; ++f) {
        Budget budget;
        if (cartesian_serial(p.proj(), f, budget) && !cartesian_serial(q.proj(), g.total_map.arr_map[f], budget))
            bad[f] = 1;
    }
    for (ArrId f = 0; f < na; ++f)
        if (bad[f]) r.add("cartesian arrow '" + p.total().arrow_name(f) + "' has non-cartesian image");
    return r;
}

LawReport check_fibred_equivalence(const ClovenFibration& p, const ClovenFibration& q, const FibredFunctor& g) {
    LawReport r = check_fibred_functor(p, q, g);
    if (!r.ok()) return r;
    for (ObjId i = 0; i < p.base().num_objects(); ++i)
        if (g.base_map.obj_map[i] != i) {
            r.add("base functor is not the identity");
            return r;
        }
    // fibrewise essentially surjective
    for (ObjId i = 0; i < q.base().num_objects(); ++i)
        for (ObjId y : q.objects_over(i)) {
            bool hit = false;
            for (ObjId x : p.objects_over(i)) {
                for (ArrId v : q.hom_vert(g.total_map.obj_map[x], y))
                    if (q.total().is_iso(v)) {
                        hit = true;
                        break;
                    }
                if (hit) break;
            }
            if (!hit) r.add("object '" + q.total().object_name(y) + "' is not in the essential image");
        }
    // fully faithful on every hom-set
    for (ObjId x = 0; x < p.total().num_objects(); ++x)
        for (ObjId y = 0; y < p.total().num_objects(); ++y) {
            const auto& hs = p.total().hom(x, y);
            std::vector<ArrId> image;
            for (ArrId f : hs) image.push_back(g.total_map.arr_map[f]);
            std::sort(image.begin(), image.end());
            if (std::adjacent_find(image.begin(), image.end()) != image.end())
                r.add("not faithful on hom('" + p.total().object_name(x) + "', '" + p.total().object_name(y) + "')");
            else if (image.size() != q.total().hom(g.total_map.obj_map[x], g.total_map.obj_map[y]).size())
                r.add("not full on hom('" + p.total().object_name(x) + "', '" + p.total().object_name(y) + "')");
        }
    return r;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a < b)
            parent[b] = a;
        else if (b < a)
            parent[a] = b;
    }
};

}  // namespace

FullSub full_subfibration(const ClovenFibration& p, const std::vector<ObjId>& objects) {
    const FinCat& t = p.total();
    std::vector<ObjId> objs = objects;
    std::sort(objs.begin(), objs.end());
    std::vector<char> keep(t.num_objects(), 0);
    for (ObjId x : objs) keep[x] = 1;

    FullSub s;
    s.total_sub.ambient = p.total_ptr();
    FinCatBuilder b;
    for (ObjId x : objs) {
        ObjId sx = b.object(t.object_name(x));
        s.total_sub.obj_in_ambient.push_back(x);
        s.total_sub.obj_to_sub[x] = sx;
    }
    std::vector<ArrId> arrs;
    for (ArrId f = 0; f < t.num_arrows(); ++f)
        if (keep[t.dom(f)] && keep[t.cod(f)]) arrs.push_back(f);
    for (ArrId f : arrs) {
        ArrId sf = b.arrow(t.arrow_name(f), s.total_sub.obj_to_sub.at(t.dom(f)),
                           s.total_sub.obj_to_sub.at(t.cod(f)));
        s.total_sub.arr_in_ambient.push_back(f);
        s.total_sub.arr_to_sub[f] = sf;
    }
    for (ArrId f : arrs)
        for (ArrId g : arrs)
            if (t.composable(g, f) && !t.is_identity(f) && !t.is_identity(g))
                b.set_compose(s.total_sub.arr_to_sub.at(g), s.total_sub.arr_to_sub.at(f),
                              s.total_sub.arr_to_sub.at(t.compose(g, f)));
    s.total_sub.cat = b.build();

    FinFunctor proj{s.total_sub.cat, p.base_ptr(), {}, {}};
    proj.obj_map.resize(s.total_sub.cat->num_objects());
    proj.arr_map.resize(s.total_sub.cat->num_arrows());
    for (std::size_t i = 0; i < s.total_sub.obj_in_ambient.size(); ++i)
        proj.obj_map[i] = p.proj_obj(s.total_sub.obj_in_ambient[i]);
    for (std::size_t i = 0; i < s.total_sub.arr_in_ambient.size(); ++i)
        proj.arr_map[i] = p.proj_arr(s.total_sub.arr_in_ambient[i]);

    std::unordered_map<std::int64_t, ArrId> cleav;
    for (ObjId sy = 0; sy < s.total_sub.cat->num_objects(); ++sy) {
        ObjId y = s.total_sub.obj_in_ambient[sy];
        for (ArrId u : p.base().in(p.proj_obj(y))) {
            ArrId ell = p.lift(u, y);
            if (!keep[t.dom(ell)])
                throw PreconditionFailed("full_subfibration: subset not closed under reindexing at '" +
                                         t.object_name(y) + "' along '" + p.base().arrow_name(u) + "'");
            cleav[ClovenFibration::cleavage_key(u, sy)] = s.total_sub.arr_to_sub.at(ell);
        }
    }
    s.fib = ClovenFibration::make(std::move(proj), cleav);
    return s;
}

OppositeFibration fibrewise_opposite(const ClovenFibration& p, Budget& budget) {
    const FinCat& t = p.total();
    const int na = t.num_arrows();

    std::vector<char> cart(na, 0);
#pragma omp parallel for schedule(dynamic) if (parallel_enabled())
    for (int f = 0; f < na; ++f) {
        Budget b;
        cart[f] = cartesian_serial(p.proj(), f, b);
    }

    // enumerate spans (c cartesian, v vertical) with common domain, in
    // lexicographic (c, v) order
    struct Span {
        ArrId c, v;
    };
    std::vector<Span> spans;
    for (ArrId c = 0; c < na; ++c) {
        if (!cart[c]) continue;
        for (ArrId v : t.out(t.dom(c)))
            if (p.is_vertical(v)) spans.push_back({c, v});
    }

    // group spans by the (source, target) = (cod v, cod c) of the arrow they
    // present, then take the symmetric-transitive closure of "factors
    // through" within each group
    const int ns = static_cast<int>(spans.size());
    UnionFind uf(ns);
    std::unordered_map<std::int64_t, std::vector<int>> groups;
    for (int i = 0; i < ns; ++i)
        groups[OppositeFibration::span_key(t.cod(spans[i].v), t.cod(spans[i].c))].push_back(i);
    auto factors = [&](const Span& s, const Span& u) {
        for (ArrId h : t.hom(t.dom(s.c), t.dom(u.c))) {
            budget.charge();
            if (t.compose(u.c, h) == s.c && t.compose(u.v, h) == s.v) return true;
        }
        return false;
    };
    for (const auto& [key, idx] : groups)
        for (std::size_t a = 0; a < idx.size(); ++a)
            for (std::size_t b = a + 1; b < idx.size(); ++b)
                if (uf.find(idx[a]) != uf.find(idx[b]) && (factors(spans[idx[a]], spans[idx[b]]) || factors(spans[idx[b]], spans[idx[a]])))
                    uf.unite(idx[a], idx[b]);

    // identity classes: whichever class contains the span (id_x, id_x)
    std::unordered_map<std::int64_t, int> span_index;
    for (int i = 0; i < ns; ++i) span_index[OppositeFibration::span_key(spans[i].c, spans[i].v)] = i;
    std::unordered_map<int, ObjId> identity_root;
    for (ObjId x = 0; x < t.num_objects(); ++x) {
        const ArrId id = t.identity(x);
        identity_root[uf.find(span_index.at(OppositeFibration::span_key(id, id)))] = x;
    }

    // class representatives in lexicographic (c, v) order: spans were
    // enumerated in that order, so the root (least index) is the least rep
    OppositeFibration op;
    std::unordered_map<int, ArrId> arrow_of_root;
    FinCatBuilder b;
    for (ObjId x = 0; x < t.num_objects(); ++x) b.object(t.object_name(x));
    std::vector<char> is_id_class;
    for (int i = 0; i < ns; ++i) {
        const int root = uf.find(i);
        ArrId a;
        if (auto it = arrow_of_root.find(root); it != arrow_of_root.end()) {
            a = it->second;
        } else {
            const Span& s = spans[root];
            const ObjId src = t.cod(s.v), dst = t.cod(s.c);
            auto idit = identity_root.find(root);
            std::string name = idit != identity_root.end()
                                   ? "id_" + t.object_name(idit->second)
                                   : "op[" + t.arrow_name(s.c) + ";" + t.arrow_name(s.v) + "]";
            a = b.arrow(name, src, dst);
            arrow_of_root[root] = a;
            op.rep.push_back({s.c, s.v});
            is_id_class.push_back(idit != identity_root.end());
        }
        op.class_of[OppositeFibration::span_key(spans[i].c, spans[i].v)] = a;
    }

    // composition: pull the second span back along the cartesian leg of the
    // first, using the cleavage of p
    const int nop = static_cast<int>(op.rep.size());
    for (ArrId a1 = 0; a1 < nop; ++a1)
        for (ArrId a2 = 0; a2 < nop; ++a2) {
            const auto [c1, v1] = op.rep[a1];
            const auto [c2, v2] = op.rep[a2];
            if (t.cod(c1) != t.cod(v2)) continue;  // not composable as a2 . a1
            if (is_id_class[a1] || is_id_class[a2]) continue;  // auto-filled
            const ArrId l = p.lift(p.proj_arr(c1), t.dom(c2));
            const ObjId w = t.dom(l);
            ArrId filler = kNoArr;
            for (ArrId h : t.hom(w, t.dom(c1))) {
                budget.charge();
                if (p.is_vertical(h) && t.compose(c1, h) == t.compose(v2, l)) {
                    filler = h;
                    break;
                }
            }
            if (filler == kNoArr) throw NotAFibration("no vertical factorization through a cartesian arrow");
            b.set_compose(a2, a1, op.class_of.at(OppositeFibration::span_key(t.compose(c2, l), t.compose(v1, filler))));
        }
    CatPtr opcat = b.build();

    FinFunctor proj{opcat, p.base_ptr(), {}, {}};
    proj.obj_map.resize(opcat->num_objects());
    proj.arr_map.resize(opcat->num_arrows());
    for (ObjId x = 0; x < opcat->num_objects(); ++x) proj.obj_map[x] = p.proj_obj(x);
    for (ArrId a = 0; a < nop; ++a) proj.arr_map[a] = p.proj_arr(op.rep[a].first);

    std::unordered_map<std::int64_t, ArrId> cleavage;
    for (ArrId u = 0; u < p.base().num_arrows(); ++u) {
        if (p.base().is_identity(u)) continue;
        for (ObjId y : p.objects_over(p.base().cod(u))) {
            if (auto f = p.try_lift(u, y))
                cleavage[ClovenFibration::cleavage_key(u, y)] =
                    op.class_of.at(OppositeFibration::span_key(*f, t.identity(t.dom(*f))));
        }
    }
    op.fib = ClovenFibration::make(std::move(proj), cleavage);
    return op;
}

FibredFunctor opposite_involution(const ClovenFibration& p, const OppositeFibration& op1, const OppositeFibration& op2) {
    const FinCat& t = p.total();
    FibredFunctor g;
    g.base_map = identity_functor(p.base_ptr());
    g.total_map = FinFunctor{p.total_ptr(), op2.fib.total_ptr(), {}, {}};
    g.total_map.obj_map.resize(t.num_objects());
    for (ObjId x = 0; x < t.num_objects(); ++x) g.total_map.obj_map[x] = x;
    g.total_map.arr_map.resize(t.num_arrows());
    for (ArrId a = 0; a < t.num_arrows(); ++a) {
        const ArrId u = p.proj_arr(a);
        const ObjId y = t.cod(a);
        const ArrId lu = p.lift(u, y);
        const ObjId uy = t.dom(lu);
        // vertical part of a against the cleavage
        ArrId v = kNoArr;
        for (ArrId h : p.hom_vert(t.dom(a), uy))
            if (t.compose(lu, h) == a) {
                v = h;
                break;
            }
        if (v == kNoArr) throw NotAFibration("arrow does not factor through the chosen lift");
        const ArrId c_in_op = op1.arrow_of(lu, t.identity(uy));
        const ArrId v_in_op = op1.arrow_of(t.identity(t.dom(a)), v);
        g.total_map.arr_map[a] = op2.arrow_of(c_in_op, v_in_op);
    }
    return g;
}

}  // namespace fibrak
