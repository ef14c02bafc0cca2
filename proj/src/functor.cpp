#include "fibrak/functor.hpp"

#include "fibrak/parallel.hpp"

namespace fibrak {

FinFunctor identity_functor(CatPtr c) {
    FinFunctor f{c, c, {}, {}};
    f.obj_map.resize(c->num_objects());
    f.arr_map.resize(c->num_arrows());
    for (ObjId x = 0; x < c->num_objects(); ++x) f.obj_map[x] = x;
    for (ArrId a = 0; a < c->num_arrows(); ++a) f.arr_map[a] = a;
    return f;
}

FinFunctor compose(const FinFunctor& g, const FinFunctor& f) {
    FinFunctor h{f.src, g.tgt, {}, {}};
    h.obj_map.reserve(f.obj_map.size());
    h.arr_map.reserve(f.arr_map.size());
    for (ObjId x : f.obj_map) h.obj_map.push_back(g.obj_map[x]);
    for (ArrId a : f.arr_map) h.arr_map.push_back(g.arr_map[a]);
    return h;
}

namespace {

LawReport check_functor_row(const FinFunctor& f, ArrId a) {
    LawReport r;
    const FinCat& s = *f.src;
    const FinCat& t = *f.tgt;
    const ArrId fa = f.arr_map[a];
    if (t.dom(fa) != f.obj_map[s.dom(a)] || t.cod(fa) != f.obj_map[s.cod(a)])
        r.add("image of '" + s.arrow_name(a) + "' has wrong endpoints");
    else
        for (ArrId b : s.out(s.cod(a)))
            if (f.arr_map[s.compose(b, a)] != t.compose(f.arr_map[b], fa))
                r.add("composition not preserved at '" + s.arrow_name(b) + " . " + s.arrow_name(a) + "'");
    return r;
}

}  // namespace

LawReport check_functor_serial(const FinFunctor& f) {
    LawReport r;
    const FinCat& s = *f.src;
    if (f.obj_map.size() != static_cast<std::size_t>(s.num_objects()) ||
        f.arr_map.size() != static_cast<std::size_t>(s.num_arrows())) {
        r.add("object/arrow map size mismatch");
        return r;
    }
    for (ObjId x = 0; x < s.num_objects(); ++x)
        if (f.arr_map[s.identity(x)] != f.tgt->identity(f.obj_map[x]))
            r.add("identity not preserved at '" + s.object_name(x) + "'");
    for (ArrId a = 0; a < s.num_arrows(); ++a) r.merge(check_functor_row(f, a));
    return r;
}

LawReport check_functor(const FinFunctor& f) {
    if (!parallel_enabled()) return check_functor_serial(f);
    LawReport r;
    const FinCat& s = *f.src;
    if (f.obj_map.size() != static_cast<std::size_t>(s.num_objects()) ||
        f.arr_map.size() != static_cast<std::size_t>(s.num_arrows())) {
        r.add("object/arrow map size mismatch");
        return r;
    }
    for (ObjId x = 0; x < s.num_objects(); ++x)
        if (f.arr_map[s.identity(x)] != f.tgt->identity(f.obj_map[x]))
            r.add("identity not preserved at '" + s.object_name(x) + "'");
    const int na = s.num_arrows();
    std::vector<LawReport> parts(na);
#pragma omp parallel for schedule(dynamic)
    for (int a = 0; a < na; ++a) parts[a] = check_functor_row(f, a);
    for (auto& p : parts) r.merge(p);
    return r;
}

LawReport check_nat(const NatTransf& n) {
    LawReport r;
    const FinCat& s = *n.src->src;
    const FinCat& t = *n.src->tgt;
    if (n.comp.size() != static_cast<std::size_t>(s.num_objects())) {
        r.add("component list size mismatch");
        return r;
    }
    for (ObjId x = 0; x < s.num_objects(); ++x)
        if (t.dom(n.comp[x]) != n.src->obj_map[x] || t.cod(n.comp[x]) != n.tgt->obj_map[x])
            r.add("component at '" + s.object_name(x) + "' has wrong endpoints");
    if (!r.ok()) return r;
    for (ArrId a = 0; a < s.num_arrows(); ++a)
        if (t.compose(n.comp[s.cod(a)], n.src->arr_map[a]) != t.compose(n.tgt->arr_map[a], n.comp[s.dom(a)]))
            r.add("naturality fails at '" + s.arrow_name(a) + "'");
    return r;
}

}  // namespace fibrak
