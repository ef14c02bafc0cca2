#include "fibrak/corpus.hpp"

#include <cmath>
#include <cstdint>

#include "fibrak/kernel.hpp"

namespace fibrak {

namespace {

struct FinSetData {
    CatPtr cat;
    std::vector<std::vector<int>> digits;  // per arrow: images, empty for source 0
};

FinSetData finset_with_digits(int n, int cap) {
    if (n > cap) throw CapExceeded("finite-set skeleton capped at " + std::to_string(cap));
    FinCatBuilder bld;
    for (int k = 0; k <= n; ++k) bld.object(std::to_string(k));

    FinSetData data;
    // arr[m][k][lex index] = arrow id; lex index reads the image string as a
    // base-k numeral, most significant digit first
    std::vector<std::vector<std::vector<ArrId>>> arr(n + 1, std::vector<std::vector<ArrId>>(n + 1));
    auto fn_count = [](int m, int k) {
        long c = 1;
        for (int i = 0; i < m; ++i) c *= k;
        return c;
    };
    for (int m = 0; m <= n; ++m)
        for (int k = 0; k <= n; ++k) {
            const long cnt = fn_count(m, k);
            for (long idx = 0; idx < cnt; ++idx) {
                std::vector<int> d(m);
                long rest = idx;
                for (int i = m - 1; i >= 0; --i) {
                    d[i] = static_cast<int>(rest % k);
                    rest /= k;
                }
                bool ident = m == k;
                for (int i = 0; ident && i < m; ++i) ident = d[i] == i;
                std::string name;
                if (ident) {
                    name = "id_" + std::to_string(m);
                } else {
                    name = "c" + std::to_string(m) + "_" + std::to_string(k) + "_";
                    for (int v : d) name += static_cast<char>('0' + v);
                }
                const ArrId id = bld.arrow(name, m, k);
                arr[m][k].push_back(id);
                if (static_cast<int>(data.digits.size()) <= id) data.digits.resize(id + 1);
                data.digits[id] = std::move(d);
            }
        }
    for (int m = 0; m <= n; ++m)
        for (int k = 0; k <= n; ++k)
            for (ArrId f : arr[m][k])
                for (int l = 0; l <= n; ++l)
                    for (ArrId g : arr[k][l]) {
                        long idx = 0;
                        for (int i = 0; i < m; ++i) idx = idx * l + data.digits[g][data.digits[f][i]];
                        bld.set_compose(g, f, arr[m][l][idx]);
                    }
    data.cat = bld.build();
    return data;
}

std::string bracketed(const std::vector<std::string>& parts) {
    std::string s = "[";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i];
    }
    return s + "]";
}

}  // namespace

CatPtr finset_skeleton(int n, int cap) { return finset_with_digits(n, cap).cat; }

CatPtr interval_cat() {
    FinCatBuilder b;
    b.object("a");
    b.object("b");
    b.arrow("f", "a", "b");
    return b.build();
}

CatPtr terminal_cat() {
    FinCatBuilder b;
    b.object("*");
    return b.build();
}

CatPtr indiscrete_pair() {
    FinCatBuilder b;
    b.object("x");
    b.object("y");
    b.arrow("s", "x", "y");
    b.arrow("t", "y", "x");
    b.set_compose("t", "s", "id_x");
    b.set_compose("s", "t", "id_y");
    return b.build();
}

ClovenFibration identity_fibration(CatPtr b) { return ClovenFibration::make(identity_functor(std::move(b))); }

CodFibration codomain_fibration(CatPtr base, const DisplayClass& F) {
    const FinCat& b = *base;
    ClosureReport closure = verify_display_class(F);
    if (!closure.pullback_closed)
        throw PreconditionFailed("codomain fibration needs a pullback-closed class");

    CodFibration r;
    FinCatBuilder bld;
    std::vector<std::string> names;
    std::unordered_map<ArrId, ObjId> obj_of;  // member -> total object
    for (ArrId g : F.members()) {
        names.push_back(b.arrow_name(g));
        obj_of[g] = bld.object(names.back());
        r.arrow_of_obj.push_back(g);
    }

    const int n = static_cast<int>(r.arrow_of_obj.size());
    std::map<std::tuple<ObjId, ArrId, ArrId>, ArrId> arr_of;  // (src, s, t) -> total arrow
    for (ObjId src = 0; src < n; ++src)
        for (ObjId dst = 0; dst < n; ++dst) {
            const ArrId g = r.arrow_of_obj[src], h = r.arrow_of_obj[dst];
            for (ArrId t : b.hom(b.cod(g), b.cod(h)))
                for (ArrId s : b.hom(b.dom(g), b.dom(h))) {
                    if (b.compose(h, s) != b.compose(t, g)) continue;
                    const bool ident = src == dst && b.is_identity(s) && b.is_identity(t);
                    const std::string name = ident ? "id_" + names[src]
                                                   : names[src] + ">" + names[dst] + "[" + b.arrow_name(s) +
                                                         ";" + b.arrow_name(t) + "]";
                    const ArrId id = bld.arrow(name, src, dst);
                    r.legs_of_arr.push_back({s, t});
                    arr_of[{src, s, t}] = id;
                }
        }
    const int m = static_cast<int>(r.legs_of_arr.size());
    for (ArrId x = 0; x < m; ++x)
        for (ArrId y = 0; y < m; ++y) {
            if (bld.dom(y) != bld.cod(x)) continue;
            bld.set_compose(y, x,
                            arr_of.at({bld.dom(x), b.compose(r.legs_of_arr[y].first, r.legs_of_arr[x].first),
                                       b.compose(r.legs_of_arr[y].second, r.legs_of_arr[x].second)}));
        }
    CatPtr total = bld.build();

    FinFunctor proj;
    proj.src = total;
    proj.tgt = base;
    for (ObjId x = 0; x < n; ++x) proj.obj_map.push_back(b.cod(r.arrow_of_obj[x]));
    for (ArrId f = 0; f < m; ++f) proj.arr_map.push_back(r.legs_of_arr[f].second);

    std::unordered_map<std::int64_t, ArrId> cleavage;
    for (ArrId u = 0; u < b.num_arrows(); ++u)
        for (ObjId y = 0; y < n; ++y) {
            const ArrId h = r.arrow_of_obj[y];
            if (b.cod(h) != b.cod(u)) continue;
            const PullbackCone& pb = F.chosen_pullback(h, u);
            cleavage[ClovenFibration::cleavage_key(u, y)] = arr_of.at({obj_of.at(pb.p2), pb.p1, u});
        }
    r.fib = ClovenFibration::make(std::move(proj), cleavage);
    return r;
}

SubFibration subobject_fibration(CatPtr base) {
    const FinCat& b = *base;
    Budget budget;

    // iso classes of monos, one order-least representative per class
    std::vector<ArrId> monos;
    for (ArrId f = 0; f < b.num_arrows(); ++f)
        if (b.is_mono(f)) monos.push_back(f);
    std::unordered_map<ArrId, ArrId> rep_of;
    for (ArrId m : monos) {
        ArrId rep = m;
        for (ArrId m2 : monos) {
            if (m2 >= rep || b.cod(m2) != b.cod(m)) continue;
            for (ArrId i : b.hom(b.dom(m), b.dom(m2)))
                if (b.is_iso(i) && b.compose(m2, i) == m) {
                    rep = m2;
                    break;
                }
        }
        rep_of[m] = rep;
    }

    SubFibration r;
    FinCatBuilder bld;
    std::vector<std::string> names;
    std::unordered_map<ArrId, ObjId> obj_of;
    for (ArrId m : monos) {
        if (rep_of.at(m) != m) continue;
        names.push_back("<" + b.arrow_name(m) + ">");
        obj_of[m] = bld.object(names.back());
        r.mono_of_obj.push_back(m);
    }

    const int n = static_cast<int>(r.mono_of_obj.size());
    std::vector<ArrId> base_of_arr;  // total arrow -> base arrow u
    std::map<std::pair<ObjId, ArrId>, ArrId> arr_of;  // (src, u) -> total arrow (dst determined by factoring? no)
    std::map<std::tuple<ObjId, ObjId, ArrId>, ArrId> arr_key;
    for (ObjId src = 0; src < n; ++src)
        for (ObjId dst = 0; dst < n; ++dst) {
            const ArrId m = r.mono_of_obj[src], k = r.mono_of_obj[dst];
            for (ArrId u : b.hom(b.cod(m), b.cod(k))) {
                bool factors = false;
                for (ArrId s : b.hom(b.dom(m), b.dom(k)))
                    if (b.compose(k, s) == b.compose(u, m)) {
                        factors = true;
                        break;
                    }
                if (!factors) continue;
                const bool ident = src == dst && b.is_identity(u);
                const std::string name =
                    ident ? "id_" + names[src]
                          : b.arrow_name(u) + "@" + names[src] + ">" + names[dst];
                const ArrId id = bld.arrow(name, src, dst);
                base_of_arr.push_back(u);
                arr_key[{src, dst, u}] = id;
            }
        }
    const int ma = static_cast<int>(base_of_arr.size());
    for (ArrId x = 0; x < ma; ++x)
        for (ArrId y = 0; y < ma; ++y) {
            if (bld.dom(y) != bld.cod(x)) continue;
            bld.set_compose(y, x, arr_key.at({bld.dom(x), bld.cod(y), b.compose(base_of_arr[y], base_of_arr[x])}));
        }
    CatPtr total = bld.build();

    FinFunctor proj;
    proj.src = total;
    proj.tgt = base;
    for (ObjId x = 0; x < n; ++x) proj.obj_map.push_back(b.cod(r.mono_of_obj[x]));
    proj.arr_map = base_of_arr;

    std::unordered_map<std::int64_t, ArrId> cleavage;
    for (ArrId u = 0; u < b.num_arrows(); ++u)
        for (ObjId y = 0; y < n; ++y) {
            const ArrId k = r.mono_of_obj[y];
            if (b.cod(k) != b.cod(u)) continue;
            auto pb = find_pullback(b, k, u, budget);
            if (!pb) throw PreconditionFailed("base lacks a pullback of a mono");
            cleavage[ClovenFibration::cleavage_key(u, y)] =
                arr_key.at({obj_of.at(rep_of.at(pb->p2)), y, u});
        }
    r.fib = ClovenFibration::make(std::move(proj), cleavage);
    return r;
}

FamFibration family_fibration(int index_cap, CatPtr values) {
    FinSetData idx = finset_with_digits(index_cap, 2);
    const FinCat& b = *idx.cat;
    const FinCat& v = *values;

    FamFibration r;
    FinCatBuilder bld;
    std::vector<std::string> names;
    std::map<std::vector<ObjId>, ObjId> obj_of;  // value tuple (with length = base object) -> id
    std::vector<ObjId> base_of_obj;
    for (int nn = 0; nn <= index_cap; ++nn) {
        std::vector<ObjId> tup(nn, 0);
        while (true) {
            std::vector<std::string> parts;
            for (ObjId o : tup) parts.push_back(v.object_name(o));
            names.push_back(bracketed(parts));
            obj_of[tup] = bld.object(names.back());
            r.tuple_of_obj.push_back(tup);
            base_of_obj.push_back(nn);
            int i = nn - 1;
            while (i >= 0 && tup[i] == v.num_objects() - 1) tup[i--] = 0;
            if (i < 0) break;
            ++tup[i];
        }
    }

    const int n = static_cast<int>(r.tuple_of_obj.size());
    std::vector<ArrId> base_of_arr;
    std::vector<std::vector<ArrId>> comps_of_arr;
    std::map<std::pair<std::pair<ObjId, ObjId>, std::pair<ArrId, std::vector<ArrId>>>, ArrId> arr_of;
    for (ObjId src = 0; src < n; ++src)
        for (ObjId dst = 0; dst < n; ++dst) {
            const auto& A = r.tuple_of_obj[src];
            const auto& B = r.tuple_of_obj[dst];
            for (ArrId u : b.hom(base_of_obj[src], base_of_obj[dst])) {
                const auto& du = idx.digits[u];
                // enumerate all component tuples c_i : A_i -> B_{u(i)}
                std::vector<const std::vector<ArrId>*> homs;
                bool any = true;
                for (std::size_t i = 0; i < A.size(); ++i) {
                    homs.push_back(&v.hom(A[i], B[du[i]]));
                    if (homs.back()->empty()) any = false;
                }
                if (!any) continue;
                std::vector<std::size_t> pick(A.size(), 0);
                while (true) {
                    std::vector<ArrId> comps;
                    bool ident = src == dst && b.is_identity(u);
                    std::string cpart;
                    for (std::size_t i = 0; i < A.size(); ++i) {
                        const ArrId c = (*homs[i])[pick[i]];
                        comps.push_back(c);
                        if (!v.is_identity(c)) ident = false;
                        if (i) cpart += ",";
                        cpart += v.arrow_name(c);
                    }
                    const std::string name = ident ? "id_" + names[src]
                                                   : b.arrow_name(u) + "(" + cpart + ")" + names[src] +
                                                         ">" + names[dst];
                    const ArrId id = bld.arrow(name, src, dst);
                    base_of_arr.push_back(u);
                    comps_of_arr.push_back(comps);
                    arr_of[{{src, dst}, {u, comps}}] = id;
                    int i = static_cast<int>(A.size()) - 1;
                    while (i >= 0 && pick[i] + 1 == homs[i]->size()) pick[i--] = 0;
                    if (i < 0) break;
                    ++pick[i];
                }
            }
        }
    const int m = static_cast<int>(base_of_arr.size());
    for (ArrId x = 0; x < m; ++x)
        for (ArrId y = 0; y < m; ++y) {
            if (bld.dom(y) != bld.cod(x)) continue;
            const auto& du = idx.digits[base_of_arr[x]];
            std::vector<ArrId> comps;
            for (std::size_t i = 0; i < comps_of_arr[x].size(); ++i)
                comps.push_back(v.compose(comps_of_arr[y][du[i]], comps_of_arr[x][i]));
            bld.set_compose(y, x,
                            arr_of.at({{bld.dom(x), bld.cod(y)},
                                       {b.compose(base_of_arr[y], base_of_arr[x]), comps}}));
        }
    CatPtr total = bld.build();

    FinFunctor proj;
    proj.src = total;
    proj.tgt = idx.cat;
    proj.obj_map = base_of_obj;
    proj.arr_map = base_of_arr;

    std::unordered_map<std::int64_t, ArrId> cleavage;
    for (ArrId u = 0; u < b.num_arrows(); ++u) {
        const auto& du = idx.digits[u];
        for (ObjId y = 0; y < n; ++y) {
            if (base_of_obj[y] != b.cod(u)) continue;
            const auto& B = r.tuple_of_obj[y];
            std::vector<ObjId> A;
            std::vector<ArrId> comps;
            for (int i : du) {
                A.push_back(B[i]);
                comps.push_back(v.identity(B[i]));
            }
            cleavage[ClovenFibration::cleavage_key(u, y)] =
                arr_of.at({{obj_of.at(A), y}, {u, comps}});
        }
    }
    r.fib = ClovenFibration::make(std::move(proj), cleavage);
    return r;
}

std::vector<ObjId> indecomposables(const FinCat& c) {
    // initial object: unique arrow to everything
    ObjId initial = kNoObj;
    for (ObjId x = 0; x < c.num_objects() && initial == kNoObj; ++x) {
        bool ok = true;
        for (ObjId y = 0; y < c.num_objects(); ++y) ok = ok && c.hom(x, y).size() == 1;
        if (ok) initial = x;
    }
    if (initial == kNoObj) throw PreconditionFailed("no initial object");

    struct Coprod {
        ObjId sum;
        ArrId i1, i2;
    };
    auto coproduct = [&](ObjId y1, ObjId y2) -> std::optional<Coprod> {
        for (ObjId s = 0; s < c.num_objects(); ++s)
            for (ArrId i1 : c.hom(y1, s))
                for (ArrId i2 : c.hom(y2, s)) {
                    bool universal = true;
                    for (ObjId z = 0; z < c.num_objects() && universal; ++z)
                        for (ArrId f1 : c.hom(y1, z)) {
                            if (!universal) break;
                            for (ArrId f2 : c.hom(y2, z)) {
                                int cnt = 0;
                                for (ArrId m : c.hom(s, z))
                                    if (c.compose(m, i1) == f1 && c.compose(m, i2) == f2) ++cnt;
                                if (cnt != 1) {
                                    universal = false;
                                    break;
                                }
                            }
                        }
                    if (universal) return Coprod{s, i1, i2};
                }
        return std::nullopt;
    };

    // Finite truncations typically lack the largest sums; test factorization
    // against every binary coproduct the category does realize.
    std::vector<Coprod> sums;
    for (ObjId y1 = 0; y1 < c.num_objects(); ++y1)
        for (ObjId y2 = 0; y2 < c.num_objects(); ++y2)
            if (auto s = coproduct(y1, y2)) sums.push_back(*s);
    if (sums.empty()) throw PreconditionFailed("no binary coproducts");

    std::vector<ObjId> out;
    for (ObjId x = 0; x < c.num_objects(); ++x) {
        if (!c.hom(x, initial).empty()) continue;
        bool indec = true;
        for (const Coprod& s : sums) {
            for (ArrId h : c.hom(x, s.sum)) {
                int cnt = 0;
                for (ArrId w : c.hom(x, c.dom(s.i1)))
                    if (c.compose(s.i1, w) == h) ++cnt;
                for (ArrId w : c.hom(x, c.dom(s.i2)))
                    if (c.compose(s.i2, w) == h) ++cnt;
                if (cnt != 1) {
                    indec = false;
                    break;
                }
            }
            if (!indec) break;
        }
        if (indec) out.push_back(x);
    }
    return out;
}

PolyFibre polynomial_fibre(CatPtr b, const DisplayClass& F, Budget& budget) {
    PolyFibre pf;
    pf.cod = codomain_fibration(b, F);
    pf.dial = dialectica(pf.cod.fib, F, budget);
    auto one = terminal_object(*b);
    if (!one) throw PreconditionFailed("base has no terminal object");
    pf.fibre = fibre(pf.dial.fib(), *one);
    return pf;
}

long evaluate_polynomial(const PolyFibre& pf, ObjId fibre_obj, int x_size) {
    const FinCat& b = pf.cod.fib.base();
    const ObjId total = pf.fibre.obj_in_ambient[fibre_obj];
    const SigmaObject& outer = pf.dial.sigma.objects[total];
    const SigmaObject& inner = pf.dial.pi.sigma.objects[outer.alpha];
    const ArrId h = inner.g;                                  // positions display map C ->> A
    const ArrId al = pf.cod.arrow_of_obj[inner.alpha];        // directions arrow E -> C
    const ArrId comp = b.compose(h, al);                      // E -> A
    const ObjId one = *terminal_object(b);

    long result = 0;
    // points of A lying over the chosen positions object, weighted through g
    for (ArrId x : b.hom(one, b.dom(outer.g))) {
        long fiber = 0;
        for (ArrId w : b.hom(one, b.dom(comp)))
            if (b.compose(comp, w) == x) ++fiber;
        long pw = 1;
        for (long i = 0; i < fiber; ++i) pw *= x_size;
        result += pw;
    }
    return result;
}

namespace {

// The pointed-fibre instance: over the walking arrow, the fibre over b is a
// pointed object (z with a point o -> z), the fibre over a is terminal.
ClovenFibration pointed_input() {
    CatPtr base = interval_cat();
    FinCatBuilder t;
    t.object("w");
    t.object("o");
    t.object("z");
    t.arrow("bang", "z", "o");
    t.arrow("point", "o", "z");
    t.arrow("idem", "z", "z");
    t.arrow("lo", "w", "o");
    t.arrow("lz", "w", "z");
    t.set_compose("bang", "point", "id_o");
    t.set_compose("point", "bang", "idem");
    t.set_compose("idem", "idem", "idem");
    t.set_compose("idem", "point", "point");
    t.set_compose("bang", "idem", "bang");
    t.set_compose("bang", "lz", "lo");
    t.set_compose("point", "lo", "lz");
    t.set_compose("idem", "lz", "lz");
    CatPtr total = t.build();

    FinFunctor proj;
    proj.src = total;
    proj.tgt = base;
    const ObjId a = base->find_object("a"), bb = base->find_object("b");
    const ArrId f = base->find_arrow("f");
    proj.obj_map.assign(total->num_objects(), bb);
    proj.obj_map[total->find_object("w")] = a;
    proj.arr_map.assign(total->num_arrows(), kNoArr);
    for (ArrId g = 0; g < total->num_arrows(); ++g) {
        const ObjId d = proj.obj_map[total->dom(g)], c = proj.obj_map[total->cod(g)];
        proj.arr_map[g] = d == c ? base->identity(d) : f;
    }
    std::unordered_map<std::int64_t, ArrId> cleavage;
    cleavage[ClovenFibration::cleavage_key(f, total->find_object("o"))] = total->find_arrow("lo");
    cleavage[ClovenFibration::cleavage_key(f, total->find_object("z"))] = total->find_arrow("lz");
    return ClovenFibration::make(std::move(proj), cleavage);
}

}  // namespace

const std::vector<std::string>& corpus_names() {
    static const std::vector<std::string> names = {
        "terminal-identity",  "interval-identity", "indiscrete-identity", "finset1-identity",
        "finset-identity-allmaps", "fam-finset2",  "interval-codomain",   "subobject-finset2",
        "dial-of-identity",   "dial-of-codomain",  "pointed-completion",
    };
    return names;
}

CorpusEntry make_corpus_entry(const std::string& name) {
    Budget budget;
    auto expected = [](bool eps, bool tau, bool sk, bool gd) {
        return std::map<std::string, bool>{{"is_hilbert_epsilon", eps},
                                           {"is_hilbert_tau", tau},
                                           {"is_skolem", sk},
                                           {"is_goedel", gd}};
    };
    if (name == "terminal-identity") {
        CatPtr b = terminal_cat();
        return {name, identity_fibration(b), DisplayClass::all_arrows(b), expected(true, true, true, true)};
    }
    if (name == "interval-identity") {
        CatPtr b = interval_cat();
        return {name, identity_fibration(b), DisplayClass::identities(b), expected(true, true, true, true)};
    }
    if (name == "indiscrete-identity") {
        CatPtr b = indiscrete_pair();
        return {name, identity_fibration(b), DisplayClass::all_arrows(b), expected(true, true, true, true)};
    }
    if (name == "finset1-identity") {
        CatPtr b = finset_skeleton(1);
        return {name, identity_fibration(b), DisplayClass::all_arrows(b), expected(false, false, false, false)};
    }
    if (name == "finset-identity-allmaps") {
        CatPtr b = finset_skeleton(2);
        return {name, identity_fibration(b), DisplayClass::all_arrows(b), expected(false, false, false, false)};
    }
    if (name == "fam-finset2") {
        auto fam = family_fibration(2, finset_skeleton(2));
        DisplayClass f = DisplayClass::all_arrows(fam.fib.base_ptr());
        return {name, fam.fib, f, expected(false, false, false, false)};
    }
    if (name == "interval-codomain") {
        CatPtr b = interval_cat();
        DisplayClass f = DisplayClass::all_arrows(b);
        return {name, codomain_fibration(b, f).fib, f, expected(false, false, true, true)};
    }
    if (name == "subobject-finset2") {
        CatPtr b = finset_skeleton(2);
        DisplayClass f = DisplayClass::monos(b);
        return {name, subobject_fibration(b).fib, f, expected(false, false, true, true)};
    }
    if (name == "dial-of-identity") {
        CatPtr b = interval_cat();
        DisplayClass f = DisplayClass::all_arrows(b);
        return {name, dialectica(identity_fibration(b), f, budget).fib(), f,
                expected(false, false, true, true)};
    }
    if (name == "dial-of-codomain") {
        CatPtr b = interval_cat();
        DisplayClass f = DisplayClass::all_arrows(b);
        return {name, dialectica(codomain_fibration(b, f).fib, f, budget).fib(), f,
                expected(false, false, true, true)};
    }
    if (name == "pointed-completion") {
        CatPtr b = interval_cat();
        DisplayClass f = DisplayClass::all_arrows(b);
        return {name, sigma_completion(pointed_input(), f, budget).fib, f,
                expected(false, false, true, false)};
    }
    throw PreconditionFailed("unknown corpus entry '" + name + "'");
}

}  // namespace fibrak
