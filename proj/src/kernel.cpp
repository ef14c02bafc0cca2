#include "fibrak/kernel.hpp"

#include "fibrak/parallel.hpp"

namespace fibrak {

namespace {

// Exactly one mediating arrow v -> apex for the competing cone (q1, q2)?
bool unique_mediator(const FinCat& c, const PullbackCone& cone, ObjId v, ArrId q1, ArrId q2, Budget& budget) {
    int n = 0;
    for (ArrId m : c.hom(v, cone.apex)) {
        budget.charge();
        if (c.compose(cone.p1, m) == q1 && c.compose(cone.p2, m) == q2 && ++n > 1) return false;
    }
    return n == 1;
}

// Checks every competing cone with the given vertex.
bool check_vertex(const FinCat& c, const PullbackCone& cone, ObjId v, Budget& budget) {
    const ObjId x = c.dom(cone.f), y = c.dom(cone.g);
    for (ArrId q1 : c.hom(v, x))
        for (ArrId q2 : c.hom(v, y)) {
            budget.charge();
            if (c.compose(cone.f, q1) != c.compose(cone.g, q2)) continue;
            if (!unique_mediator(c, cone, v, q1, q2, budget)) return false;
        }
    return true;
}

}  // namespace

bool is_pullback_serial(const FinCat& c, const PullbackCone& cone, Budget& budget) {
    if (c.compose(cone.f, cone.p1) != c.compose(cone.g, cone.p2)) return false;
    for (ObjId v = 0; v < c.num_objects(); ++v)
        if (!check_vertex(c, cone, v, budget)) return false;
    return true;
}

bool is_pullback(const FinCat& c, const PullbackCone& cone, Budget& budget) {
    if (!parallel_enabled()) return is_pullback_serial(c, cone, budget);
    if (c.compose(cone.f, cone.p1) != c.compose(cone.g, cone.p2)) return false;
    const int no = c.num_objects();
    bool ok = true;
#pragma omp parallel for schedule(dynamic) reduction(&& : ok)
    for (int v = 0; v < no; ++v) {
        bool part = true;
        try {
            part = check_vertex(c, cone, v, budget);
        } catch (const BudgetExceeded&) {
            part = false;  // rethrown below from the serial recheck
        }
        ok = ok && part;
    }
    if (!ok && budget.used() > budget.cap())
        throw BudgetExceeded("universal-property search exceeded budget of " + std::to_string(budget.cap()) + " candidates");
    return ok;
}

std::optional<PullbackCone> find_pullback(const FinCat& c, ArrId f, ArrId g, Budget& budget) {
    if (c.cod(f) != c.cod(g))
        throw NotACospan("'" + c.arrow_name(f) + "' and '" + c.arrow_name(g) + "' have different codomains");
    const ObjId x = c.dom(f), y = c.dom(g);
    for (ObjId w = 0; w < c.num_objects(); ++w)
        for (ArrId p1 : c.hom(w, x))
            for (ArrId p2 : c.hom(w, y)) {
                budget.charge();
                if (c.compose(f, p1) != c.compose(g, p2)) continue;
                PullbackCone cone{f, g, w, p1, p2};
                if (is_pullback(c, cone, budget)) return cone;
            }
    return std::nullopt;
}

std::optional<ObjId> terminal_object(const FinCat& c) {
    for (ObjId t = 0; t < c.num_objects(); ++t) {
        bool ok = true;
        for (ObjId x = 0; x < c.num_objects() && ok; ++x) ok = c.hom(x, t).size() == 1;
        if (ok) return t;
    }
    return std::nullopt;
}

std::optional<ArrId> find_iso(const FinCat& c, ObjId x, ObjId y) {
    if (x == y) return c.identity(x);
    for (ArrId f : c.hom(x, y))
        if (c.is_iso(f)) return f;
    return std::nullopt;
}

}  // namespace fibrak
