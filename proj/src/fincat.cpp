#include "fibrak/fincat.hpp"

#include <algorithm>

#include "fibrak/parallel.hpp"

namespace fibrak {

std::optional<ArrId> FinCat::inverse(ArrId f) const {
    const ObjId x = dom(f), y = cod(f);
    for (ArrId g : hom(y, x))
        if (compose(g, f) == identity(x) && compose(f, g) == identity(y)) return g;
    return std::nullopt;
}

bool FinCat::is_mono(ArrId f) const {
    const ObjId x = dom(f);
    for (ObjId z = 0; z < num_objects(); ++z) {
        const auto& hs = hom(z, x);
        for (std::size_t i = 0; i < hs.size(); ++i)
            for (std::size_t j = i + 1; j < hs.size(); ++j)
                if (compose(f, hs[i]) == compose(f, hs[j])) return false;
    }
    return true;
}

bool FinCat::is_epi(ArrId f) const {
    const ObjId y = cod(f);
    for (ObjId z = 0; z < num_objects(); ++z) {
        const auto& hs = hom(y, z);
        for (std::size_t i = 0; i < hs.size(); ++i)
            for (std::size_t j = i + 1; j < hs.size(); ++j)
                if (compose(hs[i], f) == compose(hs[j], f)) return false;
    }
    return true;
}

ObjId FinCat::find_object(const std::string& name) const {
    auto it = obj_by_name_.find(name);
    return it == obj_by_name_.end() ? kNoObj : it->second;
}

ArrId FinCat::find_arrow(const std::string& name) const {
    auto it = arr_by_name_.find(name);
    return it == arr_by_name_.end() ? kNoArr : it->second;
}

void FinCat::finish() {
    const int no = num_objects(), na = num_arrows();
    out_.assign(no, {});
    in_.assign(no, {});
    hom_.assign(static_cast<std::size_t>(no) * no, {});
    out_pos_.assign(na, 0);
    for (ArrId f = 0; f < na; ++f) {
        out_pos_[f] = static_cast<int>(out_[arrows_[f].dom].size());
        out_[arrows_[f].dom].push_back(f);
        in_[arrows_[f].cod].push_back(f);
        hom_[static_cast<std::size_t>(arrows_[f].dom) * no + arrows_[f].cod].push_back(f);
    }
    comp_row_.assign(na, 0);
    std::size_t total = 0;
    for (ArrId f = 0; f < na; ++f) {
        comp_row_[f] = total;
        total += out_[arrows_[f].cod].size();
    }
    comp_.assign(total, kNoArr);
}

namespace {
std::int64_t comp_key(ArrId f, ArrId g) {
    return (static_cast<std::int64_t>(f) << 32) | static_cast<std::uint32_t>(g);
}
}  // namespace

ObjId FinCatBuilder::object(const std::string& name) {
    if (cat_.obj_by_name_.count(name)) throw MalformedTable("duplicate object '" + name + "'");
    const ObjId x = static_cast<ObjId>(cat_.objects_.size());
    cat_.objects_.push_back(name);
    cat_.obj_by_name_[name] = x;
    return x;
}

ArrId FinCatBuilder::arrow(const std::string& name, ObjId dom, ObjId cod) {
    if (cat_.arr_by_name_.count(name)) throw MalformedTable("duplicate arrow '" + name + "'");
    if (dom < 0 || dom >= num_objects() || cod < 0 || cod >= num_objects())
        throw MalformedTable("arrow '" + name + "' has out-of-range endpoint");
    const ArrId f = static_cast<ArrId>(cat_.arrows_.size());
    cat_.arrows_.push_back({name, dom, cod});
    cat_.arr_by_name_[name] = f;
    return f;
}

ArrId FinCatBuilder::arrow(const std::string& name, const std::string& dom, const std::string& cod) {
    return arrow(name, object_id(dom), object_id(cod));
}

ObjId FinCatBuilder::object_id(const std::string& name) const {
    auto it = cat_.obj_by_name_.find(name);
    if (it == cat_.obj_by_name_.end()) throw MalformedTable("unknown object '" + name + "'");
    return it->second;
}

ArrId FinCatBuilder::arrow_id(const std::string& name) const {
    auto it = cat_.arr_by_name_.find(name);
    if (it == cat_.arr_by_name_.end()) throw MalformedTable("unknown arrow '" + name + "'");
    return it->second;
}

void FinCatBuilder::set_compose(ArrId g, ArrId f, ArrId h) {
    if (g < 0 || g >= num_arrows() || f < 0 || f >= num_arrows() || h < 0 || h >= num_arrows())
        throw MalformedTable("composition entry refers to an unknown arrow");
    if (cat_.arrows_[g].dom != cat_.arrows_[f].cod)
        throw MalformedTable("composition entry '" + cat_.arrows_[g].name + " . " + cat_.arrows_[f].name + "' is not composable");
    auto [it, inserted] = comp_.emplace(comp_key(f, g), h);
    if (!inserted && it->second != h)
        throw MalformedTable("conflicting composites for '" + cat_.arrows_[g].name + " . " + cat_.arrows_[f].name + "'");
}

void FinCatBuilder::set_compose(const std::string& g, const std::string& f, const std::string& h) {
    named_comp_.push_back({g, f, h});
}

CatPtr FinCatBuilder::build() {
    // Resolve identities: a declared endo-arrow named "id_<obj>", else append.
    cat_.identity_.assign(num_objects(), kNoArr);
    for (ObjId x = 0; x < num_objects(); ++x) {
        const std::string name = "id_" + cat_.objects_[x];
        auto it = cat_.arr_by_name_.find(name);
        if (it != cat_.arr_by_name_.end()) {
            if (cat_.arrows_[it->second].dom != x || cat_.arrows_[it->second].cod != x)
                throw MalformedTable("arrow '" + name + "' is not an endo-arrow of its object");
            cat_.identity_[x] = it->second;
        } else {
            cat_.identity_[x] = arrow(name, x, x);
        }
    }
    for (const auto& [g, f, h] : named_comp_) set_compose(arrow_id(g), arrow_id(f), arrow_id(h));
    named_comp_.clear();

    cat_.finish();
    const int na = num_arrows();
    for (ArrId f = 0; f < na; ++f) {
        for (ArrId g : cat_.out_[cat_.arrows_[f].cod]) {
            const std::size_t slot = cat_.comp_row_[f] + cat_.out_pos_[g];
            ArrId h;
            if (cat_.is_identity(g))
                h = f;
            else if (cat_.is_identity(f))
                h = g;
            else {
                auto it = comp_.find(comp_key(f, g));
                if (it == comp_.end())
                    throw MalformedTable("missing composite '" + cat_.arrows_[g].name + " . " + cat_.arrows_[f].name + "'");
                h = it->second;
            }
            cat_.comp_[slot] = h;
        }
    }
    // Declared identity composites that contradict the identity laws are
    // rejected here; use a non-identity arrow to model a broken table.
    for (const auto& [key, h] : comp_) {
        const ArrId f = static_cast<ArrId>(key >> 32), g = static_cast<ArrId>(key & 0xffffffff);
        const std::size_t slot = cat_.comp_row_[f] + cat_.out_pos_[g];
        if (cat_.comp_[slot] != h)
            throw MalformedTable("composite of '" + cat_.arrows_[g].name + " . " + cat_.arrows_[f].name + "' conflicts with identity law");
    }
    return std::make_shared<const FinCat>(std::move(cat_));
}

namespace {

LawReport check_arrow_row(const FinCat& c, ArrId f) {
    LawReport r;
    const ObjId x = c.dom(f), y = c.cod(f);
    if (!c.is_identity(c.identity(x)) || !c.is_identity(c.identity(y)))
        r.add("identity table broken at an endpoint of '" + c.arrow_name(f) + "'");
    for (ArrId g : c.out(y)) {
        const ArrId gf = c.compose(g, f);
        if (c.dom(gf) != x || c.cod(gf) != c.cod(g))
            r.add("composite '" + c.arrow_name(g) + " . " + c.arrow_name(f) + "' = '" + c.arrow_name(gf) + "' has wrong endpoints");
        // associativity: h . (g . f) == (h . g) . f for all h out of cod g
        for (ArrId h : c.out(c.cod(g)))
            if (c.compose(h, gf) != c.compose(c.compose(h, g), f))
                r.add("associativity fails at '" + c.arrow_name(h) + " . " + c.arrow_name(g) + " . " + c.arrow_name(f) + "'");
    }
    if (c.compose(c.identity(y), f) != f) r.add("left identity fails at '" + c.arrow_name(f) + "'");
    if (c.compose(f, c.identity(x)) != f) r.add("right identity fails at '" + c.arrow_name(f) + "'");
    return r;
}

}  // namespace

LawReport check_category_serial(const FinCat& c) {
    LawReport r;
    for (ArrId f = 0; f < c.num_arrows(); ++f) r.merge(check_arrow_row(c, f));
    return r;
}

LawReport check_category(const FinCat& c) {
    if (!parallel_enabled()) return check_category_serial(c);
    const int na = c.num_arrows();
    std::vector<LawReport> parts(na);
#pragma omp parallel for schedule(dynamic)
    for (int f = 0; f < na; ++f) parts[f] = check_arrow_row(c, f);
    LawReport r;
    for (auto& p : parts) r.merge(p);
    return r;
}

}  // namespace fibrak
