#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fibrak/errors.hpp"
#include "fibrak/report.hpp"

namespace fibrak {

using ObjId = std::int32_t;
using ArrId = std::int32_t;

inline constexpr ObjId kNoObj = -1;
inline constexpr ArrId kNoArr = -1;

class FinCat;
using CatPtr = std::shared_ptr<const FinCat>;

/// A finite category given by explicit object, arrow and composition tables.
///
/// Declaration order of objects and arrows is the canonical total order:
/// every search in the library returns the order-least witness, so equal
/// inputs always yield identical outputs.
///
/// Construction validates well-formedness only (ids resolve, composition is
/// total on composable pairs).  The category *laws* are checked separately by
/// check_category, so deliberately broken tables can be represented and
/// diagnosed.
class FinCat {
   public:
    struct Arrow {
        std::string name;
        ObjId dom;
        ObjId cod;
    };

    int num_objects() const { return static_cast<int>(objects_.size()); }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }

    const std::string& object_name(ObjId x) const { return objects_[x]; }
    const std::string& arrow_name(ArrId f) const { return arrows_[f].name; }
    ObjId dom(ArrId f) const { return arrows_[f].dom; }
    ObjId cod(ArrId f) const { return arrows_[f].cod; }

    ArrId identity(ObjId x) const { return identity_[x]; }
    bool is_identity(ArrId f) const { return identity_[arrows_[f].dom] == f && arrows_[f].dom == arrows_[f].cod; }

    bool composable(ArrId g, ArrId f) const { return arrows_[g].dom == arrows_[f].cod; }

    /// g after f.  Precondition: composable(g, f).
    ArrId compose(ArrId g, ArrId f) const { return comp_[comp_row_[f] + out_pos_[g]]; }

    /// All arrows x -> y, in id order.
    const std::vector<ArrId>& hom(ObjId x, ObjId y) const { return hom_[x * num_objects() + y]; }
    const std::vector<ArrId>& out(ObjId x) const { return out_[x]; }
    const std::vector<ArrId>& in(ObjId x) const { return in_[x]; }

    /// Two-sided inverse, if any.
    std::optional<ArrId> inverse(ArrId f) const;
    bool is_iso(ArrId f) const { return inverse(f).has_value(); }
    bool is_mono(ArrId f) const;
    bool is_epi(ArrId f) const;

    /// Lookup by name; kNoObj / kNoArr when absent.
    ObjId find_object(const std::string& name) const;
    ArrId find_arrow(const std::string& name) const;

   private:
    friend class FinCatBuilder;
    friend LawReport check_category(const FinCat&);
    friend LawReport check_category_serial(const FinCat&);

    FinCat() = default;
    void finish();  // builds adjacency / hom / composition indices

    std::vector<std::string> objects_;
    std::vector<Arrow> arrows_;
    std::vector<ArrId> identity_;         // per object
    std::vector<std::vector<ArrId>> out_;  // arrows out of each object
    std::vector<std::vector<ArrId>> in_;
    std::vector<std::vector<ArrId>> hom_;  // dense num_objects^2 table
    std::vector<int> out_pos_;             // position of each arrow within out_[dom]
    std::vector<std::size_t> comp_row_;    // per arrow f: start of its composition row
    std::vector<ArrId> comp_;              // comp_[comp_row_[f] + out_pos_[g]] = g . f
    std::unordered_map<std::string, ObjId> obj_by_name_;
    std::unordered_map<std::string, ArrId> arr_by_name_;
};

/// Incremental constructor for FinCat tables.
///
/// The identity of object x is the declared endo-arrow named "id_<x>" if one
/// exists (so generators can place identities at their canonical position in
/// the arrow order); otherwise one is appended at build time.  Composites
/// with identities are filled in automatically, every other composable pair
/// must be given via set_compose.
class FinCatBuilder {
   public:
    ObjId object(const std::string& name);
    ArrId arrow(const std::string& name, ObjId dom, ObjId cod);
    ArrId arrow(const std::string& name, const std::string& dom, const std::string& cod);

    /// Record g . f = h (g after f).  The by-name overload may reference
    /// identities that only come into existence at build time.
    void set_compose(ArrId g, ArrId f, ArrId h);
    void set_compose(const std::string& g, const std::string& f, const std::string& h);

    ObjId object_id(const std::string& name) const;
    ArrId arrow_id(const std::string& name) const;
    int num_objects() const { return static_cast<int>(cat_.objects_.size()); }
    int num_arrows() const { return static_cast<int>(cat_.arrows_.size()); }
    ObjId dom(ArrId f) const { return cat_.arrows_[f].dom; }
    ObjId cod(ArrId f) const { return cat_.arrows_[f].cod; }

    /// Validates well-formedness and freezes the tables.
    /// Throws MalformedTable if a composable pair has no composite.
    CatPtr build();

   private:
    FinCat cat_;
    // (f, g) with dom g == cod f, keyed f * stride + g -> h
    std::unordered_map<std::int64_t, ArrId> comp_;
    std::vector<std::array<std::string, 3>> named_comp_;  // {g, f, h}
};

/// Exhaustively checks identity laws, associativity, and endpoint coherence
/// of composites.  The report lists every violated law instance.
LawReport check_category(const FinCat& c);

/// Single-threaded reference implementation of check_category.
LawReport check_category_serial(const FinCat& c);

}  // namespace fibrak
