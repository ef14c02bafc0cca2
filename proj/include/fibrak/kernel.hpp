#pragma once

#include <optional>

#include "fibrak/budget.hpp"
#include "fibrak/fincat.hpp"

namespace fibrak {

/// A commuting square over the cospan (f : X -> Z, g : Y -> Z):
/// p1 : apex -> X, p2 : apex -> Y with f . p1 == g . p2.
struct PullbackCone {
    ArrId f, g;
    ObjId apex;
    ArrId p1, p2;
};

/// Order-least pullback of the cospan (f, g): candidates are enumerated
/// lexicographically by (apex, p1, p2) and the first cone satisfying the
/// universal property (verified exhaustively) is returned.
/// Throws NotACospan if cod(f) != cod(g); nullopt if no pullback exists.
std::optional<PullbackCone> find_pullback(const FinCat& c, ArrId f, ArrId g, Budget& budget);

/// Exhaustive universal-property verdict for a candidate cone.
bool is_pullback(const FinCat& c, const PullbackCone& cone, Budget& budget);
bool is_pullback_serial(const FinCat& c, const PullbackCone& cone, Budget& budget);

/// Order-least terminal object, if any.
std::optional<ObjId> terminal_object(const FinCat& c);

/// Order-least isomorphism x -> y; identities are returned first when x == y.
std::optional<ArrId> find_iso(const FinCat& c, ObjId x, ObjId y);

}  // namespace fibrak
