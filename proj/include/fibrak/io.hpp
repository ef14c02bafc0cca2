#pragma once

#include <optional>
#include <string>

#include "fibrak/completion.hpp"
#include "fibrak/display.hpp"
#include "fibrak/fibration.hpp"

namespace fibrak {

/// Parses the line-oriented category format: sections OBJECTS (one name per
/// line), ARROWS (`name : src -> tgt`), COMPOSE (`g . f = h`).  Identities
/// are implicit, auto-named `id_<obj>`, and may also be declared explicitly
/// under that name to pin their position in the arrow order.  `#` starts a
/// comment.  Throws ParseError with the offending line number.
CatPtr parse_fincat(const std::string& text);
CatPtr load_fincat(const std::string& path);

/// Deterministic rendering; parses back to an identical category.
std::string print_fincat(const FinCat& c);

/// A parsed fibration file: the fibration plus the display class when the
/// file carries a DISPLAY section.
struct FibDoc {
    ClovenFibration fib;
    std::optional<DisplayClass> display;
};

/// Parses the fibration format: lines `BASE <path>` and `TOTAL <path>`
/// (resolved relative to `dir`), a PROJ section of assignments `X |-> I` and
/// `f |-> u`, an optional CLEAVAGE section of `(u, Y) |-> f` lines, and an
/// optional DISPLAY section listing member base-arrow names.  Identities may
/// be left unassigned; omitted cleavage entries are searched.
FibDoc parse_fibration(const std::string& text, const std::string& dir);
FibDoc load_fibration(const std::string& path);

/// Renders a fibration file referencing the given category paths.
std::string print_fibration(const ClovenFibration& p, const DisplayClass* display,
                            const std::string& base_path, const std::string& total_path);

/// Writes `<path>` plus sibling `<stem>.base.fcat` and `<stem>.total.fcat`.
void write_fibration(const std::string& path, const ClovenFibration& p, const DisplayClass* display);

/// DOT digraph of a bare category: deterministic node order, identity loops
/// included.
std::string export_dot(const FinCat& c);

/// DOT digraph of the total category of a fibration: vertical arrows dashed,
/// cleavage (cartesian) entries bold; when a display class is supplied its
/// members, drawn from the base, appear double-headed in a second cluster.
std::string export_dot(const ClovenFibration& p, const DisplayClass* display);

/// One verdict line of a report document.
struct ReportItem {
    std::string property;
    bool verdict = false;
    std::string witness;  // witness or counterexample, may be empty
};

struct ReportDoc {
    std::vector<ReportItem> items;

    bool all_ok() const;
    void add(std::string property, bool verdict, std::string witness = "");
    /// Human-readable rendering.
    std::string text() const;
    /// One `PROPERTY<TAB>VERDICT<TAB>WITNESS` line per item.
    std::string records() const;
};

}  // namespace fibrak
