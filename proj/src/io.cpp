#include "fibrak/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fibrak {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Logical lines: comment-stripped, trimmed, with 1-based line numbers.
std::vector<std::pair<int, std::string>> logical_lines(const std::string& text) {
    std::vector<std::pair<int, std::string>> out;
    std::istringstream in(text);
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
        ++n;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (!line.empty()) out.emplace_back(n, line);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write '" + path + "'", 0);
    out << text;
}

/// Splits on a literal separator, requiring exactly one occurrence.
std::pair<std::string, std::string> split1(const std::string& s, const std::string& sep, int line) {
    const auto at = s.find(sep);
    if (at == std::string::npos || s.find(sep, at + sep.size()) != std::string::npos)
        throw ParseError("expected exactly one '" + sep + "' in '" + s + "'", line);
    return {trim(s.substr(0, at)), trim(s.substr(at + sep.size()))};
}

}  // namespace

CatPtr parse_fincat(const std::string& text) {
    FinCatBuilder bld;
    enum Section { kNone, kObjects, kArrows, kCompose } sec = kNone;
    for (const auto& [n, line] : logical_lines(text)) {
        if (line == "OBJECTS") {
            sec = kObjects;
            continue;
        }
        if (line == "ARROWS") {
            sec = kArrows;
            continue;
        }
        if (line == "COMPOSE") {
            sec = kCompose;
            continue;
        }
        if (sec == kNone) throw ParseError("unknown section '" + line + "'", n);
        try {
            if (sec == kObjects) {
                if (line.find(' ') != std::string::npos)
                    throw ParseError("object name '" + line + "' contains whitespace", n);
                bld.object(line);
            } else if (sec == kArrows) {
                const auto [name, rest] = split1(line, " : ", n);
                const auto [src, tgt] = split1(rest, " -> ", n);
                bld.arrow(name, src, tgt);
            } else {
                const auto [lhs, h] = split1(line, " = ", n);
                const auto [g, f] = split1(lhs, " . ", n);
                bld.set_compose(g, f, h);
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(e.what(), n);
        }
    }
    try {
        return bld.build();
    } catch (const Error& e) {
        throw ParseError(e.what(), 0);
    }
}

CatPtr load_fincat(const std::string& path) { return parse_fincat(read_file(path)); }

std::string print_fincat(const FinCat& c) {
    std::ostringstream out;
    out << "OBJECTS\n";
    for (ObjId x = 0; x < c.num_objects(); ++x) out << c.object_name(x) << "\n";
    out << "ARROWS\n";
    for (ArrId f = 0; f < c.num_arrows(); ++f)
        out << c.arrow_name(f) << " : " << c.object_name(c.dom(f)) << " -> " << c.object_name(c.cod(f))
            << "\n";
    out << "COMPOSE\n";
    for (ArrId f = 0; f < c.num_arrows(); ++f) {
        if (c.is_identity(f)) continue;
        for (ArrId g : c.out(c.cod(f))) {
            if (c.is_identity(g)) continue;
            out << c.arrow_name(g) << " . " << c.arrow_name(f) << " = " << c.arrow_name(c.compose(g, f))
                << "\n";
        }
    }
    return out.str();
}

FibDoc parse_fibration(const std::string& text, const std::string& dir) {
    CatPtr base, total;
    std::vector<std::tuple<int, std::string, std::string>> proj_lines;      // (line, lhs, rhs)
    std::vector<std::tuple<int, std::string, std::string, std::string>> cleav_lines;  // (line, u, Y, f)
    std::vector<std::pair<int, std::string>> display_lines;
    bool has_display = false;

    enum Section { kNone, kProj, kCleavage, kDisplay } sec = kNone;
    for (const auto& [n, line] : logical_lines(text)) {
        if (line.rfind("BASE", 0) == 0 || line.rfind("TOTAL", 0) == 0) {
            const bool is_base = line[0] == 'B';
            const std::string path = trim(line.substr(is_base ? 4 : 5));
            if (path.empty()) throw ParseError("missing path after section keyword", n);
            try {
                CatPtr c = load_fincat((std::filesystem::path(dir) / path).string());
                (is_base ? base : total) = std::move(c);
            } catch (const ParseError& e) {
                throw ParseError(std::string("in '") + path + "': " + e.what(), n);
            }
            sec = kNone;
            continue;
        }
        if (line == "PROJ") {
            sec = kProj;
            continue;
        }
        if (line == "CLEAVAGE") {
            sec = kCleavage;
            continue;
        }
        if (line == "DISPLAY") {
            sec = kDisplay;
            has_display = true;
            continue;
        }
        if (sec == kNone) throw ParseError("unknown section '" + line + "'", n);
        if (sec == kProj) {
            const auto [lhs, rhs] = split1(line, " |-> ", n);
            proj_lines.emplace_back(n, lhs, rhs);
        } else if (sec == kCleavage) {
            const auto [lhs, rhs] = split1(line, " |-> ", n);
            if (lhs.size() < 2 || lhs.front() != '(' || lhs.back() != ')')
                throw ParseError("expected '(u, Y)' on the left of '" + line + "'", n);
            const auto [u, y] = split1(lhs.substr(1, lhs.size() - 2), ", ", n);
            cleav_lines.emplace_back(n, u, y, rhs);
        } else {
            if (line.find(' ') != std::string::npos)
                throw ParseError("display member '" + line + "' contains whitespace", n);
            display_lines.emplace_back(n, line);
        }
    }
    if (!base) throw ParseError("missing BASE section", 0);
    if (!total) throw ParseError("missing TOTAL section", 0);

    FinFunctor proj{total, base, std::vector<ObjId>(total->num_objects(), kNoObj),
                    std::vector<ArrId>(total->num_arrows(), kNoArr)};
    for (const auto& [n, lhs, rhs] : proj_lines) {
        const ObjId x = total->find_object(lhs);
        if (x != kNoObj) {
            const ObjId i = base->find_object(rhs);
            if (i == kNoObj) throw ParseError("unknown base object '" + rhs + "'", n);
            proj.obj_map[x] = i;
            continue;
        }
        const ArrId f = total->find_arrow(lhs);
        if (f == kNoArr) throw ParseError("unknown total object or arrow '" + lhs + "'", n);
        const ArrId u = base->find_arrow(rhs);
        if (u == kNoArr) throw ParseError("unknown base arrow '" + rhs + "'", n);
        proj.arr_map[f] = u;
    }
    for (ObjId x = 0; x < total->num_objects(); ++x)
        if (proj.obj_map[x] == kNoObj)
            throw ParseError("object '" + total->object_name(x) + "' has no PROJ assignment", 0);
    for (ArrId f = 0; f < total->num_arrows(); ++f) {
        if (proj.arr_map[f] != kNoArr) continue;
        if (!total->is_identity(f))
            throw ParseError("arrow '" + total->arrow_name(f) + "' has no PROJ assignment", 0);
        proj.arr_map[f] = base->identity(proj.obj_map[total->dom(f)]);
    }

    std::unordered_map<std::int64_t, ArrId> cleav;
    for (const auto& [n, us, ys, fs] : cleav_lines) {
        const ArrId u = base->find_arrow(us);
        if (u == kNoArr) throw ParseError("unknown base arrow '" + us + "'", n);
        const ObjId y = total->find_object(ys);
        if (y == kNoObj) throw ParseError("unknown total object '" + ys + "'", n);
        const ArrId f = total->find_arrow(fs);
        if (f == kNoArr) throw ParseError("unknown total arrow '" + fs + "'", n);
        cleav[ClovenFibration::cleavage_key(u, y)] = f;
    }

    FibDoc doc;
    doc.fib = cleav.empty() ? ClovenFibration::make(std::move(proj))
                            : ClovenFibration::make(std::move(proj), cleav);
    if (has_display) {
        std::vector<ArrId> members;
        for (const auto& [n, name] : display_lines) {
            const ArrId u = base->find_arrow(name);
            if (u == kNoArr) throw ParseError("unknown display member '" + name + "'", n);
            members.push_back(u);
        }
        doc.display = DisplayClass::of_arrows(base, members);
    }
    return doc;
}

FibDoc load_fibration(const std::string& path) {
    return parse_fibration(read_file(path), std::filesystem::path(path).parent_path().string());
}

std::string print_fibration(const ClovenFibration& p, const DisplayClass* display,
                            const std::string& base_path, const std::string& total_path) {
    const FinCat& t = p.total();
    const FinCat& b = p.base();
    std::ostringstream out;
    out << "BASE " << base_path << "\n";
    out << "TOTAL " << total_path << "\n";
    out << "PROJ\n";
    for (ObjId x = 0; x < t.num_objects(); ++x)
        out << t.object_name(x) << " |-> " << b.object_name(p.proj_obj(x)) << "\n";
    for (ArrId f = 0; f < t.num_arrows(); ++f) {
        if (t.is_identity(f)) continue;
        out << t.arrow_name(f) << " |-> " << b.arrow_name(p.proj_arr(f)) << "\n";
    }
    out << "CLEAVAGE\n";
    for (ArrId u = 0; u < b.num_arrows(); ++u) {
        if (b.is_identity(u)) continue;
        for (ObjId y : p.objects_over(b.cod(u)))
            if (auto l = p.try_lift(u, y))
                out << "(" << b.arrow_name(u) << ", " << t.object_name(y) << ") |-> " << t.arrow_name(*l)
                    << "\n";
    }
    if (display) {
        out << "DISPLAY\n";
        for (ArrId u : display->members()) out << b.arrow_name(u) << "\n";
    }
    return out.str();
}

void write_fibration(const std::string& path, const ClovenFibration& p, const DisplayClass* display) {
    const std::filesystem::path fp(path);
    const std::string stem = fp.stem().string();
    const std::string base_name = stem + ".base.fcat";
    const std::string total_name = stem + ".total.fcat";
    const std::filesystem::path dir = fp.parent_path();
    write_file((dir / base_name).string(), print_fincat(p.base()));
    write_file((dir / total_name).string(), print_fincat(p.total()));
    write_file(path, print_fibration(p, display, base_name, total_name));
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

void dot_edges(std::ostringstream& out, const FinCat& c, const std::string& prefix,
               const std::function<std::string(ArrId)>& attrs) {
    for (ObjId x = 0; x < c.num_objects(); ++x)
        out << "  \"" << prefix << dot_escape(c.object_name(x)) << "\";\n";
    for (ArrId f = 0; f < c.num_arrows(); ++f) {
        out << "  \"" << prefix << dot_escape(c.object_name(c.dom(f))) << "\" -> \"" << prefix
            << dot_escape(c.object_name(c.cod(f))) << "\" [label=\"" << dot_escape(c.arrow_name(f))
            << "\"";
        const std::string extra = attrs(f);
        if (!extra.empty()) out << ", " << extra;
        out << "];\n";
    }
}

}  // namespace

std::string export_dot(const FinCat& c) {
    std::ostringstream out;
    out << "digraph fincat {\n";
    dot_edges(out, c, "", [](ArrId) { return std::string(); });
    out << "}\n";
    return out.str();
}

std::string export_dot(const ClovenFibration& p, const DisplayClass* display) {
    std::ostringstream out;
    out << "digraph fibration {\n";
    out << "  subgraph cluster_total {\n    label=\"total\";\n";
    std::ostringstream total;
    dot_edges(total, p.total(), "E:", [&](ArrId f) {
        if (p.is_vertical(f) && !p.total().is_identity(f)) return std::string("style=dashed");
        if (p.is_cleavage_entry(f) && !p.total().is_identity(f)) return std::string("style=bold");
        return std::string();
    });
    std::istringstream tlines(total.str());
    for (std::string l; std::getline(tlines, l);) out << "  " << l << "\n";
    out << "  }\n";
    out << "  subgraph cluster_base {\n    label=\"base\";\n";
    std::ostringstream base;
    dot_edges(base, p.base(), "B:", [&](ArrId f) {
        if (display && display->is_member(f)) return std::string("arrowhead=\"normalnormal\"");
        return std::string();
    });
    std::istringstream blines(base.str());
    for (std::string l; std::getline(blines, l);) out << "  " << l << "\n";
    out << "  }\n}\n";
    return out.str();
}

bool ReportDoc::all_ok() const {
    for (const ReportItem& it : items)
        if (!it.verdict) return false;
    return true;
}

void ReportDoc::add(std::string property, bool verdict, std::string witness) {
    items.push_back(ReportItem{std::move(property), verdict, std::move(witness)});
}

std::string ReportDoc::text() const {
    std::ostringstream out;
    for (const ReportItem& it : items) {
        out << it.property << ": " << (it.verdict ? "ok" : "FAIL");
        if (!it.witness.empty()) out << " -- " << it.witness;
        out << "\n";
    }
    return out.str();
}

std::string ReportDoc::records() const {
    std::ostringstream out;
    for (const ReportItem& it : items)
        out << it.property << "\t" << (it.verdict ? "true" : "false") << "\t"
            << (it.witness.empty() ? "-" : it.witness) << "\n";
    return out.str();
}

}  // namespace fibrak
