// Acceptance suite: one verdict line per criterion, nonzero exit on any
// failure.  Every check is exhaustive over the built-in corpus.
#include "fibrak/completion.hpp"
#include "fibrak/corpus.hpp"
#include "fibrak/io.hpp"
#include "fibrak/logic.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace fibrak;

namespace {

constexpr long kBigBudget = 200'000'000;

std::vector<CorpusEntry>& corpus() {
    static std::vector<CorpusEntry> all = [] {
        std::vector<CorpusEntry> v;
        for (const auto& n : corpus_names()) v.push_back(make_corpus_entry(n));
        return v;
    }();
    return all;
}

bool class_closed(const CorpusEntry& e) {
    const ClosureReport r = verify_display_class(e.display);
    return r.pullback_closed && r.composition_closed;
}

// Reference universal-property check, independent of the kernel's: the cone
// commutes and every commuting cone over (f, g) factors through it uniquely.
bool up_holds(const FinCat& c, ArrId f, ArrId g, ObjId apex, ArrId p1, ArrId p2) {
    if (c.compose(f, p1) != c.compose(g, p2)) return false;
    for (ObjId z = 0; z < c.num_objects(); ++z)
        for (ArrId q1 : c.hom(z, c.dom(f)))
            for (ArrId q2 : c.hom(z, c.dom(g))) {
                if (c.compose(f, q1) != c.compose(g, q2)) continue;
                int mediators = 0;
                for (ArrId m : c.hom(z, apex))
                    if (c.compose(p1, m) == q1 && c.compose(p2, m) == q2) ++mediators;
                if (mediators != 1) return false;
            }
    return true;
}

bool vertical_iso_between(const ClovenFibration& p, ObjId x, ObjId y) {
    for (ArrId v : p.hom_vert(x, y))
        if (p.total().is_iso(v)) return true;
    return false;
}

// ---------------------------------------------------------------- criteria

std::string criterion1() {
    std::set<const FinCat*> seen;
    for (const CorpusEntry& e : corpus())
        for (const FinCat* c : {&e.fibration.base(), &e.fibration.total()}) {
            if (!seen.insert(c).second) continue;
            // The exhaustive sweep covers the small corpus categories; the
            // large family/subobject totals are exercised by other criteria.
            if (c->num_objects() > 12 || c->num_arrows() > 60) continue;
            for (ArrId f = 0; f < c->num_arrows(); ++f)
                for (ArrId g = 0; g < c->num_arrows(); ++g) {
                    if (c->cod(f) != c->cod(g)) continue;
                    Budget bud(kBigBudget);
                    const auto fp = find_pullback(*c, f, g, bud);
                    bool some_pullback = false;
                    // Every typed cone doubles as an injected mutant: the
                    // kernel verdict must match the reference verdict, so
                    // every non-pullback cone is detected.
                    for (ObjId a = 0; a < c->num_objects(); ++a)
                        for (ArrId p1 : c->hom(a, c->dom(f)))
                            for (ArrId p2 : c->hom(a, c->dom(g))) {
                                const bool truth = up_holds(*c, f, g, a, p1, p2);
                                some_pullback = some_pullback || truth;
                                const PullbackCone cone{f, g, a, p1, p2};
                                if (is_pullback(*c, cone, bud) != truth ||
                                    is_pullback_serial(*c, cone, bud) != truth)
                                    return e.name + ": verdict mismatch on a cone over (" +
                                           c->arrow_name(f) + ", " + c->arrow_name(g) + ")";
                            }
                    if (fp && !up_holds(*c, f, g, fp->apex, fp->p1, fp->p2))
                        return e.name + ": find_pullback returned a non-pullback";
                    if (!fp && some_pullback)
                        return e.name + ": find_pullback missed an existing pullback";
                }
        }
    return "";
}

std::string criterion2() {
    for (const CorpusEntry& e : corpus()) {
        if (!class_closed(e)) continue;
        Budget bud(kBigBudget);
        const SigmaFibration s = sigma_completion(e.fibration, e.display, bud);
        const StructureReport r = verify_fibred_structure(s.fib, e.display, AdjointData::kLeft, bud);
        if (!r.ok) return e.name + ": " + (r.failures.empty() ? "structure check failed" : r.failures.front());
    }
    return "";
}

std::string criterion3() {
    for (const CorpusEntry& e : corpus()) {
        if (!class_closed(e)) continue;
        Budget bud(kBigBudget);
        const PiFibration pi = pi_completion(e.fibration, e.display, bud);
        if (!pi.check.ok()) return e.name + ": presentation translation failed";
        if (!check_fibred_functor(pi.direct, pi.fib(), pi.iso).ok())
            return e.name + ": iso is not a fibred functor";
        if (!check_fibred_equivalence(pi.direct, pi.fib(), pi.iso).ok())
            return e.name + ": iso is not an equivalence";
    }
    return "";
}

std::string criterion4() {
    for (const CorpusEntry& e : corpus()) {
        if (!class_closed(e)) continue;
        Budget bud(kBigBudget);
        const SigmaFibration s = sigma_completion(e.fibration, e.display, bud);
        const FinCat& b = s.fib.base();
        const FinCat& t = s.fib.total();
        LogicEngine eng(s.fib, e.display, bud);
        std::vector<ObjId> insertions;
        for (ObjId x = 0; x < t.num_objects(); ++x)
            if (b.is_identity(s.objects[x].g)) insertions.push_back(x);
        for (ObjId x : insertions)
            if (!eng.qfree(x, Quant::kCoprod))
                return e.name + ": insertion " + t.object_name(x) + " is not quantifier-free";
        for (ObjId x = 0; x < t.num_objects(); ++x) {
            if (!eng.qfree(x, Quant::kCoprod)) continue;
            bool hit = false;
            for (ObjId y : insertions)
                if (s.fib.proj_obj(y) == s.fib.proj_obj(x) && vertical_iso_between(s.fib, x, y)) {
                    hit = true;
                    break;
                }
            if (!hit) return e.name + ": qf object " + t.object_name(x) + " is not iso to an insertion";
        }
        const EnoughReport en = eng.enough(Quant::kCoprod);
        if (!en.ok) return e.name + ": " + en.failure;
        for (const auto& [alpha, cover] : en.covers) {
            if (!eng.qfree(cover.beta, Quant::kCoprod))
                return e.name + ": cover matrix is not quantifier-free";
            const auto& ad = eng.adjoint_at(cover.f, cover.beta, AdjointData::kLeft);
            if (!ad) return e.name + ": cover coproduct does not exist";
            const ArrId v = cover.iso;
            if (t.dom(v) != ad->first || t.cod(v) != alpha || !t.is_iso(v) || !s.fib.is_vertical(v))
                return e.name + ": cover iso is not a vertical iso from the coproduct";
        }
    }
    return "";
}

std::string criterion5() {
    for (const CorpusEntry& e : corpus()) {
        if (!class_closed(e)) continue;
        Budget bud(kBigBudget);
        const SigmaFibration s = sigma_completion(e.fibration, e.display, bud);
        const ComparisonFunctor c = comparison_functor(s.fib, e.display, bud);
        if (!check_fibred_functor(c.completion.fib, s.fib, c.functor).ok())
            return e.name + ": comparison is not a fibred functor";
        if (!check_fibred_equivalence(c.completion.fib, s.fib, c.functor).ok())
            return e.name + ": comparison is not an equivalence";
    }
    return "";
}

std::string criterion6() {
    int pos_eps = 0, neg_eps = 0, pos_tau = 0, neg_tau = 0;
    for (const CorpusEntry& e : corpus()) {
        Budget bud(kBigBudget);
        LogicEngine eng(e.fibration, e.display, bud);
        for (Quant mode : {Quant::kCoprod, Quant::kProd}) {
            HilbertReport r;
            try {
                r = eng.hilbert(mode);  // InternalDisagreement propagates as a failure
            } catch (const InternalDisagreement& ex) {
                return e.name + ": routes disagree: " + ex.what();
            }
            const bool expected =
                e.expected.at(mode == Quant::kCoprod ? "is_hilbert_epsilon" : "is_hilbert_tau");
            if (r.verdict != expected) return e.name + ": verdict differs from the recorded one";
            if (r.verdict && (!r.direct || !r.characterization || !r.corollary_iso))
                return e.name + ": positive instance without verified bars";
            (mode == Quant::kCoprod ? (r.verdict ? pos_eps : neg_eps)
                                    : (r.verdict ? pos_tau : neg_tau))++;
        }
    }
    if (pos_eps < 3 || neg_eps < 3 || pos_tau < 3 || neg_tau < 3)
        return "fewer than 3 positive/negative instances per operator";
    return "";
}

std::string criterion7() {
    int skolem_instances = 0;
    for (const CorpusEntry& e : corpus()) {
        if (!e.expected.at("is_skolem")) continue;
        ++skolem_instances;
        Budget bud(kBigBudget);
        LogicEngine eng(e.fibration, e.display, bud);
        const FinCat& b = e.fibration.base();
        const FinCat& t = e.fibration.total();
        int admissible = 0;
        for (ArrId g : e.display.members())
            for (ArrId f : e.display.members())
                for (ObjId beta = 0; beta < t.num_objects(); ++beta) {
                    IsoWitness w;
                    try {
                        w = eng.skolemize(g, f, beta);
                    } catch (const PreconditionFailed&) {
                        continue;  // inadmissible triple
                    }
                    // TheoremViolation / InternalDisagreement propagate: count must be 0.
                    ++admissible;
                    if (t.compose(w.inverse, w.iso) != t.identity(w.lhs) ||
                        t.compose(w.iso, w.inverse) != t.identity(w.rhs) ||
                        !e.fibration.is_vertical(w.iso))
                        return e.name + ": skolemize iso is not a two-sided vertical iso";
                    const auto d = dependent_product(e.display, f, g, bud);
                    if (!d) return e.name + ": missing dependent product for an admissible triple";
                    for (ObjId sigma : e.fibration.objects_over(b.cod(g))) {
                        if (!eng.qfree(sigma, Quant::kCoprod)) continue;
                        const HomBijection bij = eng.skolem_bijection(sigma, beta, *d);
                        if (!bij.ok) return e.name + ": " + bij.failure;
                        if (bij.phi.size() != bij.dom.size() || bij.psi.size() != bij.cod.size())
                            return e.name + ": bijection legs have the wrong arity";
                    }
                }
        if (admissible == 0) return e.name + ": no admissible Skolem triple";
    }
    if (skolem_instances == 0) return "no Skolem instances in the corpus";
    return "";
}

std::string criterion8() {
    int goedel_instances = 0, roundtrips = 0;
    for (const CorpusEntry& e : corpus()) {
        if (!e.expected.at("is_goedel")) continue;
        ++goedel_instances;
        Budget bud(kBigBudget);
        LogicEngine eng(e.fibration, e.display, bud);
        const FinCat& t = e.fibration.total();
        for (ObjId alpha = 0; alpha < t.num_objects(); ++alpha) {
            const PrenexForm pf = eng.prenex(alpha);
            if (t.cod(pf.iso) != alpha || !t.is_iso(pf.iso))
                return e.name + ": prenex iso fails on " + t.object_name(alpha);
            if (!e.display.is_member(pf.f) || !e.display.is_member(pf.g))
                return e.name + ": prenex legs are not display members";
            if (!eng.qfree(pf.beta, Quant::kCoprod))
                return e.name + ": prenex matrix is not quantifier-free";
        }
        const RoundtripReport r = eng.roundtrip();
        if (!r.equivalence_ok) return e.name + ": Dialectica roundtrip is not an equivalence";
        if (!r.converse_goedel_ok) return e.name + ": roundtrip output is not Goedel";
        ++roundtrips;
    }
    if (goedel_instances < 2 || roundtrips < 2) return "fewer than 2 Goedel instances";
    return "";
}

std::string criterion9() {
    for (const CorpusEntry& e : corpus()) {
        Budget bud(kBigBudget);
        LogicEngine eng(e.fibration, e.display, bud);
        LogicEngine& op = eng.op_engine();
        for (ObjId x = 0; x < e.fibration.total().num_objects(); ++x) {
            if (eng.qfree(x, Quant::kProd) != op.qfree(x, Quant::kCoprod))
                return e.name + ": qfree duality fails on " + e.fibration.total().object_name(x);
            if (eng.splitting(x, Quant::kProd).ok != op.splitting(x, Quant::kCoprod).ok)
                return e.name + ": splitting duality fails on " + e.fibration.total().object_name(x);
        }
        if (eng.enough(Quant::kProd).ok != op.enough(Quant::kCoprod).ok)
            return e.name + ": enough-qf duality fails";
    }
    return "";
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    const char* cli = std::getenv("FIBRAK_CLI");
    if (!cli) return {};
    const std::string cmd = std::string(cli) + " " + args + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return {};
    RunResult r;
    std::array<char, 4096> buf{};
    size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string criterion10() {
    if (!std::getenv("FIBRAK_CLI")) return "FIBRAK_CLI is not set";
    for (const auto& name : corpus_names()) {
        const std::string args = "classify --corpus " + name + " --format records";
        const RunResult a = run_cli(args);
        const RunResult b = run_cli(args);
        if (a.code != 0 || b.code != 0) return name + ": classify did not exit 0";
        if (a.out != b.out || a.out.empty()) return name + ": record output is not byte-identical";
    }
    const std::string bad = "/tmp/fibrak_acceptance_malformed.fcat";
    std::FILE* fp = std::fopen(bad.c_str(), "w");
    if (!fp) return "cannot write the malformed sample";
    std::fputs("OBJECTS\na\nARROWS\nf : a -> a\nCOMPOSE\nf . g = f\n", fp);
    std::fclose(fp);
    if (run_cli("check " + bad).code != 2) return "malformed input did not exit 2";
    if (run_cli("check --corpus finset-identity-allmaps").code != 1)
        return "failing property did not exit 1";
    if (run_cli("classify --corpus pointed-completion --budget 5").code != 3)
        return "budget trip did not exit 3";
    return "";
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<std::string()>> table[] = {
        {"kernel soundness", criterion1},
        {"completion structure", criterion2},
        {"product-completion duality", criterion3},
        {"quantifier-free classification", criterion4},
        {"comparison equivalence", criterion5},
        {"Hilbert operators", criterion6},
        {"Skolemisation", criterion7},
        {"prenexation and roundtrip", criterion8},
        {"duality suite", criterion9},
        {"CLI golden", criterion10},
    };
    int failures = 0, n = 0;
    for (const auto& [label, fn] : table) {
        ++n;
        std::string err;
        const auto start = std::chrono::steady_clock::now();
        try {
            err = fn();
        } catch (const std::exception& ex) {
            err = std::string("exception: ") + ex.what();
        }
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
                .count();
        if (err.empty()) {
            std::printf("criterion %d (%s): pass (%lld ms)\n", n, label, static_cast<long long>(ms));
        } else {
            std::printf("criterion %d (%s): FAIL -- %s\n", n, label, err.c_str());
            ++failures;
        }
    }
    return failures == 0 ? 0 : 1;
}
