#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fibrak/corpus.hpp"
#include "fibrak/io.hpp"
#include "fibrak/logic.hpp"

namespace {

using namespace fibrak;

struct Instance {
    ClovenFibration fib;
    std::optional<DisplayClass> display;
};

Instance resolve(const std::string& corpus, const std::string& path) {
    if (!corpus.empty()) {
        CorpusEntry e = make_corpus_entry(corpus);
        return Instance{std::move(e.fibration), std::move(e.display)};
    }
    if (path.empty()) throw ParseError("no input: give a fibration file or --corpus <name>", 0);
    FibDoc doc = load_fibration(path);
    return Instance{std::move(doc.fib), std::move(doc.display)};
}

const DisplayClass& need_display(const Instance& in) {
    if (!in.display) throw ParseError("this command needs a DISPLAY section (or a corpus entry)", 0);
    return *in.display;
}

void emit(const ReportDoc& doc, const std::string& format) {
    std::cout << (format == "records" ? doc.records() : doc.text());
}

int run(int argc, char** argv) {
    CLI::App app{"workbench for finite fibrations: completions and logical classification"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    std::string corpus, format = "text", path, out_path, g_name, f_name, beta_name, alpha_name;
    std::int64_t budget_cap = Budget::default_cap();
    app.add_option("--budget", budget_cap, "candidate budget per universal-property search");
    app.add_option("--corpus", corpus, "use a built-in named instance instead of a file");
    app.add_option("--format", format, "report format")->check(CLI::IsMember({"text", "records"}));

    CLI::App* check = app.add_subcommand("check", "verify category, fibration and display-class laws");
    check->add_option("fib", path, "fibration file");

    CLI::App* complete = app.add_subcommand("complete", "write a completion as a fibration file");
    bool do_sigma = false, do_pi = false, do_dial = false;
    complete->add_flag("--sigma", do_sigma, "coproduct completion");
    complete->add_flag("--pi", do_pi, "product completion");
    complete->add_flag("--dialectica", do_dial, "Dialectica construction");
    complete->add_option("fib", path, "fibration file");
    complete->add_option("-o,--output", out_path, "output .fib path")->required();

    CLI::App* classify_cmd = app.add_subcommand("classify", "decide Skolem / Goedel / Hilbert properties");
    classify_cmd->add_option("fib", path, "fibration file");

    CLI::App* skolem_cmd = app.add_subcommand("skolem", "skolemisation iso and hom-set bijection");
    skolem_cmd->add_option("fib", path, "fibration file");
    skolem_cmd->add_option("--g", g_name, "display map I ->> J")->required();
    skolem_cmd->add_option("--f", f_name, "display map K ->> I")->required();
    skolem_cmd->add_option("--beta", beta_name, "total object over dom f")->required();

    CLI::App* prenex_cmd = app.add_subcommand("prenex", "prenex normal form of an object");
    prenex_cmd->add_option("fib", path, "fibration file");
    prenex_cmd->add_option("--alpha", alpha_name, "total object")->required();

    CLI::App* roundtrip_cmd = app.add_subcommand("roundtrip", "Goedel <-> Dialectica equivalence");
    roundtrip_cmd->add_option("fib", path, "fibration file");

    CLI::App* export_cmd = app.add_subcommand("export", "graph export");
    bool do_dot = false;
    export_cmd->add_flag("--dot", do_dot, "DOT digraph");
    export_cmd->add_option("fib", path, "fibration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }
    Budget::set_default_cap(budget_cap);

    Instance in = resolve(corpus, path);
    ReportDoc doc;

    if (*check) {
        doc.add("category.base", check_category(in.fib.base()).ok());
        doc.add("category.total", check_category(in.fib.total()).ok());
        const LawReport fr = verify_fibration(in.fib);
        doc.add("fibration", fr.ok(), fr.ok() ? "" : fr.violations.front());
        if (in.display) {
            // The completions require pullback and composition closure; unit
            // closure and well-rootedness are stricter notions some inputs
            // (e.g. identities-only classes) deliberately lack.
            const ClosureReport cr = verify_display_class(*in.display);
            const bool ok = cr.pullback_closed && cr.composition_closed;
            doc.add("display_class", ok,
                    ok || cr.counterexamples.empty() ? "" : cr.counterexamples.front());
        }
        emit(doc, format);
        return doc.all_ok() ? 0 : 1;
    }

    if (*complete) {
        if (do_sigma + do_pi + do_dial != 1)
            throw ParseError("choose exactly one of --sigma, --pi, --dialectica", 0);
        const DisplayClass& F = need_display(in);
        Budget bud;
        ClovenFibration result;
        if (do_sigma)
            result = sigma_completion(in.fib, F, bud).fib;
        else if (do_pi)
            result = pi_completion(in.fib, F, bud).fib();
        else
            result = dialectica(in.fib, F, bud).fib();
        write_fibration(out_path, result, &F);
        doc.add("complete", true,
                std::to_string(result.total().num_objects()) + " objects, " +
                    std::to_string(result.total().num_arrows()) + " arrows");
        emit(doc, format);
        return 0;
    }

    if (*classify_cmd) {
        const DisplayClass& F = need_display(in);
        Budget bud;
        const ClassificationReport r = classify(in.fib, F, bud);
        doc.add("is_skolem", r.is_skolem, r.skolem.counterexample);
        doc.add("is_goedel", r.is_goedel, r.goedel.counterexample);
        doc.add("is_hilbert_epsilon", r.is_hilbert_epsilon, r.epsilon.counterexample);
        doc.add("is_hilbert_tau", r.is_hilbert_tau, r.tau.counterexample);
        emit(doc, format);
        return 0;  // the verdicts are the payload, not failures
    }

    if (*skolem_cmd) {
        const DisplayClass& F = need_display(in);
        const FinCat& b = in.fib.base();
        const FinCat& t = in.fib.total();
        const ArrId g = b.find_arrow(g_name);
        const ArrId f = b.find_arrow(f_name);
        const ObjId beta = t.find_object(beta_name);
        if (g == kNoArr || f == kNoArr) throw ParseError("unknown base arrow", 0);
        if (beta == kNoObj) throw ParseError("unknown total object", 0);
        Budget bud;
        LogicEngine eng(in.fib, F, bud);
        const IsoWitness w = eng.skolemize(g, f, beta);
        doc.add("skolemize", true,
                t.object_name(w.lhs) + " ~ " + t.object_name(w.rhs) + " via " + t.arrow_name(w.iso));
        const auto d = dependent_product(F, f, g, bud);
        for (ObjId sigma : in.fib.objects_over(b.cod(g))) {
            if (!eng.qfree(sigma, Quant::kCoprod)) continue;
            const HomBijection bij = eng.skolem_bijection(sigma, beta, *d);
            doc.add("bijection(" + t.object_name(sigma) + ")", bij.ok, bij.failure);
        }
        emit(doc, format);
        return doc.all_ok() ? 0 : 1;
    }

    if (*prenex_cmd) {
        const DisplayClass& F = need_display(in);
        const ObjId alpha = in.fib.total().find_object(alpha_name);
        if (alpha == kNoObj) throw ParseError("unknown total object '" + alpha_name + "'", 0);
        Budget bud;
        LogicEngine eng(in.fib, F, bud);
        const PrenexForm pf = eng.prenex(alpha);
        doc.add("prenex", true,
                "coprod along " + in.fib.base().arrow_name(pf.f) + ", prod along " +
                    in.fib.base().arrow_name(pf.g) + ", matrix " + in.fib.total().object_name(pf.beta) +
                    ", iso " + in.fib.total().arrow_name(pf.iso));
        emit(doc, format);
        return 0;
    }

    if (*roundtrip_cmd) {
        const DisplayClass& F = need_display(in);
        Budget bud;
        const RoundtripReport r = goedel_dialectica_roundtrip(in.fib, F, bud);
        doc.add("roundtrip.equivalence", r.equivalence_ok);
        doc.add("roundtrip.converse_goedel", r.converse_goedel_ok);
        emit(doc, format);
        return doc.all_ok() ? 0 : 1;
    }

    if (*export_cmd) {
        if (!do_dot) throw ParseError("export needs --dot", 0);
        std::cout << export_dot(in.fib, in.display ? &*in.display : nullptr);
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fibrak::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const fibrak::TheoremViolation& e) {
        std::cerr << "theorem violation: " << e.what() << "\n";
        return 1;
    } catch (const fibrak::InternalDisagreement& e) {
        std::cerr << "internal disagreement: " << e.what() << "\n";
        return 1;
    } catch (const fibrak::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
