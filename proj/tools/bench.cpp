// Compares the OpenMP verification sweeps against their single-threaded
// reference implementations on the built-in corpus, checking that results
// agree while timing both.
#include <chrono>
#include <cstdio>

#include "fibrak/corpus.hpp"
#include "fibrak/kernel.hpp"

using namespace fibrak;
using Clock = std::chrono::steady_clock;

namespace {

double ms(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double, std::milli>(b - a).count();
}

template <typename F>
double time_best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = Clock::now();
        f();
        best = std::min(best, ms(t0, Clock::now()));
    }
    return best;
}

}  // namespace

int main() {
    int mismatches = 0;
    std::printf("%-32s %12s %12s %8s\n", "benchmark", "parallel/ms", "serial/ms", "speedup");
    for (const std::string& name : corpus_names()) {
        const CorpusEntry e = make_corpus_entry(name);
        const FinCat& t = e.fibration.total();

        bool par_ok = true, ser_ok = true;
        const double tp = time_best_of(3, [&] { par_ok = check_category(t).ok(); });
        const double ts = time_best_of(3, [&] { ser_ok = check_category_serial(t).ok(); });
        if (par_ok != ser_ok) {
            std::printf("MISMATCH on %s: check_category\n", name.c_str());
            ++mismatches;
        }
        std::printf("%-32s %12.3f %12.3f %8.2f\n", ("laws/" + name).c_str(), tp, ts,
                    tp > 0 ? ts / tp : 0.0);

        long np = 0, ns = 0;
        const double cp = time_best_of(1, [&] {
            np = 0;
            Budget bud;
            for (ArrId f = 0; f < t.num_arrows(); ++f) np += is_cartesian(e.fibration, f, bud);
        });
        const double cs = time_best_of(1, [&] {
            ns = 0;
            Budget bud;
            for (ArrId f = 0; f < t.num_arrows(); ++f) ns += is_cartesian_serial(e.fibration, f, bud);
        });
        if (np != ns) {
            std::printf("MISMATCH on %s: is_cartesian (%ld vs %ld)\n", name.c_str(), np, ns);
            ++mismatches;
        }
        std::printf("%-32s %12.3f %12.3f %8.2f\n", ("cartesian/" + name).c_str(), cp, cs,
                    cp > 0 ? cs / cp : 0.0);
    }
    return mismatches == 0 ? 0 : 1;
}
