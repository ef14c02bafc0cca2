#include "fibrak/logic.hpp"

namespace fibrak {

ClassificationReport classify(const ClovenFibration& p, const DisplayClass& F, Budget& budget) {
    LogicEngine e(p, F, budget);
    ClassificationReport r;
    r.skolem = e.skolem();
    r.is_skolem = r.skolem.ok;
    r.goedel = e.goedel();
    r.is_goedel = r.goedel.ok;
    r.epsilon = e.hilbert(Quant::kCoprod);
    r.is_hilbert_epsilon = r.epsilon.verdict;
    r.tau = e.hilbert(Quant::kProd);
    r.is_hilbert_tau = r.tau.verdict;
    return r;
}

}  // namespace fibrak
