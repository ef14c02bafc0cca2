#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fibrak/completion.hpp"
#include "fibrak/display.hpp"
#include "fibrak/fibration.hpp"
#include "fibrak/structure.hpp"

namespace fibrak {

/// Which fibrewise quantifier a predicate is asked about.
enum class Quant { kCoprod, kProd };

/// One verified factorization instance: for the member u and the fibre
/// object beta over its domain, the arrow h factors uniquely through the
/// canonical comparison as (section, hbar).
///
/// kCoprod reading: h : alpha ~> transport_u(beta) equals
/// lift_u . unit . lift_section . hbar.  kProd reading (all arrows
/// reversed): h : transport_u(beta) ~> alpha with h . m = hbar . section*(counit),
/// m the canonical vertical iso section* u* transport -> transport.
struct SplittingWitness {
    ArrId u;
    ObjId beta;
    ArrId h;
    ArrId section;
    ArrId hbar;
};

struct SplittingReport {
    bool ok = true;
    std::vector<SplittingWitness> witnesses;
    std::string failure;  // first offending (u, beta, h)
};

/// A quantifier-free cover of a fibre object alpha: iso is the order-least
/// two-sided vertical isomorphism transport_f(beta) -> alpha.
struct QfCover {
    ArrId f;
    ObjId beta;
    ArrId iso;
};

struct EnoughReport {
    bool ok = true;
    std::map<ObjId, QfCover> covers;
    std::string failure;
};

/// One row of the epsilon/tau table: for (alpha over I, member f : I ->> J),
/// the unique section `op` of f and comparison `bar`.
/// epsilon: bar : coprod_f(alpha) ~> op* alpha.
/// tau:     bar : op* alpha ~> prod_f(alpha).
struct HilbertEntry {
    ObjId alpha;
    ArrId f;
    ArrId op;
    ArrId bar;
};

struct HilbertReport {
    bool verdict = false;
    bool structure_ok = false;       // fibred structure in the matching direction
    bool direct = false;             // every object quantifier-free
    bool characterization = false;   // unique (op, bar) tables satisfying (1)-(3)
    bool corollary_iso = true;       // every bar is a two-sided vertical iso
    std::vector<HilbertEntry> table;
    std::string counterexample;
};

struct SkolemReport {
    bool ok = false;
    bool base_products = false;      // base has dependent products along the class
    bool fibred_products = false;
    bool fibred_coproducts = false;
    bool enough_coprod_qf = false;
    bool stable = false;             // products of coprod-qf objects stay coprod-qf
    std::string counterexample;
};

struct GoedelReport {
    SkolemReport skolem;
    bool enough_prod_qf_in_sub = false;
    bool ok = false;
    std::string counterexample;
};

/// An explicit two-sided vertical isomorphism between two fibre objects.
struct IsoWitness {
    ObjId lhs;
    ObjId rhs;
    ArrId iso;      // lhs -> rhs
    ArrId inverse;  // rhs -> lhs
};

/// The hom-set bijection Hom(g* sigma, coprod_f beta) = Hom(sigma, coprod_h prod_g' e* beta)
/// together with its verification: phi[i] is the image of dom[i], psi[j] of cod[j].
struct HomBijection {
    std::vector<ArrId> dom;
    std::vector<ArrId> cod;
    std::vector<ArrId> phi;
    std::vector<ArrId> psi;
    bool ok = false;
    std::string failure;
};

/// alpha = transport_f(prod-transport_g(beta)) up to the vertical iso;
/// beta is prod-quantifier-free inside the coprod-quantifier-free
/// subfibration (its ambient total id is stored).
struct PrenexForm {
    ArrId f;
    ArrId g;
    ObjId beta;
    ArrId iso;  // coprod_f prod_g beta -> alpha
};

/// The canonical functor from the coproduct completion of the
/// quantifier-free subfibration back into the fibration.
struct ComparisonFunctor {
    FullSub sub;
    SigmaFibration completion;
    FibredFunctor functor;
};

struct RoundtripReport {
    bool equivalence_ok = false;     // Dial of the designated subfibration = p
    bool converse_goedel_ok = false; // the constructed Dial output is itself Goedel
    LawReport details;
};

struct ClassificationReport {
    bool is_skolem = false;
    bool is_goedel = false;
    bool is_hilbert_epsilon = false;
    bool is_hilbert_tau = false;
    SkolemReport skolem;
    GoedelReport goedel;
    HilbertReport epsilon;
    HilbertReport tau;
};

/// Decision procedures over one fibration and one display class, with
/// shared caches (adjoints, splitting/qf verdicts, fibrewise opposite,
/// subfibrations).  All searches are exhaustive and order-least; every
/// product-side verdict is cross-checked against the coproduct-side verdict
/// in the fibrewise opposite and a disagreement throws InternalDisagreement.
class LogicEngine {
   public:
    LogicEngine(const ClovenFibration& p, const DisplayClass& F, Budget& budget);

    const ClovenFibration& fibration() const { return p_; }
    const DisplayClass& display() const { return F_; }

    /// Cached universal arrow (transport object, unit/counit) at (u, beta).
    const std::optional<std::pair<ObjId, ArrId>>& adjoint_at(ArrId u, ObjId beta, AdjointData::Dir dir);

    /// Cached verify_fibred_structure verdict per direction.
    const StructureReport& structure(AdjointData::Dir dir);

    /// Sections of a base arrow u, in id order.
    std::vector<ArrId> sections(ArrId u) const;

    const SplittingReport& splitting(ObjId alpha, Quant which);
    bool qfree(ObjId alpha, Quant which);
    const FullSub& qfree_sub(Quant which);
    const EnoughReport& enough(Quant which);

    HilbertReport hilbert(Quant mode);  // kCoprod: epsilon, kProd: tau
    SkolemReport skolem();
    GoedelReport goedel();

    ComparisonFunctor comparison();
    IsoWitness skolemize(ArrId g, ArrId f, ObjId beta);
    HomBijection skolem_bijection(ObjId sigma, ObjId beta, const DepProdDiagram& d);
    PrenexForm prenex(ObjId alpha);
    RoundtripReport roundtrip();

    /// The fibrewise opposite and the engine running on it (built lazily;
    /// only ever asked coproduct-side questions).
    const OppositeFibration& opposite();
    LogicEngine& op_engine();

    /// The engine running on the coprod-quantifier-free subfibration.
    LogicEngine& sub_engine();

   private:
    SplittingReport splitting_direct(ObjId alpha, Quant which);

    const ClovenFibration& p_;
    const DisplayClass& F_;
    Budget& budget_;

    std::map<std::tuple<ArrId, ObjId, int>, std::optional<std::pair<ObjId, ArrId>>> adj_;
    std::optional<StructureReport> structure_[2];
    std::map<std::pair<ObjId, int>, SplittingReport> split_;
    std::map<std::pair<ObjId, int>, bool> qf_;
    std::optional<FullSub> sub_[2];
    std::optional<EnoughReport> enough_[2];

    std::optional<OppositeFibration> op_;
    std::unique_ptr<LogicEngine> op_engine_;
    std::unique_ptr<LogicEngine> sub_engine_;
};

SplittingReport is_splitting(const ClovenFibration& p, const DisplayClass& F, ObjId alpha, Quant which,
                             Budget& budget);
bool is_qfree(const ClovenFibration& p, const DisplayClass& F, ObjId alpha, Quant which, Budget& budget);
ClovenFibration qfree_subfibration(const ClovenFibration& p, const DisplayClass& F, Quant which,
                                   Budget& budget);
EnoughReport enough_qfree(const ClovenFibration& p, const DisplayClass& F, Quant which, Budget& budget);
HilbertReport hilbert_check(const ClovenFibration& p, const DisplayClass& F, Quant mode, Budget& budget);
SkolemReport is_skolem(const ClovenFibration& p, const DisplayClass& F, Budget& budget);
GoedelReport is_goedel(const ClovenFibration& p, const DisplayClass& F, Budget& budget);
ComparisonFunctor comparison_functor(const ClovenFibration& p, const DisplayClass& F, Budget& budget);
IsoWitness skolemize(const ClovenFibration& p, const DisplayClass& F, ArrId g, ArrId f, ObjId beta,
                     Budget& budget);
HomBijection skolem_bijection(const ClovenFibration& p, const DisplayClass& F, ObjId sigma, ObjId beta,
                              const DepProdDiagram& d, Budget& budget);
PrenexForm prenex(const ClovenFibration& p, const DisplayClass& F, ObjId alpha, Budget& budget);
RoundtripReport goedel_dialectica_roundtrip(const ClovenFibration& p, const DisplayClass& F, Budget& budget);

/// Aggregate Skolem / Goedel / Hilbert classification (src/classify.cpp).
ClassificationReport classify(const ClovenFibration& p, const DisplayClass& F, Budget& budget);

}  // namespace fibrak
