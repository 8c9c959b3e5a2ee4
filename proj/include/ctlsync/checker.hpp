#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctlsync/bignat.hpp"
#include "ctlsync/formula.hpp"
#include "ctlsync/kripke.hpp"

namespace ctlsync {

/// Synchronization certificate for one state.
struct Witness {
    enum class Kind { SyncPoint, Lasso };

    Kind kind = Kind::SyncPoint;
    StateIndex state = 0;
    BigNat k = 0;            // SyncPoint: the synchronizing depth
    std::size_t n = 0;       // Lasso: position inside the cycle of the subset sequence
    std::size_t lambda = 0;  // Lasso: period

    static Witness sync_point(StateIndex t, BigNat k);
    static Witness lasso(StateIndex t, std::size_t n, std::size_t lambda);

    /// "3" for sync points, "(n,lambda)" for lassos.
    std::string to_string() const;
    bool operator==(const Witness&) const = default;
};

/// Satisfying states of a sync operator, plus a witness per satisfying state.
struct SyncEval {
    StateSet holds;
    std::vector<std::optional<Witness>> witnesses;
};

struct CheckerLimits {
    std::size_t subset_cap = kDefaultSubsetCap;
    std::size_t powerset_nodes = std::size_t{1} << 16;  // per start state
};

// CTL cases.
StateSet eval_ex(const KripkeStructure& k, const StateSet& sem);
StateSet eval_ax(const KripkeStructure& k, const StateSet& sem);
StateSet eval_eu(const KripkeStructure& k, const StateSet& sem1, const StateSet& sem2);
StateSet eval_au(const KripkeStructure& k, const StateSet& sem1, const StateSet& sem2);

/// [a UA b]: walks the subset sequence from each state.
SyncEval eval_ua(const KripkeStructure& k, const StateSet& sem1, const StateSet& sem2,
                 const CheckerLimits& limits = {});

/// Checks a claimed synchronizing depth n for [a UA b] at t without walking
/// the sequence: the n-step image must lie in sem2 and every state visited
/// strictly before depth n must lie in sem1.
bool verify_ua_witness(const KripkeStructure& k, StateIndex t, const StateSet& sem1, const StateSet& sem2,
                       const BigNat& n);

/// [a UE b]: breadth-first search of the powerset graph under covering
/// successors. Witness k is the minimal depth.
SyncEval eval_ue(const KripkeStructure& k, const StateSet& sem1, const StateSet& sem2,
                 const CheckerLimits& limits = {});

/// GF-forall: a lasso of the subset sequence whose cycle visits a subset of sem1.
SyncEval eval_gfa(const KripkeStructure& k, const StateSet& sem1, const CheckerLimits& limits = {});

/// GF-exists: states that reach a non-trivial SCC from which sem1 is reachable.
StateSet eval_gfe(const KripkeStructure& k, const StateSet& sem1);

/// Applies one core operator to already evaluated operand sets.
StateSet apply_operator(const KripkeStructure& k, Op op, const StateSet& a, const StateSet& b,
                        const CheckerLimits& limits = {});

/// ⟦φ⟧ for every evaluated subformula, keyed by canonical syntax.
class SemMap {
public:
    bool contains(const Formula& f) const { return sets_.count(f.to_string()) != 0; }
    const StateSet& at(const Formula& f) const;
    /// Witness for state t of a sync subformula, if it holds there.
    std::optional<Witness> witness(const Formula& f, StateIndex t) const;
    std::size_t size() const { return sets_.size(); }

    void put(const Formula& f, StateSet s, std::vector<std::optional<Witness>> w = {});

private:
    std::map<std::string, StateSet> sets_;
    std::map<std::string, std::vector<std::optional<Witness>>> witnesses_;
};

struct CheckResult {
    Formula normalized;
    SemMap sem;

    const StateSet& holds() const { return sem.at(normalized); }
    std::optional<Witness> witness(StateIndex t) const { return sem.witness(normalized, t); }
};

/// Normalizes φ and labels every subformula bottom-up. Atoms that are not
/// propositions of k hold nowhere. Throws CapExceeded when a budget runs out.
CheckResult check(const KripkeStructure& k, const Formula& phi, const CheckerLimits& limits = {});

}  // namespace ctlsync
