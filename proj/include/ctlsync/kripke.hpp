#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctlsync/bignat.hpp"
#include "ctlsync/state_set.hpp"

namespace ctlsync {

/// Finite Kripke structure with a total transition relation.
///
/// States are identified by dense indices in declaration order. Successor
/// lists are sorted and duplicate-free; every state has at least one
/// successor. Instances are immutable once built.
class KripkeStructure {
public:
    KripkeStructure() = default;

    /// Validating constructor. `labels[i]` holds proposition names of state i;
    /// `successors[i]` holds successor indices of state i (duplicates allowed,
    /// they are merged). Throws ValidationError on any violated invariant.
    KripkeStructure(std::vector<std::string> state_names,
                    std::vector<std::string> props,
                    const std::vector<std::vector<std::string>>& labels,
                    std::vector<std::vector<StateIndex>> successors,
                    std::optional<StateIndex> init = std::nullopt);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& state_names() const { return names_; }
    const std::string& name(StateIndex t) const { return names_.at(t); }
    std::optional<StateIndex> find(std::string_view name) const;
    StateIndex index_of(std::string_view name) const;

    const std::vector<std::string>& props() const { return props_; }
    bool has_prop(std::string_view prop) const;
    /// States labeled with `prop`; the empty set for unknown propositions.
    StateSet prop_states(std::string_view prop) const;
    /// Proposition names of state t, in props() order.
    std::vector<std::string> labels(StateIndex t) const;
    bool labeled(StateIndex t, std::string_view prop) const;

    const std::vector<StateIndex>& successors(StateIndex t) const { return succ_.at(t); }
    const StateSet& successor_set(StateIndex t) const { return succ_sets_.at(t); }
    std::size_t edge_count() const;
    bool is_deterministic() const;

    std::optional<StateIndex> init() const { return init_; }

    StateSet empty_set() const { return StateSet(size()); }
    StateSet all_states() const { return StateSet::full(size()); }
    StateSet singleton(StateIndex t) const { return StateSet::singleton(size(), t); }

private:
    std::vector<std::string> names_;
    std::map<std::string, StateIndex, std::less<>> by_name_;
    std::vector<std::string> props_;
    std::vector<StateSet> prop_sets_;
    std::vector<std::vector<StateIndex>> succ_;
    std::vector<StateSet> succ_sets_;
    std::optional<StateIndex> init_;
};

/// Incremental construction helper used by parsers and generators.
class KripkeBuilder {
public:
    StateIndex add_state(std::string name, std::vector<std::string> props = {});
    void add_label(StateIndex t, std::string prop);
    void add_edge(StateIndex from, StateIndex to);
    void declare_prop(std::string prop);
    void set_init(StateIndex t) { init_ = t; }
    std::size_t size() const { return names_.size(); }
    const std::vector<StateIndex>& successors(StateIndex t) const { return succ_.at(t); }

    /// Adds a self-loop to every state without successors.
    void complete_selfloops();
    /// Validates and freezes. Proposition order is first-mention order.
    KripkeStructure build() const;

private:
    std::vector<std::string> names_;
    std::vector<std::string> props_;
    std::vector<std::vector<std::string>> labels_;
    std::vector<std::vector<StateIndex>> succ_;
    std::optional<StateIndex> init_;
};

/// R(s): union of the successor sets of members of s.
StateSet successors(const KripkeStructure& k, const StateSet& s);
/// States with at least one successor in s.
StateSet predecessors_exists(const KripkeStructure& k, const StateSet& s);
/// States whose successors all lie in s.
StateSet predecessors_forall(const KripkeStructure& k, const StateSet& s);
/// Every state reachable from s in zero or more steps.
StateSet reachable(const KripkeStructure& k, const StateSet& s);

/// Square boolean matrix with boolean (or-of-and) multiplication.
class BoolMatrix {
public:
    explicit BoolMatrix(std::size_t dimension);
    static BoolMatrix identity(std::size_t dimension);
    static BoolMatrix transitions(const KripkeStructure& k);

    std::size_t dimension() const { return rows_.size(); }
    bool at(StateIndex row, StateIndex col) const { return rows_.at(row).contains(col); }
    void set(StateIndex row, StateIndex col) { rows_.at(row).insert(col); }
    const StateSet& row(StateIndex r) const { return rows_.at(r); }

    BoolMatrix operator*(const BoolMatrix& rhs) const;
    /// Row vector times matrix: states reachable in one matrix step from s.
    StateSet apply(const StateSet& s) const;

    bool operator==(const BoolMatrix&) const = default;

private:
    std::vector<StateSet> rows_;
};

/// States reachable from `from` by paths of exactly n transitions, using
/// O(log n) boolean matrix squarings.
StateSet exact_step_reach(const KripkeStructure& k, const StateSet& from, const BigNat& n);

inline constexpr std::size_t kDefaultSubsetCap = std::size_t{1} << 20;

/// Eventually periodic sequence S_0, S_1 = R(S_0), ... with S_{mu+lambda} = S_mu.
struct SubsetTrace {
    std::vector<StateSet> sequence;
    std::size_t mu = 0;
    std::size_t lambda = 1;

    /// S_i for any i >= 0, folding positions past the listed prefix into the cycle.
    const StateSet& at(const BigNat& i) const;
};

/// Throws CapExceeded when more than `cap` distinct sets are produced.
SubsetTrace subset_sequence(const KripkeStructure& k, const StateSet& start,
                            std::size_t cap = kDefaultSubsetCap);

/// Calls `visit` for every s' with s' subset of R(s) that contains a successor of
/// each member of s. Enumeration order is a binary counter over the optional
/// candidates (ascending index), so it is reproducible. `visit` returns false
/// to stop early.
void for_each_covering_successor(const KripkeStructure& k, const StateSet& s,
                                 const std::function<bool(const StateSet&)>& visit);
std::vector<StateSet> covering_successors(const KripkeStructure& k, const StateSet& s);

struct SccDecomposition {
    std::vector<std::size_t> component;  // per state
    std::vector<bool> trivial;           // per component
    std::vector<std::vector<StateIndex>> members;

    std::size_t count() const { return trivial.size(); }
    /// Union of the states of all non-trivial components.
    StateSet nontrivial_states(std::size_t width) const;
};

SccDecomposition scc_decomposition(const KripkeStructure& k);

/// Replaces each state t by the chain (t,1) -> ... -> (t,n); (t,n) inherits
/// the outgoing edges of t, targeting first copies. State (t,i) is named
/// "<t>_<i>" and appears at index t*n + (i-1).
KripkeStructure n_stuttering(const KripkeStructure& k, std::size_t n);

struct RandomKripkeParams {
    std::size_t states = 1;
    double edge_prob = 0.5;
    std::vector<std::string> props;
    double label_prob = 0.5;
    std::uint64_t seed = 0;
};

/// Deterministic for a fixed seed. States are named s0, s1, ...
KripkeStructure random_kripke(const RandomKripkeParams& params);

/// Stable textual digest of a structure (used in fuzz reports).
std::string digest(const KripkeStructure& k);

}  // namespace ctlsync
