#pragma once

#include <optional>
#include <vector>

#include "ctlsync/checker.hpp"
#include "ctlsync/formula.hpp"
#include "ctlsync/kripke.hpp"

namespace ctlsync {

/// Partition of the states into blocks. Block ids are ordered by each
/// block's smallest member; members are listed ascending.
struct Partition {
    std::vector<std::size_t> block_of;
    std::vector<std::vector<StateIndex>> blocks;

    std::size_t size() const { return blocks.size(); }
    static Partition from_block_ids(const std::vector<std::size_t>& ids);
};

/// Coarsest partition in which equal-block states have equal labels and
/// equal sets of successor blocks (signature refinement to a fixpoint).
Partition bisim_partition(const KripkeStructure& k);

/// True if every block is label-uniform and successor-block-uniform.
bool is_stable(const KripkeStructure& k, const Partition& p);

struct Quotient {
    KripkeStructure structure;
    std::vector<std::size_t> block_of;  // original state -> quotient state
};

/// One state per block, named after its smallest member, carrying the
/// block's common labels; edge B -> B' iff some member of B has a successor in B'.
Quotient quotient_structure(const KripkeStructure& k, const Partition& p);

struct DistinguishOptions {
    std::size_t max_depth = 3;
    bool allow_next = true;
    /// Also enumerate the GF-exists / GF-forall extension. Off by default:
    /// the search targets plain CTL+Sync.
    bool allow_sequences = false;
    std::size_t class_cap = std::size_t{1} << 14;
    CheckerLimits limits;
};

/// Breadth-first search over normalized formulas by nesting depth,
/// deduplicated by their satisfaction vector over all states of k. Returns
/// the first formula true at exactly one of t and u, or nullopt if none
/// exists up to max_depth (which does not prove indistinguishability).
/// Throws CapExceeded when the number of semantic classes exceeds class_cap.
std::optional<Formula> distinguish(const KripkeStructure& k, StateIndex t, StateIndex u,
                                   const DistinguishOptions& options = {});

}  // namespace ctlsync
