#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctlsync/checker.hpp"
#include "ctlsync/formula.hpp"
#include "ctlsync/kripke.hpp"

namespace ctlsync {

inline constexpr std::size_t kOracleMaxStates = 12;

/// Brute-force semantics, written independently of the checker: plain
/// adjacency walks, no powerset graph, no SCCs, no matrix squaring.
/// Evaluates the formula as written (derived operators by their
/// definitions, not via normalize). Throws SizeExceeded if k.size() > 12.
SemMap oracle_eval(const KripkeStructure& k, const Formula& phi);

struct FuzzMismatch {
    std::uint64_t seed = 0;  // structure seed, replayable with fuzz_structure()
    std::string digest;
    std::string formula;
    std::string state;
    bool checker = false;
    bool oracle = false;
};

struct FuzzReport {
    std::size_t trials = 0;
    std::size_t comparisons = 0;  // (structure, template, state) triples
    std::vector<FuzzMismatch> mismatches;

    bool operator==(const FuzzReport& other) const;
};

/// Seed of the structure used in a given trial.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);
/// Random structure over {p, q} with 1..max_states states.
KripkeStructure fuzz_structure(std::uint64_t structure_seed, std::size_t max_states);

/// Default template suite: p UA q, p UE q, A[p U q], E[p U q], FA p, GE p,
/// GFA p, GFE p, FGA p, FGE p.
std::vector<Formula> default_templates();

FuzzReport diff_fuzz(std::size_t trials, std::size_t max_states, const std::vector<Formula>& templates,
                     std::uint64_t seed);

}  // namespace ctlsync
