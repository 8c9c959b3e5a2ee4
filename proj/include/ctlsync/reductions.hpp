#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctlsync/kripke.hpp"

namespace ctlsync {

struct Literal {
    std::size_t var = 1;  // 1-based
    bool positive = true;
    bool operator==(const Literal&) const = default;
};

using Clause = std::vector<Literal>;

/// Clause list over variables 1..num_vars. Whether clauses are disjunctive
/// (CNF) or conjunctive (DNF) is up to the consumer.
struct NormalForm {
    std::size_t num_vars = 0;
    std::vector<Clause> clauses;

    /// Throws Error for out-of-range or repeated variables, EmptyClause for
    /// an empty clause.
    void validate() const;
};

using CnfFormula = NormalForm;
using DnfFormula = NormalForm;

/// DIMACS: optional `c` comment lines, `p cnf <vars> <clauses>` header,
/// zero-terminated clause lines.
CnfFormula parse_dimacs(std::string_view text);
std::string write_dimacs(const CnfFormula& f);

std::vector<std::uint64_t> first_primes(std::size_t n);

/// (z mod p_1, ..., z mod p_n) if every residue is 0 or 1.
std::optional<std::vector<bool>> assignment_of(std::uint64_t z, const std::vector<std::uint64_t>& primes);

/// A generated structure and its designated initial state.
struct Gadget {
    KripkeStructure structure;
    StateIndex initial = 0;
};

/// One cycle per clause, of length the product of the primes of the clause's
/// variables; position i is labeled q iff i encodes an assignment satisfying
/// the clause. An initial state tI points to every cycle origin.
/// ψ satisfiable iff FA q holds at tI. Cycle states are named c<j>_<i>.
Gadget cnf_to_favorall(const CnfFormula& psi);

/// Feeder-path gadget: m paths of m+1 states from tI, the i-th path
/// labeled p at its i-th state and at its last state, each ending at the
/// origin of clause i's cycle. tI and all cycle states carry p.
/// ψ satisfiable iff [p UE q] holds at tI, with witness depth m+2+z for
/// any satisfying encoding z. Path states are named f<i>_<j>.
Gadget cnf_to_ue(const CnfFormula& psi);

/// Validity gadget for DNF: cycles as in cnf_to_favorall, q on each last
/// cycle state, p on tI and on positions that encode a satisfying
/// assignment of the clause or encode no assignment at all. The last
/// position is never required to carry p, so it must not encode an
/// assignment: a clause over x1 alone gets a cycle of length 6 whose
/// positions also need residue 0 or 1 mod 3 to encode one.
/// ψ valid iff [p UE q] holds at tI.
Gadget dnf_to_ue(const DnfFormula& psi);

/// The fixed structure with uI -> {u1 <-> u2} and uI -> {v1 -> v2 -> v3 -> v1};
/// q holds at u2, v1, v2.
Gadget indist_fixed_structure();

struct IndistPair {
    Gadget fixed;
    Gadget generated;
    CnfFormula padded;
};

/// The fixed structure and cnf_to_favorall of ψ extended over two fresh
/// variables a, b with (a | !b), (!a | !b) and (a | b). The extension keeps
/// satisfiability and guarantees both q and !q cycle origins.
IndistPair indist_pair(const CnfFormula& psi);

/// Disjoint union, states of `second` renamed when they clash with `first`
/// by prefixing `clash_prefix`. Returns the union and the index offset of
/// the second structure.
std::pair<KripkeStructure, std::size_t> disjoint_union(const KripkeStructure& first, const KripkeStructure& second,
                                                       const std::string& clash_prefix = "k2_");

inline constexpr std::size_t kBruteForceMaxVars = 24;

bool evaluate_cnf(const CnfFormula& f, const std::vector<bool>& assignment);  // assignment[v-1]
bool evaluate_dnf(const DnfFormula& f, const std::vector<bool>& assignment);

/// Exhaustive satisfiability; throws SizeExceeded beyond 24 variables.
bool brute_sat(const CnfFormula& f);
/// Exhaustive validity of a DNF; throws SizeExceeded beyond 24 variables.
bool brute_valid(const DnfFormula& f);

/// Smallest z whose residues encode a satisfying assignment, searched up to
/// the product of the first num_vars primes.
std::optional<std::uint64_t> smallest_satisfying_encoding(const CnfFormula& f);

}  // namespace ctlsync
