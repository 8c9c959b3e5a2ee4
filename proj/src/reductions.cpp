#include "ctlsync/reductions.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ctlsync/errors.hpp"

namespace ctlsync {

void NormalForm::validate() const {
    for (std::size_t c = 0; c < clauses.size(); ++c) {
        if (clauses[c].empty()) throw EmptyClause("clause " + std::to_string(c + 1) + " is empty");
        std::set<std::size_t> seen;
        for (const auto& lit : clauses[c]) {
            if (lit.var < 1 || lit.var > num_vars)
                throw Error("clause " + std::to_string(c + 1) + " uses variable " + std::to_string(lit.var) +
                            " outside 1.." + std::to_string(num_vars));
            if (!seen.insert(lit.var).second)
                throw Error("clause " + std::to_string(c + 1) + " repeats variable " + std::to_string(lit.var));
        }
    }
}

CnfFormula parse_dimacs(std::string_view text) {
    CnfFormula f;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    Clause current;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string first;
        if (!(ls >> first)) continue;
        if (first == "c" || first[0] == 'c') continue;
        if (first == "%") break;  // SATLIB trailer
        if (first == "p") {
            std::string fmt;
            long long vars = -1, clauses = -1;
            if (have_header || !(ls >> fmt >> vars >> clauses) || fmt != "cnf" || vars < 0 || clauses < 0)
                throw ParseError("malformed 'p cnf <vars> <clauses>' header", line_no, 1);
            f.num_vars = static_cast<std::size_t>(vars);
            declared_clauses = static_cast<std::size_t>(clauses);
            have_header = true;
            continue;
        }
        if (!have_header) throw ParseError("clause before 'p cnf' header", line_no, 1);
        std::istringstream lits(line);
        long long v;
        while (lits >> v) {
            if (v == 0) {
                f.clauses.push_back(current);
                current.clear();
                continue;
            }
            current.push_back({static_cast<std::size_t>(v < 0 ? -v : v), v > 0});
        }
        if (!lits.eof()) throw ParseError("non-integer token in clause line", line_no, 1);
    }
    if (!have_header) throw ParseError("missing 'p cnf' header", line_no, 1);
    if (!current.empty()) f.clauses.push_back(current);
    if (f.clauses.size() != declared_clauses)
        throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                             std::to_string(f.clauses.size()),
                         line_no, 1);
    f.validate();
    return f;
}

std::string write_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& c : f.clauses) {
        for (const auto& lit : c) out << (lit.positive ? "" : "-") << lit.var << ' ';
        out << "0\n";
    }
    return out.str();
}

std::vector<std::uint64_t> first_primes(std::size_t n) {
    std::vector<std::uint64_t> primes;
    if (n == 0) return primes;
    std::size_t limit = 16;
    for (;;) {
        std::vector<bool> composite(limit + 1, false);
        primes.clear();
        for (std::size_t i = 2; i <= limit && primes.size() < n; ++i) {
            if (composite[i]) continue;
            primes.push_back(i);
            for (std::size_t j = i * i; j <= limit; j += i) composite[j] = true;
        }
        if (primes.size() == n) return primes;
        limit *= 2;
    }
}

std::optional<std::vector<bool>> assignment_of(std::uint64_t z, const std::vector<std::uint64_t>& primes) {
    std::vector<bool> bits;
    bits.reserve(primes.size());
    for (auto p : primes) {
        const auto r = z % p;
        if (r > 1) return std::nullopt;
        bits.push_back(r == 1);
    }
    return bits;
}

namespace {

struct ClauseCycle {
    std::vector<std::uint64_t> primes;  // one per literal, clause order, then any guard modulus
    std::uint64_t length = 1;
};

ClauseCycle cycle_of(const Clause& c, const std::vector<std::uint64_t>& primes) {
    ClauseCycle cc;
    for (const auto& lit : c) {
        cc.primes.push_back(primes[lit.var - 1]);
        cc.length *= primes[lit.var - 1];
    }
    return cc;
}

/// Residue vector of position i, if binary, evaluated as a disjunction
/// (`conjunctive` false) or conjunction of the clause's literals.
std::optional<bool> clause_value(const Clause& c, const ClauseCycle& cc, std::uint64_t i, bool conjunctive) {
    const auto bits = assignment_of(i, cc.primes);
    if (!bits) return std::nullopt;
    bool any = false, all = true;
    for (std::size_t l = 0; l < c.size(); ++l) {
        const bool v = (*bits)[l] == c[l].positive;
        any = any || v;
        all = all && v;
    }
    return conjunctive ? all : any;
}

void require_clauses(const NormalForm& f) {
    f.validate();
    if (f.clauses.empty()) throw Error("gadget construction needs at least one clause");
}

/// Adds clause cycles c<j>_<i>; returns origin indices. `label` decides the
/// propositions of position i of clause j. With `odd_last`, a cycle whose
/// last position would encode an assignment (a clause over x1 alone) is
/// tripled and its positions must also be 0 or 1 mod 3 to encode one.
template <typename LabelFn>
std::vector<StateIndex> add_cycles(KripkeBuilder& b, const NormalForm& f, LabelFn&& label, bool odd_last = false) {
    const auto primes = first_primes(f.num_vars);
    std::vector<StateIndex> origins;
    for (std::size_t j = 0; j < f.clauses.size(); ++j) {
        ClauseCycle cc = cycle_of(f.clauses[j], primes);
        if (odd_last && cc.length == 2) {
            cc.primes.push_back(3);
            cc.length *= 3;
        }
        const StateIndex origin = b.size();
        for (std::uint64_t i = 0; i < cc.length; ++i)
            b.add_state("c" + std::to_string(j + 1) + "_" + std::to_string(i),
                        label(f.clauses[j], cc, i));
        for (std::uint64_t i = 0; i < cc.length; ++i)
            b.add_edge(origin + i, origin + (i + 1) % cc.length);
        origins.push_back(origin);
    }
    return origins;
}

}  // namespace

Gadget cnf_to_favorall(const CnfFormula& psi) {
    require_clauses(psi);
    KripkeBuilder b;
    b.declare_prop("q");
    const StateIndex init = b.add_state("tI");
    const auto origins = add_cycles(b, psi, [](const Clause& c, const ClauseCycle& cc, std::uint64_t i) {
        return clause_value(c, cc, i, false).value_or(false) ? std::vector<std::string>{"q"}
                                                             : std::vector<std::string>{};
    });
    for (auto o : origins) b.add_edge(init, o);
    b.set_init(init);
    return {b.build(), init};
}

Gadget cnf_to_ue(const CnfFormula& psi) {
    require_clauses(psi);
    const std::size_t m = psi.clauses.size();
    KripkeBuilder b;
    b.declare_prop("p");
    b.declare_prop("q");
    const StateIndex init = b.add_state("tI", {"p"});
    std::vector<StateIndex> path_ends;
    for (std::size_t i = 1; i <= m; ++i) {
        StateIndex prev = init;
        for (std::size_t j = 1; j <= m + 1; ++j) {
            std::vector<std::string> props;
            if (j == i || j == m + 1) props.push_back("p");
            const StateIndex s = b.add_state("f" + std::to_string(i) + "_" + std::to_string(j), props);
            b.add_edge(prev, s);
            prev = s;
        }
        path_ends.push_back(prev);
    }
    const auto origins = add_cycles(b, psi, [](const Clause& c, const ClauseCycle& cc, std::uint64_t i) {
        std::vector<std::string> props{"p"};
        if (clause_value(c, cc, i, false).value_or(false)) props.push_back("q");
        return props;
    });
    for (std::size_t i = 0; i < m; ++i) b.add_edge(path_ends[i], origins[i]);
    b.set_init(init);
    return {b.build(), init};
}

Gadget dnf_to_ue(const DnfFormula& psi) {
    require_clauses(psi);
    KripkeBuilder b;
    b.declare_prop("p");
    b.declare_prop("q");
    const StateIndex init = b.add_state("tI", {"p"});
    const auto origins = add_cycles(b, psi, [](const Clause& c, const ClauseCycle& cc, std::uint64_t i) {
        std::vector<std::string> props;
        const auto v = clause_value(c, cc, i, true);
        if (!v || *v) props.push_back("p");
        if (i + 1 == cc.length) props.push_back("q");
        return props;
    }, true);
    for (auto o : origins) b.add_edge(init, o);
    b.set_init(init);
    return {b.build(), init};
}

Gadget indist_fixed_structure() {
    KripkeBuilder b;
    b.declare_prop("q");
    const auto ui = b.add_state("uI");
    const auto u1 = b.add_state("u1");
    const auto u2 = b.add_state("u2", {"q"});
    const auto v1 = b.add_state("v1", {"q"});
    const auto v2 = b.add_state("v2", {"q"});
    const auto v3 = b.add_state("v3");
    b.add_edge(ui, u1);
    b.add_edge(ui, v1);
    b.add_edge(u1, u2);
    b.add_edge(u2, u1);
    b.add_edge(v1, v2);
    b.add_edge(v2, v3);
    b.add_edge(v3, v1);
    b.set_init(ui);
    return {b.build(), ui};
}

IndistPair indist_pair(const CnfFormula& psi) {
    psi.validate();
    CnfFormula padded = psi;
    const std::size_t a = psi.num_vars + 1;
    const std::size_t c = psi.num_vars + 2;
    padded.num_vars += 2;
    padded.clauses.push_back({{a, true}, {c, false}});   // mixed polarity
    padded.clauses.push_back({{a, false}, {c, false}});  // negative only
    padded.clauses.push_back({{a, true}, {c, true}});    // positive only: a !q origin
    return {indist_fixed_structure(), cnf_to_favorall(padded), padded};
}

std::pair<KripkeStructure, std::size_t> disjoint_union(const KripkeStructure& first, const KripkeStructure& second,
                                                       const std::string& clash_prefix) {
    KripkeBuilder b;
    for (const auto& p : first.props()) b.declare_prop(p);
    for (const auto& p : second.props()) b.declare_prop(p);
    for (StateIndex t = 0; t < first.size(); ++t) b.add_state(first.name(t), first.labels(t));
    const std::size_t offset = first.size();
    for (StateIndex t = 0; t < second.size(); ++t) {
        std::string name = second.name(t);
        if (first.find(name)) name = clash_prefix + name;
        b.add_state(name, second.labels(t));
    }
    for (StateIndex t = 0; t < first.size(); ++t)
        for (auto s : first.successors(t)) b.add_edge(t, s);
    for (StateIndex t = 0; t < second.size(); ++t)
        for (auto s : second.successors(t)) b.add_edge(offset + t, offset + s);
    if (first.init()) b.set_init(*first.init());
    return {b.build(), offset};
}

bool evaluate_cnf(const CnfFormula& f, const std::vector<bool>& assignment) {
    return std::all_of(f.clauses.begin(), f.clauses.end(), [&](const Clause& c) {
        return std::any_of(c.begin(), c.end(), [&](const Literal& l) { return assignment[l.var - 1] == l.positive; });
    });
}

bool evaluate_dnf(const DnfFormula& f, const std::vector<bool>& assignment) {
    return std::any_of(f.clauses.begin(), f.clauses.end(), [&](const Clause& c) {
        return std::all_of(c.begin(), c.end(), [&](const Literal& l) { return assignment[l.var - 1] == l.positive; });
    });
}

namespace {

template <typename Pred>
bool for_all_assignments(std::size_t n, Pred&& pred) {
    if (n > kBruteForceMaxVars)
        throw SizeExceeded("brute force limited to " + std::to_string(kBruteForceMaxVars) + " variables");
    std::vector<bool> a(n, false);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t v = 0; v < n; ++v) a[v] = (mask >> v) & 1U;
        if (!pred(a)) return false;
    }
    return true;
}

}  // namespace

bool brute_sat(const CnfFormula& f) {
    f.validate();
    return !for_all_assignments(f.num_vars, [&](const std::vector<bool>& a) { return !evaluate_cnf(f, a); });
}

bool brute_valid(const DnfFormula& f) {
    f.validate();
    return for_all_assignments(f.num_vars, [&](const std::vector<bool>& a) { return evaluate_dnf(f, a); });
}

std::optional<std::uint64_t> smallest_satisfying_encoding(const CnfFormula& f) {
    f.validate();
    const auto primes = first_primes(f.num_vars);
    std::uint64_t bound = 1;
    std::vector<bool> used(f.num_vars, false);
    for (const auto& c : f.clauses)
        for (const auto& l : c) used[l.var - 1] = true;
    for (std::size_t v = 0; v < f.num_vars; ++v)
        if (used[v]) bound *= primes[v];
    std::vector<ClauseCycle> cycles;
    for (const auto& c : f.clauses) cycles.push_back(cycle_of(c, primes));
    for (std::uint64_t z = 0; z < bound; ++z) {
        bool ok = true;
        for (std::size_t j = 0; j < f.clauses.size() && ok; ++j)
            ok = clause_value(f.clauses[j], cycles[j], z % cycles[j].length, false).value_or(false);
        if (ok) return z;
    }
    return std::nullopt;
}

}  // namespace ctlsync
