#include "ctlsync/checker.hpp"

#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "ctlsync/errors.hpp"

namespace ctlsync {

Witness Witness::sync_point(StateIndex t, BigNat k) {
    Witness w;
    w.kind = Kind::SyncPoint;
    w.state = t;
    w.k = std::move(k);
    return w;
}

Witness Witness::lasso(StateIndex t, std::size_t n, std::size_t lambda) {
    Witness w;
    w.kind = Kind::Lasso;
    w.state = t;
    w.n = n;
    w.lambda = lambda;
    return w;
}

std::string Witness::to_string() const {
    if (kind == Kind::SyncPoint) return k.str();
    return "(" + std::to_string(n) + "," + std::to_string(lambda) + ")";
}

// ---------------------------------------------------------------------------

StateSet eval_ex(const KripkeStructure& k, const StateSet& sem) { return predecessors_exists(k, sem); }

StateSet eval_ax(const KripkeStructure& k, const StateSet& sem) { return predecessors_forall(k, sem); }

StateSet eval_eu(const KripkeStructure& k, const StateSet& sem1, const StateSet& sem2) {
    StateSet result = sem2;
    for (;;) {
        StateSet next = predecessors_exists(k, result) & sem1;
        next |= result;
        if (next == result) return result;
        result = std::move(next);
    }
}

StateSet eval_au(const KripkeStructure& k, const StateSet& sem1, const StateSet& sem2) {
    StateSet result = sem2;
    for (;;) {
        StateSet next = predecessors_forall(k, result) & sem1;
        next |= result;
        if (next == result) return result;
        result = std::move(next);
    }
}

SyncEval eval_ua(const KripkeStructure& k, const StateSet& sem1, const StateSet& sem2,
                 const CheckerLimits& limits) {
    SyncEval out{k.empty_set(), std::vector<std::optional<Witness>>(k.size())};
    for (StateIndex t = 0; t < k.size(); ++t) {
        std::unordered_set<StateSet, StateSetHash> seen;
        StateSet current = k.singleton(t);
        for (std::size_t depth = 0;; ++depth) {
            if (current.is_subset_of(sem2)) {
                out.holds.insert(t);
                out.witnesses[t] = Witness::sync_point(t, depth);
                break;
            }
            if (!current.is_subset_of(sem1)) break;
            if (!seen.insert(current).second) break;
            if (seen.size() > limits.subset_cap)
                throw CapExceeded("UA subset sequence from state '" + k.name(t) + "' exceeded " +
                                  std::to_string(limits.subset_cap) + " sets");
            current = successors(k, current);
        }
    }
    return out;
}

bool verify_ua_witness(const KripkeStructure& k, StateIndex t, const StateSet& sem1, const StateSet& sem2,
                       const BigNat& n) {
    if (t >= k.size() || n < 0) return false;
    const StateSet start = k.singleton(t);
    if (!exact_step_reach(k, start, n).is_subset_of(sem2)) return false;
    if (n > k.size()) return reachable(k, start).is_subset_of(sem1);
    // States visited at depths 0..n-1.
    const auto steps = static_cast<std::size_t>(n);
    StateSet frontier = start;
    for (std::size_t d = 0; d < steps; ++d) {
        if (!frontier.is_subset_of(sem1)) return false;
        frontier = successors(k, frontier);
    }
    return true;
}

SyncEval eval_ue(const KripkeStructure& k, const StateSet& sem1, const StateSet& sem2,
                 const CheckerLimits& limits) {
    SyncEval out{k.empty_set(), std::vector<std::optional<Witness>>(k.size())};
    for (StateIndex t = 0; t < k.size(); ++t) {
        std::unordered_set<StateSet, StateSetHash> visited;
        std::deque<std::pair<StateSet, std::size_t>> queue;
        queue.emplace_back(k.singleton(t), 0);
        visited.insert(queue.front().first);
        while (!queue.empty()) {
            auto [node, depth] = std::move(queue.front());
            queue.pop_front();
            if (node.is_subset_of(sem2)) {
                out.holds.insert(t);
                out.witnesses[t] = Witness::sync_point(t, depth);
                break;
            }
            // Every position before the synchronizing depth needs a sem1 state.
            if (!node.intersects(sem1)) continue;
            for_each_covering_successor(k, node, [&](const StateSet& succ) {
                if (visited.insert(succ).second) {
                    if (visited.size() > limits.powerset_nodes)
                        throw CapExceeded("UE powerset exploration from state '" + k.name(t) + "' exceeded " +
                                          std::to_string(limits.powerset_nodes) + " nodes");
                    queue.emplace_back(succ, depth + 1);
                }
                return true;
            });
        }
    }
    return out;
}

SyncEval eval_gfa(const KripkeStructure& k, const StateSet& sem1, const CheckerLimits& limits) {
    SyncEval out{k.empty_set(), std::vector<std::optional<Witness>>(k.size())};
    for (StateIndex t = 0; t < k.size(); ++t) {
        const SubsetTrace trace = subset_sequence(k, k.singleton(t), limits.subset_cap);
        for (std::size_t i = trace.mu; i < trace.mu + trace.lambda; ++i) {
            if (trace.sequence[i].is_subset_of(sem1)) {
                out.holds.insert(t);
                out.witnesses[t] = Witness::lasso(t, i, trace.lambda);
                break;
            }
        }
    }
    return out;
}

StateSet eval_gfe(const KripkeStructure& k, const StateSet& sem1) {
    const SccDecomposition scc = scc_decomposition(k);
    const StateSet reaches_target = eval_eu(k, k.all_states(), sem1);
    const StateSet cyclic = scc.nontrivial_states(k.size()) & reaches_target;
    return eval_eu(k, k.all_states(), cyclic);
}

StateSet apply_operator(const KripkeStructure& k, Op op, const StateSet& a, const StateSet& b,
                        const CheckerLimits& limits) {
    switch (op) {
        case Op::Not: return a.complement();
        case Op::Or: return a | b;
        case Op::And: return a & b;
        case Op::Implies: return a.complement() | b;
        case Op::ExistsNext: return eval_ex(k, a);
        case Op::ForallNext: return eval_ax(k, a);
        case Op::ExistsUntil: return eval_eu(k, a, b);
        case Op::ForallUntil: return eval_au(k, a, b);
        case Op::UntilExists: return eval_ue(k, a, b, limits).holds;
        case Op::UntilForall: return eval_ua(k, a, b, limits).holds;
        default: throw std::invalid_argument("apply_operator: not a plain operator");
    }
}

// ---------------------------------------------------------------------------

const StateSet& SemMap::at(const Formula& f) const {
    auto it = sets_.find(f.to_string());
    if (it == sets_.end()) throw std::out_of_range("formula not evaluated: " + f.to_string());
    return it->second;
}

std::optional<Witness> SemMap::witness(const Formula& f, StateIndex t) const {
    auto it = witnesses_.find(f.to_string());
    if (it == witnesses_.end() || t >= it->second.size()) return std::nullopt;
    return it->second[t];
}

void SemMap::put(const Formula& f, StateSet s, std::vector<std::optional<Witness>> w) {
    const std::string key = f.to_string();
    sets_.insert_or_assign(key, std::move(s));
    if (!w.empty()) witnesses_.insert_or_assign(key, std::move(w));
}

namespace {

const StateSet& label(const KripkeStructure& k, const Formula& f, SemMap& sem, const CheckerLimits& limits) {
    if (sem.contains(f)) return sem.at(f);
    switch (f.op()) {
        case Op::True: sem.put(f, k.all_states()); break;
        case Op::Atom: sem.put(f, k.prop_states(f.name())); break;
        case Op::Not:
        case Op::ExistsNext:
        case Op::ForallNext: {
            const StateSet a = label(k, f.child(), sem, limits);
            sem.put(f, apply_operator(k, f.op(), a, a, limits));
            break;
        }
        case Op::Or:
        case Op::ExistsUntil:
        case Op::ForallUntil: {
            const StateSet a = label(k, f.lhs(), sem, limits);
            const StateSet b = label(k, f.rhs(), sem, limits);
            sem.put(f, apply_operator(k, f.op(), a, b, limits));
            break;
        }
        case Op::UntilExists:
        case Op::UntilForall: {
            const StateSet a = label(k, f.lhs(), sem, limits);
            const StateSet b = label(k, f.rhs(), sem, limits);
            SyncEval r = f.op() == Op::UntilForall ? eval_ua(k, a, b, limits) : eval_ue(k, a, b, limits);
            sem.put(f, std::move(r.holds), std::move(r.witnesses));
            break;
        }
        case Op::SeqSync: {
            const StateSet a = label(k, f.child(), sem, limits);
            if (f.quant() == Quant::Forall) {
                SyncEval r = eval_gfa(k, a, limits);
                sem.put(f, std::move(r.holds), std::move(r.witnesses));
            } else {
                sem.put(f, eval_gfe(k, a));
            }
            break;
        }
        case Op::False:
        case Op::And:
        case Op::Implies: throw std::logic_error("check: formula not normalized");
    }
    return sem.at(f);
}

}  // namespace

CheckResult check(const KripkeStructure& k, const Formula& phi, const CheckerLimits& limits) {
    CheckResult result{normalize(phi), {}};
    label(k, result.normalized, result.sem, limits);
    return result;
}

}  // namespace ctlsync
