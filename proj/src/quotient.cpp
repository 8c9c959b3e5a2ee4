#include "ctlsync/quotient.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "ctlsync/errors.hpp"

namespace ctlsync {

Partition Partition::from_block_ids(const std::vector<std::size_t>& ids) {
    // Renumber by first occurrence so block order follows state order.
    Partition p;
    p.block_of.resize(ids.size());
    std::map<std::size_t, std::size_t> renumber;
    for (StateIndex t = 0; t < ids.size(); ++t) {
        auto [it, inserted] = renumber.emplace(ids[t], p.blocks.size());
        if (inserted) p.blocks.emplace_back();
        p.block_of[t] = it->second;
        p.blocks[it->second].push_back(t);
    }
    return p;
}

namespace {

using Signature = std::pair<std::size_t, std::vector<std::size_t>>;

std::vector<std::size_t> successor_blocks(const KripkeStructure& k, const std::vector<std::size_t>& block_of,
                                          StateIndex t) {
    std::vector<std::size_t> out;
    for (auto s : k.successors(t)) out.push_back(block_of[s]);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

Partition bisim_partition(const KripkeStructure& k) {
    std::vector<std::size_t> ids(k.size());
    {
        std::map<std::vector<std::string>, std::size_t> by_label;
        for (StateIndex t = 0; t < k.size(); ++t)
            ids[t] = by_label.emplace(k.labels(t), by_label.size()).first->second;
    }
    Partition current = Partition::from_block_ids(ids);
    for (;;) {
        std::map<Signature, std::size_t> by_sig;
        for (StateIndex t = 0; t < k.size(); ++t) {
            Signature sig{current.block_of[t], successor_blocks(k, current.block_of, t)};
            ids[t] = by_sig.emplace(std::move(sig), by_sig.size()).first->second;
        }
        Partition next = Partition::from_block_ids(ids);
        // Refinement only splits blocks, so an unchanged count is a fixpoint.
        if (next.size() == current.size()) return next;
        current = std::move(next);
    }
}

bool is_stable(const KripkeStructure& k, const Partition& p) {
    for (const auto& block : p.blocks) {
        const auto labels = k.labels(block.front());
        const auto succ = successor_blocks(k, p.block_of, block.front());
        for (auto t : block)
            if (k.labels(t) != labels || successor_blocks(k, p.block_of, t) != succ) return false;
    }
    return true;
}

Quotient quotient_structure(const KripkeStructure& k, const Partition& p) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> labels;
    std::vector<std::vector<StateIndex>> succ(p.size());
    for (const auto& block : p.blocks) {
        names.push_back(k.name(block.front()));
        labels.push_back(k.labels(block.front()));
    }
    for (StateIndex t = 0; t < k.size(); ++t)
        for (auto s : k.successors(t)) succ[p.block_of[t]].push_back(p.block_of[s]);
    std::optional<StateIndex> init;
    if (k.init()) init = p.block_of[*k.init()];
    return {KripkeStructure(std::move(names), k.props(), labels, std::move(succ), init), p.block_of};
}

// ---------------------------------------------------------------------------

namespace {

struct SemClass {
    Formula formula;
    StateSet sem;
    std::size_t depth;
};

class Enumerator {
public:
    Enumerator(const KripkeStructure& k, StateIndex t, StateIndex u, const DistinguishOptions& o)
        : k_(k), t_(t), u_(u), opt_(o) {}

    std::optional<Formula> run() {
        if (auto f = offer(Formula::truth(), k_.all_states(), 0)) return f;
        for (const auto& p : k_.props())
            if (auto f = offer(Formula::atom(p), k_.prop_states(p), 0)) return f;

        std::vector<Op> unary{Op::Not};
        if (opt_.allow_next) {
            unary.push_back(Op::ExistsNext);
            unary.push_back(Op::ForallNext);
        }
        const std::vector<Op> binary{Op::Or, Op::ExistsUntil, Op::ForallUntil, Op::UntilExists, Op::UntilForall};

        std::size_t level_begin = 0;
        for (std::size_t depth = 1; depth <= opt_.max_depth; ++depth) {
            const std::size_t level_end = classes_.size();
            if (level_begin == level_end) break;  // closure reached
            for (std::size_t i = level_begin; i < level_end; ++i) {
                for (Op op : unary) {
                    const Formula f = Formula::make(op, classes_[i].formula);
                    if (auto r = offer(f, apply_operator(k_, op, classes_[i].sem, classes_[i].sem, opt_.limits), depth))
                        return r;
                }
                if (opt_.allow_sequences) {
                    for (Quant q : {Quant::Exists, Quant::Forall}) {
                        const Formula f = Formula::seq_sync({Temporal::G, Temporal::F}, q, classes_[i].formula);
                        const StateSet s = q == Quant::Exists ? eval_gfe(k_, classes_[i].sem)
                                                              : eval_gfa(k_, classes_[i].sem, opt_.limits).holds;
                        if (auto r = offer(f, s, depth)) return r;
                    }
                }
            }
            for (Op op : binary) {
                for (std::size_t a = 0; a < level_end; ++a) {
                    for (std::size_t b = 0; b < level_end; ++b) {
                        if (a < level_begin && b < level_begin) continue;  // not new at this depth
                        if (op == Op::Or && b <= a) continue;
                        const Formula f = Formula::make(op, classes_[a].formula, classes_[b].formula);
                        if (auto r = offer(f, apply_operator(k_, op, classes_[a].sem, classes_[b].sem, opt_.limits),
                                           depth))
                            return r;
                    }
                }
            }
            level_begin = level_end;
        }
        return std::nullopt;
    }

private:
    std::optional<Formula> offer(const Formula& f, StateSet sem, std::size_t depth) {
        if (sem.contains(t_) != sem.contains(u_)) return f;
        if (index_.count(sem)) return std::nullopt;
        if (classes_.size() >= opt_.class_cap)
            throw CapExceeded("distinguish exceeded " + std::to_string(opt_.class_cap) + " semantic classes");
        index_.emplace(sem, classes_.size());
        classes_.push_back({f, std::move(sem), depth});
        return std::nullopt;
    }

    const KripkeStructure& k_;
    StateIndex t_, u_;
    const DistinguishOptions& opt_;
    std::vector<SemClass> classes_;
    std::unordered_map<StateSet, std::size_t, StateSetHash> index_;
};

}  // namespace

std::optional<Formula> distinguish(const KripkeStructure& k, StateIndex t, StateIndex u,
                                   const DistinguishOptions& options) {
    if (t >= k.size() || u >= k.size()) throw std::out_of_range("distinguish: state index out of range");
    if (t == u) throw std::invalid_argument("distinguish needs two different states");
    return Enumerator(k, t, u, options).run();
}

}  // namespace ctlsync
