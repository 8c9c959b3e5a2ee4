#include "ctlsync/kripke.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <unordered_map>

#include "ctlsync/errors.hpp"

namespace ctlsync {

KripkeStructure::KripkeStructure(std::vector<std::string> state_names,
                                 std::vector<std::string> props,
                                 const std::vector<std::vector<std::string>>& labels,
                                 std::vector<std::vector<StateIndex>> successors,
                                 std::optional<StateIndex> init)
    : names_(std::move(state_names)), props_(std::move(props)), init_(init) {
    const std::size_t n = names_.size();
    if (labels.size() != n || successors.size() != n)
        throw ValidationError("labels and successors must have one entry per state");

    for (StateIndex t = 0; t < n; ++t) {
        if (!by_name_.emplace(names_[t], t).second)
            throw ValidationError("duplicate state name '" + names_[t] + "'");
    }

    std::map<std::string, std::size_t, std::less<>> prop_index;
    for (std::size_t i = 0; i < props_.size(); ++i) {
        if (!prop_index.emplace(props_[i], i).second)
            throw ValidationError("duplicate proposition '" + props_[i] + "'");
    }
    prop_sets_.assign(props_.size(), StateSet(n));
    for (StateIndex t = 0; t < n; ++t) {
        for (const auto& p : labels[t]) {
            auto it = prop_index.find(p);
            if (it == prop_index.end())
                throw ValidationError("state '" + names_[t] + "' carries undeclared proposition '" + p + "'");
            prop_sets_[it->second].insert(t);
        }
    }

    succ_ = std::move(successors);
    succ_sets_.assign(n, StateSet(n));
    for (StateIndex t = 0; t < n; ++t) {
        auto& out = succ_[t];
        for (auto s : out) {
            if (s >= n)
                throw ValidationError("state '" + names_[t] + "' has successor index " + std::to_string(s) +
                                      " out of range");
        }
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        if (out.empty())
            throw ValidationError("totality violation: state '" + names_[t] + "' has no successor");
        for (auto s : out) succ_sets_[t].insert(s);
    }
    if (init_ && *init_ >= n) throw ValidationError("initial state index out of range");
}

std::optional<StateIndex> KripkeStructure::find(std::string_view name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end()) return std::nullopt;
    return it->second;
}

StateIndex KripkeStructure::index_of(std::string_view name) const {
    auto t = find(name);
    if (!t) throw ValidationError("unknown state '" + std::string(name) + "'");
    return *t;
}

bool KripkeStructure::has_prop(std::string_view prop) const {
    return std::find(props_.begin(), props_.end(), prop) != props_.end();
}

StateSet KripkeStructure::prop_states(std::string_view prop) const {
    for (std::size_t i = 0; i < props_.size(); ++i)
        if (props_[i] == prop) return prop_sets_[i];
    return StateSet(size());
}

std::vector<std::string> KripkeStructure::labels(StateIndex t) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < props_.size(); ++i)
        if (prop_sets_[i].contains(t)) out.push_back(props_[i]);
    return out;
}

bool KripkeStructure::labeled(StateIndex t, std::string_view prop) const {
    return prop_states(prop).contains(t);
}

std::size_t KripkeStructure::edge_count() const {
    std::size_t e = 0;
    for (const auto& s : succ_) e += s.size();
    return e;
}

bool KripkeStructure::is_deterministic() const {
    return std::all_of(succ_.begin(), succ_.end(), [](const auto& s) { return s.size() == 1; });
}

// ---------------------------------------------------------------------------

StateIndex KripkeBuilder::add_state(std::string name, std::vector<std::string> props) {
    names_.push_back(std::move(name));
    labels_.emplace_back();
    succ_.emplace_back();
    const StateIndex t = names_.size() - 1;
    for (auto& p : props) add_label(t, std::move(p));
    return t;
}

void KripkeBuilder::declare_prop(std::string prop) {
    if (std::find(props_.begin(), props_.end(), prop) == props_.end()) props_.push_back(std::move(prop));
}

void KripkeBuilder::add_label(StateIndex t, std::string prop) {
    declare_prop(prop);
    auto& l = labels_.at(t);
    if (std::find(l.begin(), l.end(), prop) == l.end()) l.push_back(std::move(prop));
}

void KripkeBuilder::add_edge(StateIndex from, StateIndex to) { succ_.at(from).push_back(to); }

void KripkeBuilder::complete_selfloops() {
    for (StateIndex t = 0; t < succ_.size(); ++t)
        if (succ_[t].empty()) succ_[t].push_back(t);
}

KripkeStructure KripkeBuilder::build() const { return KripkeStructure(names_, props_, labels_, succ_, init_); }

// ---------------------------------------------------------------------------

StateSet successors(const KripkeStructure& k, const StateSet& s) {
    StateSet out(k.size());
    s.for_each([&](StateIndex t) { out |= k.successor_set(t); });
    return out;
}

StateSet predecessors_exists(const KripkeStructure& k, const StateSet& s) {
    StateSet out(k.size());
    for (StateIndex t = 0; t < k.size(); ++t)
        if (k.successor_set(t).intersects(s)) out.insert(t);
    return out;
}

StateSet predecessors_forall(const KripkeStructure& k, const StateSet& s) {
    StateSet out(k.size());
    for (StateIndex t = 0; t < k.size(); ++t)
        if (k.successor_set(t).is_subset_of(s)) out.insert(t);
    return out;
}

StateSet reachable(const KripkeStructure& k, const StateSet& s) {
    StateSet seen = s;
    StateSet frontier = s;
    while (!frontier.empty()) {
        StateSet next = successors(k, frontier);
        next.subtract(seen);
        seen |= next;
        frontier = std::move(next);
    }
    return seen;
}

// ---------------------------------------------------------------------------

BoolMatrix::BoolMatrix(std::size_t dimension) : rows_(dimension, StateSet(dimension)) {}

BoolMatrix BoolMatrix::identity(std::size_t dimension) {
    BoolMatrix m(dimension);
    for (StateIndex i = 0; i < dimension; ++i) m.set(i, i);
    return m;
}

BoolMatrix BoolMatrix::transitions(const KripkeStructure& k) {
    BoolMatrix m(k.size());
    for (StateIndex t = 0; t < k.size(); ++t) m.rows_[t] = k.successor_set(t);
    return m;
}

BoolMatrix BoolMatrix::operator*(const BoolMatrix& rhs) const {
    if (rhs.dimension() != dimension()) throw std::invalid_argument("matrix dimension mismatch");
    BoolMatrix out(dimension());
    for (StateIndex i = 0; i < dimension(); ++i) out.rows_[i] = rhs.apply(rows_[i]);
    return out;
}

StateSet BoolMatrix::apply(const StateSet& s) const {
    StateSet out(dimension());
    s.for_each([&](StateIndex j) { out |= rows_[j]; });
    return out;
}

StateSet exact_step_reach(const KripkeStructure& k, const StateSet& from, const BigNat& n) {
    if (n < 0) throw std::invalid_argument("step count must be non-negative");
    StateSet result = from;
    BoolMatrix power = BoolMatrix::transitions(k);
    const std::size_t bits = n == 0 ? 0 : boost::multiprecision::msb(n) + 1;
    for (std::size_t b = 0; b < bits; ++b) {
        if (boost::multiprecision::bit_test(n, b)) result = power.apply(result);
        if (b + 1 < bits) power = power * power;
    }
    return result;
}

// ---------------------------------------------------------------------------

const StateSet& SubsetTrace::at(const BigNat& i) const {
    if (i < sequence.size()) return sequence[static_cast<std::size_t>(i)];
    const BigNat offset = (i - mu) % lambda;
    return sequence[mu + static_cast<std::size_t>(offset)];
}

SubsetTrace subset_sequence(const KripkeStructure& k, const StateSet& start, std::size_t cap) {
    if (start.empty()) throw std::invalid_argument("subset_sequence requires a nonempty start set");
    SubsetTrace trace;
    std::unordered_map<StateSet, std::size_t, StateSetHash> first_index;
    StateSet current = start;
    for (;;) {
        auto [it, inserted] = first_index.emplace(current, trace.sequence.size());
        if (!inserted) {
            trace.mu = it->second;
            trace.lambda = trace.sequence.size() - it->second;
            return trace;
        }
        if (trace.sequence.size() >= cap)
            throw CapExceeded("subset sequence exceeded " + std::to_string(cap) + " distinct sets");
        trace.sequence.push_back(current);
        current = successors(k, current);
    }
}

// ---------------------------------------------------------------------------

void for_each_covering_successor(const KripkeStructure& k, const StateSet& s,
                                 const std::function<bool(const StateSet&)>& visit) {
    if (s.empty()) throw std::invalid_argument("covering successors of the empty set");
    // Deterministic members force their unique successor into every covering set.
    StateSet forced(k.size());
    StateSet image(k.size());
    s.for_each([&](StateIndex t) {
        const auto& succ = k.successors(t);
        if (succ.size() == 1) forced.insert(succ.front());
        image |= k.successor_set(t);
    });
    StateSet optional = image;
    optional.subtract(forced);
    const std::vector<StateIndex> free = optional.members();
    if (free.size() > 62)
        throw CapExceeded("covering successor enumeration over " + std::to_string(free.size()) + " free states");

    std::vector<StateIndex> members;
    s.for_each([&](StateIndex t) {
        if (!k.successor_set(t).intersects(forced)) members.push_back(t);
    });

    const std::uint64_t limit = std::uint64_t{1} << free.size();
    for (std::uint64_t mask = 0; mask < limit; ++mask) {
        StateSet candidate = forced;
        for (std::size_t b = 0; b < free.size(); ++b)
            if ((mask >> b) & 1U) candidate.insert(free[b]);
        const bool covers = std::all_of(members.begin(), members.end(), [&](StateIndex t) {
            return k.successor_set(t).intersects(candidate);
        });
        if (covers && !visit(candidate)) return;
    }
}

std::vector<StateSet> covering_successors(const KripkeStructure& k, const StateSet& s) {
    std::vector<StateSet> out;
    for_each_covering_successor(k, s, [&](const StateSet& c) {
        out.push_back(c);
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------

StateSet SccDecomposition::nontrivial_states(std::size_t width) const {
    StateSet out(width);
    for (StateIndex t = 0; t < component.size(); ++t)
        if (!trivial[component[t]]) out.insert(t);
    return out;
}

SccDecomposition scc_decomposition(const KripkeStructure& k) {
    // Iterative Tarjan.
    const std::size_t n = k.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<StateIndex> stack;
    std::size_t next_index = 0;

    SccDecomposition result;
    result.component.assign(n, 0);

    struct Frame {
        StateIndex state;
        std::size_t next_child;
    };
    std::vector<Frame> call;

    for (StateIndex root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;

        while (!call.empty()) {
            Frame& f = call.back();
            const auto& succ = k.successors(f.state);
            if (f.next_child < succ.size()) {
                const StateIndex w = succ[f.next_child++];
                if (index[w] == unvisited) {
                    index[w] = lowlink[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    lowlink[f.state] = std::min(lowlink[f.state], index[w]);
                }
                continue;
            }
            const StateIndex v = f.state;
            call.pop_back();
            if (!call.empty()) lowlink[call.back().state] = std::min(lowlink[call.back().state], lowlink[v]);
            if (lowlink[v] != index[v]) continue;

            const std::size_t id = result.members.size();
            std::vector<StateIndex> members;
            StateIndex w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                result.component[w] = id;
                members.push_back(w);
            } while (w != v);
            std::sort(members.begin(), members.end());
            const bool trivial = members.size() == 1 && !k.successor_set(members[0]).contains(members[0]);
            result.trivial.push_back(trivial);
            result.members.push_back(std::move(members));
        }
    }
    return result;
}

// ---------------------------------------------------------------------------

KripkeStructure n_stuttering(const KripkeStructure& k, std::size_t n) {
    if (n == 0) throw std::invalid_argument("stuttering factor must be at least 1");
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> labels;
    std::vector<std::vector<StateIndex>> succ;
    names.reserve(k.size() * n);
    for (StateIndex t = 0; t < k.size(); ++t) {
        const auto l = k.labels(t);
        for (std::size_t i = 1; i <= n; ++i) {
            names.push_back(k.name(t) + "_" + std::to_string(i));
            labels.push_back(l);
            if (i < n) {
                succ.push_back({t * n + i});
            } else {
                std::vector<StateIndex> out;
                for (auto s : k.successors(t)) out.push_back(s * n);
                succ.push_back(std::move(out));
            }
        }
    }
    std::optional<StateIndex> init;
    if (k.init()) init = *k.init() * n;
    return KripkeStructure(std::move(names), k.props(), labels, std::move(succ), init);
}

// ---------------------------------------------------------------------------

KripkeStructure random_kripke(const RandomKripkeParams& params) {
    if (params.states == 0) throw std::invalid_argument("random_kripke needs at least one state");
    if (params.edge_prob < 0 || params.edge_prob > 1 || params.label_prob < 0 || params.label_prob > 1)
        throw std::invalid_argument("probabilities must lie in [0,1]");
    std::mt19937_64 rng(params.seed);
    // Draw from the raw engine so the stream does not depend on the
    // standard library's distribution implementations.
    auto coin = [&](double p) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        return u < p;
    };
    const std::size_t n = params.states;
    KripkeBuilder b;
    for (const auto& p : params.props) b.declare_prop(p);
    for (StateIndex t = 0; t < n; ++t) b.add_state("s" + std::to_string(t));
    for (StateIndex t = 0; t < n; ++t)
        for (StateIndex u = 0; u < n; ++u)
            if (coin(params.edge_prob)) b.add_edge(t, u);
    for (StateIndex t = 0; t < n; ++t)
        if (b.successors(t).empty()) b.add_edge(t, static_cast<StateIndex>(rng() % n));
    for (StateIndex t = 0; t < n; ++t)
        for (const auto& p : params.props)
            if (coin(params.label_prob)) b.add_label(t, p);
    return b.build();
}

std::string digest(const KripkeStructure& k) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](std::string_view s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        h ^= 0xff;
        h *= 1099511628211ULL;
    };
    for (StateIndex t = 0; t < k.size(); ++t) {
        mix(k.name(t));
        auto labels = k.labels(t);
        std::sort(labels.begin(), labels.end());  // independent of proposition declaration order
        for (const auto& l : labels) mix(l);
        for (auto s : k.successors(t)) mix(std::to_string(s));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf) + "/" + std::to_string(k.size()) + "s" + std::to_string(k.edge_count()) + "e";
}

}  // namespace ctlsync
