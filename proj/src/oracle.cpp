#include "ctlsync/oracle.hpp"

#include <map>
#include <stdexcept>

#include "ctlsync/errors.hpp"

namespace ctlsync {

namespace {

using Bits = std::vector<bool>;

class Oracle {
public:
    explicit Oracle(const KripkeStructure& k) : k_(k), n_(k.size()) {}

    Bits eval(const Formula& f) {
        const std::string key = f.to_string();
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        Bits r = compute(f);
        memo_.emplace(key, r);
        return r;
    }

    SemMap to_semmap() const {
        SemMap out;
        for (const auto& [key, bits] : memo_) out.put(parse_formula(key), to_set(bits));
        return out;
    }

private:
    StateSet to_set(const Bits& b) const {
        StateSet s(n_);
        for (std::size_t i = 0; i < n_; ++i)
            if (b[i]) s.insert(i);
        return s;
    }

    Bits image(const Bits& s) const {
        Bits out(n_, false);
        for (std::size_t t = 0; t < n_; ++t)
            if (s[t])
                for (auto u : k_.successors(t)) out[u] = true;
        return out;
    }

    Bits preimage(const Bits& s) const {
        Bits out(n_, false);
        for (std::size_t t = 0; t < n_; ++t)
            for (auto u : k_.successors(t))
                if (s[u]) out[t] = true;
        return out;
    }

    static bool subset(const Bits& a, const Bits& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] && !b[i]) return false;
        return true;
    }

    static bool meets(const Bits& a, const Bits& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] && b[i]) return true;
        return false;
    }

    static Bits negate(Bits a) {
        a.flip();
        return a;
    }

    // Sequence S_0 = {t}, S_{i+1} = image(S_i) until the first repeat,
    // detected by linear scan. Returns (sets, mu).
    std::pair<std::vector<Bits>, std::size_t> sequence_from(std::size_t t) const {
        std::vector<Bits> seq;
        Bits cur(n_, false);
        cur[t] = true;
        for (;;) {
            for (std::size_t i = 0; i < seq.size(); ++i)
                if (seq[i] == cur) return {seq, i};
            seq.push_back(cur);
            cur = image(cur);
        }
    }

    bool exists_path_until(std::size_t t, std::size_t budget, const Bits& a, const Bits& b,
                           std::map<std::pair<std::size_t, std::size_t>, bool>& memo) const {
        if (b[t]) return true;
        if (!a[t] || budget == 0) return false;
        auto key = std::make_pair(t, budget);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool r = false;
        for (auto u : k_.successors(t))
            if (exists_path_until(u, budget - 1, a, b, memo)) {
                r = true;
                break;
            }
        memo[key] = r;
        return r;
    }

    bool all_paths_until(std::size_t t, std::size_t budget, const Bits& a, const Bits& b,
                         std::map<std::pair<std::size_t, std::size_t>, bool>& memo) const {
        if (b[t]) return true;
        if (!a[t] || budget == 0) return false;
        auto key = std::make_pair(t, budget);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool r = true;
        for (auto u : k_.successors(t))
            if (!all_paths_until(u, budget - 1, a, b, memo)) {
                r = false;
                break;
            }
        memo[key] = r;
        return r;
    }

    Bits until_path(const Bits& a, const Bits& b, bool universal) const {
        Bits out(n_, false);
        std::map<std::pair<std::size_t, std::size_t>, bool> memo;
        for (std::size_t t = 0; t < n_; ++t)
            out[t] = universal ? all_paths_until(t, n_, a, b, memo) : exists_path_until(t, n_, a, b, memo);
        return out;
    }

    Bits until_forall(const Bits& a, const Bits& b) const {
        Bits out(n_, false);
        for (std::size_t t = 0; t < n_; ++t) {
            const auto [seq, mu] = sequence_from(t);
            for (const Bits& s : seq) {
                if (subset(s, b)) {
                    out[t] = true;
                    break;
                }
                if (!subset(s, a)) break;
            }
        }
        return out;
    }

    // For each candidate depth n <= 2^|T|: for every earlier position j some
    // path is in `a` at j and in `b` at n. reach_b[m] = states with a path of
    // exactly m steps into b.
    Bits until_exists(const Bits& a, const Bits& b) const {
        const std::size_t bound = std::size_t{1} << n_;
        std::vector<Bits> reach_b{b};
        for (std::size_t m = 1; m <= bound; ++m) reach_b.push_back(preimage(reach_b.back()));

        Bits out(n_, false);
        for (std::size_t t = 0; t < n_; ++t) {
            if (b[t]) {
                out[t] = true;
                continue;
            }
            std::vector<Bits> exact;  // exact[j] = states at exactly j steps from t
            Bits cur(n_, false);
            cur[t] = true;
            for (std::size_t j = 0; j < bound; ++j) {
                exact.push_back(cur);
                cur = image(cur);
            }
            for (std::size_t n = 1; n <= bound && !out[t]; ++n) {
                bool ok = true;
                for (std::size_t j = 0; j < n && ok; ++j) {
                    Bits start = exact[j];
                    for (std::size_t i = 0; i < n_; ++i) start[i] = start[i] && a[i];
                    ok = meets(start, reach_b[n - j]);
                }
                out[t] = ok;
            }
        }
        return out;
    }

    Bits gf(const Bits& a, bool universal) const {
        Bits out(n_, false);
        for (std::size_t t = 0; t < n_; ++t) {
            const auto [seq, mu] = sequence_from(t);
            for (std::size_t i = mu; i < seq.size(); ++i) {
                if (universal ? subset(seq[i], a) : meets(seq[i], a)) {
                    out[t] = true;
                    break;
                }
            }
        }
        return out;
    }

    Bits compute(const Formula& f) {
        const Bits all(n_, true);
        switch (f.op()) {
            case Op::True: return all;
            case Op::False: return Bits(n_, false);
            case Op::Atom: {
                Bits out(n_, false);
                for (std::size_t t = 0; t < n_; ++t) out[t] = k_.labeled(t, f.name());
                return out;
            }
            case Op::Not: return negate(eval(f.child()));
            case Op::Or:
            case Op::And:
            case Op::Implies: {
                const Bits a = eval(f.lhs());
                const Bits b = eval(f.rhs());
                Bits out(n_, false);
                for (std::size_t t = 0; t < n_; ++t)
                    out[t] = f.op() == Op::Or ? (a[t] || b[t]) : f.op() == Op::And ? (a[t] && b[t]) : (!a[t] || b[t]);
                return out;
            }
            case Op::ExistsNext:
            case Op::ForallNext: {
                const Bits a = eval(f.child());
                Bits out(n_, f.op() == Op::ForallNext);
                for (std::size_t t = 0; t < n_; ++t)
                    for (auto u : k_.successors(t)) {
                        if (f.op() == Op::ExistsNext && a[u]) out[t] = true;
                        if (f.op() == Op::ForallNext && !a[u]) out[t] = false;
                    }
                return out;
            }
            case Op::ExistsUntil: return until_path(eval(f.lhs()), eval(f.rhs()), false);
            case Op::ForallUntil: return until_path(eval(f.lhs()), eval(f.rhs()), true);
            case Op::UntilForall: return until_forall(eval(f.lhs()), eval(f.rhs()));
            case Op::UntilExists: return until_exists(eval(f.lhs()), eval(f.rhs()));
            case Op::SeqSync: break;
        }

        // Temporal sequences: collapse FF, GG, then keep the last two letters.
        std::string word;
        for (auto t : f.sequence()) {
            const char c = t == Temporal::F ? 'F' : 'G';
            if (word.empty() || word.back() != c) word += c;
        }
        if (word.size() > 2) word = word.substr(word.size() - 2);
        const bool universal = f.quant() == Quant::Forall;
        const Bits a = eval(f.child());
        if (word == "F") return universal ? until_forall(all, a) : until_exists(all, a);
        if (word == "G")
            return negate(universal ? until_exists(all, negate(a)) : until_forall(all, negate(a)));
        if (word == "GF") return gf(a, universal);
        return negate(gf(negate(a), !universal));  // FG
    }

    const KripkeStructure& k_;
    std::size_t n_;
    std::map<std::string, Bits> memo_;
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

SemMap oracle_eval(const KripkeStructure& k, const Formula& phi) {
    if (k.size() > kOracleMaxStates)
        throw SizeExceeded("oracle supports at most " + std::to_string(kOracleMaxStates) + " states, got " +
                           std::to_string(k.size()));
    Oracle o(k);
    o.eval(phi);
    return o.to_semmap();
}

bool FuzzReport::operator==(const FuzzReport& other) const {
    if (trials != other.trials || comparisons != other.comparisons || mismatches.size() != other.mismatches.size())
        return false;
    for (std::size_t i = 0; i < mismatches.size(); ++i) {
        const auto& a = mismatches[i];
        const auto& b = other.mismatches[i];
        if (a.seed != b.seed || a.digest != b.digest || a.formula != b.formula || a.state != b.state ||
            a.checker != b.checker || a.oracle != b.oracle)
            return false;
    }
    return true;
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
    return splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(trial));
}

KripkeStructure fuzz_structure(std::uint64_t structure_seed, std::size_t max_states) {
    if (max_states == 0 || max_states > kOracleMaxStates)
        throw SizeExceeded("fuzz structures need 1.." + std::to_string(kOracleMaxStates) + " states");
    const std::uint64_t a = splitmix64(structure_seed);
    const std::uint64_t b = splitmix64(a);
    RandomKripkeParams params;
    params.states = 1 + static_cast<std::size_t>(a % max_states);
    params.edge_prob = 0.15 + 0.5 * static_cast<double>(b % 1000) / 1000.0;
    params.props = {"p", "q"};
    params.label_prob = 0.5;
    params.seed = splitmix64(b);
    return random_kripke(params);
}

std::vector<Formula> default_templates() {
    std::vector<Formula> out;
    for (const char* s : {"[p UA q]", "[p UE q]", "A[p U q]", "E[p U q]", "FA p", "GE p", "GFA p", "GFE p", "FGA p",
                          "FGE p"})
        out.push_back(parse_formula(s));
    return out;
}

FuzzReport diff_fuzz(std::size_t trials, std::size_t max_states, const std::vector<Formula>& templates,
                     std::uint64_t seed) {
    if (max_states > kOracleMaxStates)
        throw SizeExceeded("diff_fuzz supports at most " + std::to_string(kOracleMaxStates) + " states");
    FuzzReport report;
    report.trials = trials;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::uint64_t s = trial_seed(seed, trial);
        const KripkeStructure k = fuzz_structure(s, max_states);
        for (const auto& phi : templates) {
            const StateSet by_checker = check(k, phi).holds();
            const StateSet by_oracle = oracle_eval(k, phi).at(phi);
            for (StateIndex t = 0; t < k.size(); ++t) {
                ++report.comparisons;
                if (by_checker.contains(t) != by_oracle.contains(t))
                    report.mismatches.push_back({s, digest(k), phi.to_string(), k.name(t), by_checker.contains(t),
                                                 by_oracle.contains(t)});
            }
        }
    }
    return report;
}

}  // namespace ctlsync
