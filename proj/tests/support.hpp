#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ctlsync/kripke.hpp"
#include "ctlsync/kripke_io.hpp"
#include "ctlsync/reductions.hpp"

namespace testing {

inline ctlsync::KripkeStructure fixture(const std::string& name) {
    return ctlsync::load_kripke(std::string(FIXTURE_DIR) + "/" + name);
}

/// Plain n-fold image, kept apart from the library so it can serve as a reference.
inline std::vector<bool> step(const ctlsync::KripkeStructure& k, const std::vector<bool>& s) {
    std::vector<bool> out(k.size(), false);
    for (std::size_t t = 0; t < k.size(); ++t)
        if (s[t])
            for (auto u : k.successors(t)) out[u] = true;
    return out;
}

inline std::vector<bool> to_bits(const ctlsync::StateSet& s) {
    std::vector<bool> out(s.width(), false);
    for (auto t : s.members()) out[t] = true;
    return out;
}

inline ctlsync::StateSet from_bits(const std::vector<bool>& b) {
    ctlsync::StateSet s(b.size());
    for (std::size_t t = 0; t < b.size(); ++t)
        if (b[t]) s.insert(t);
    return s;
}

inline std::vector<bool> iterate(const ctlsync::KripkeStructure& k, std::vector<bool> s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) s = step(k, s);
    return s;
}

/// Checks a claimed [a UE b] depth n at t by the exact-step decomposition:
/// the n-step image meets b through a path bundle in which every earlier
/// position j has an a-state that still reaches b in exactly n-j steps.
inline bool verify_ue_depth(const ctlsync::KripkeStructure& k, std::size_t t, const ctlsync::StateSet& a,
                            const ctlsync::StateSet& b, std::size_t n) {
    std::vector<bool> start(k.size(), false);
    start[t] = true;
    const auto bb = to_bits(b);
    if (n == 0) return bb[t];
    // back[m] = states with an exact m-step path into b.
    std::vector<std::vector<bool>> back{bb};
    for (std::size_t m = 1; m <= n; ++m) {
        std::vector<bool> prev(k.size(), false);
        for (std::size_t s = 0; s < k.size(); ++s)
            for (auto u : k.successors(s))
                if (back.back()[u]) prev[s] = true;
        back.push_back(prev);
    }
    const auto ab = to_bits(a);
    std::vector<bool> layer = start;
    for (std::size_t j = 0; j < n; ++j) {
        bool ok = false;
        for (std::size_t s = 0; s < k.size(); ++s)
            if (layer[s] && ab[s] && back[n - j][s]) ok = true;
        if (!ok) return false;
        layer = step(k, layer);
    }
    return true;
}

struct CnfGen {
    std::mt19937_64 rng;
    explicit CnfGen(std::uint64_t seed) : rng(seed) {}

    std::size_t pick(std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); }

    /// Up to max_vars variables, 1..max_clauses clauses of width 1..max_width.
    ctlsync::NormalForm next(std::size_t max_vars = 4, std::size_t max_clauses = 4, std::size_t max_width = 3) {
        ctlsync::NormalForm f;
        f.num_vars = pick(1, max_vars);
        const std::size_t m = pick(1, max_clauses);
        for (std::size_t c = 0; c < m; ++c) {
            std::vector<std::size_t> vars(f.num_vars);
            for (std::size_t v = 0; v < f.num_vars; ++v) vars[v] = v + 1;
            std::shuffle(vars.begin(), vars.end(), rng);
            const std::size_t w = pick(1, std::min(max_width, f.num_vars));
            ctlsync::Clause clause;
            for (std::size_t i = 0; i < w; ++i) clause.push_back({vars[i], pick(0, 1) == 1});
            f.clauses.push_back(clause);
        }
        return f;
    }
};

}  // namespace testing
