#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ctlsync {

using StateIndex = std::size_t;

/// Fixed-width set of state indices of one Kripke structure.
///
/// Width is fixed at construction; binary operations require equal widths.
/// Iteration is always in ascending index order.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::size_t width);

    static StateSet full(std::size_t width);
    static StateSet singleton(std::size_t width, StateIndex index);

    std::size_t width() const { return width_; }
    std::size_t count() const;
    bool empty() const;

    bool contains(StateIndex index) const;
    void insert(StateIndex index);
    void erase(StateIndex index);

    bool is_subset_of(const StateSet& other) const;
    bool intersects(const StateSet& other) const;

    StateSet& operator|=(const StateSet& other);
    StateSet& operator&=(const StateSet& other);
    StateSet& subtract(const StateSet& other);
    StateSet complement() const;

    friend StateSet operator|(StateSet lhs, const StateSet& rhs) { return lhs |= rhs; }
    friend StateSet operator&(StateSet lhs, const StateSet& rhs) { return lhs &= rhs; }

    bool operator==(const StateSet& other) const = default;
    /// Lexicographic on the word representation; gives sets a strict weak order.
    bool operator<(const StateSet& other) const;

    std::vector<StateIndex> members() const;

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                const int bit = __builtin_ctzll(bits);
                fn(static_cast<StateIndex>(w * 64 + bit));
                bits &= bits - 1;
            }
        }
    }

    std::size_t hash() const;

    /// Debug rendering "{0,3,5}".
    std::string to_string() const;

private:
    void check_width(const StateSet& other) const;
    void trim();

    std::size_t width_ = 0;
    std::vector<std::uint64_t> words_;
};

struct StateSetHash {
    std::size_t operator()(const StateSet& s) const { return s.hash(); }
};

}  // namespace ctlsync
