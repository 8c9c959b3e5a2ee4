#include "ctlsync/state_set.hpp"

#include <bit>
#include <stdexcept>

namespace ctlsync {

namespace {
constexpr std::size_t word_count(std::size_t width) { return (width + 63) / 64; }
}  // namespace

StateSet::StateSet(std::size_t width) : width_(width), words_(word_count(width), 0) {}

StateSet StateSet::full(std::size_t width) {
    StateSet s(width);
    for (auto& w : s.words_) w = ~std::uint64_t{0};
    s.trim();
    return s;
}

StateSet StateSet::singleton(std::size_t width, StateIndex index) {
    StateSet s(width);
    s.insert(index);
    return s;
}

std::size_t StateSet::count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

bool StateSet::empty() const {
    for (auto w : words_)
        if (w != 0) return false;
    return true;
}

bool StateSet::contains(StateIndex index) const {
    if (index >= width_) return false;
    return (words_[index / 64] >> (index % 64)) & 1U;
}

void StateSet::insert(StateIndex index) {
    if (index >= width_) throw std::out_of_range("state index " + std::to_string(index) + " out of range");
    words_[index / 64] |= std::uint64_t{1} << (index % 64);
}

void StateSet::erase(StateIndex index) {
    if (index >= width_) return;
    words_[index / 64] &= ~(std::uint64_t{1} << (index % 64));
}

bool StateSet::is_subset_of(const StateSet& other) const {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & ~other.words_[i]) != 0) return false;
    return true;
}

bool StateSet::intersects(const StateSet& other) const {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i)
        if ((words_[i] & other.words_[i]) != 0) return true;
    return false;
}

StateSet& StateSet::operator|=(const StateSet& other) {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
    return *this;
}

StateSet& StateSet::operator&=(const StateSet& other) {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
}

StateSet& StateSet::subtract(const StateSet& other) {
    check_width(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
    return *this;
}

StateSet StateSet::complement() const {
    StateSet s(*this);
    for (auto& w : s.words_) w = ~w;
    s.trim();
    return s;
}

bool StateSet::operator<(const StateSet& other) const {
    if (width_ != other.width_) return width_ < other.width_;
    for (std::size_t i = words_.size(); i-- > 0;)
        if (words_[i] != other.words_[i]) return words_[i] < other.words_[i];
    return false;
}

std::vector<StateIndex> StateSet::members() const {
    std::vector<StateIndex> out;
    out.reserve(count());
    for_each([&](StateIndex i) { out.push_back(i); });
    return out;
}

std::size_t StateSet::hash() const {
    // FNV-1a over the words
    std::uint64_t h = 1469598103934665603ULL ^ width_;
    for (auto w : words_) {
        h ^= w;
        h *= 1099511628211ULL;
        h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
}

std::string StateSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for_each([&](StateIndex i) {
        if (!first) out += ',';
        first = false;
        out += std::to_string(i);
    });
    out += '}';
    return out;
}

void StateSet::check_width(const StateSet& other) const {
    if (width_ != other.width_)
        throw std::invalid_argument("state set width mismatch: " + std::to_string(width_) + " vs " +
                                    std::to_string(other.width_));
}

void StateSet::trim() {
    if (width_ % 64 != 0 && !words_.empty())
        words_.back() &= (std::uint64_t{1} << (width_ % 64)) - 1;
}

}  // namespace ctlsync
