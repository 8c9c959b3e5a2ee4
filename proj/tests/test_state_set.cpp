#include <doctest.h>

#include <stdexcept>
#include <unordered_set>

#include "ctlsync/state_set.hpp"

using ctlsync::StateSet;

TEST_CASE("state set basics across word boundaries") {
    StateSet s(130);
    CHECK(s.empty());
    s.insert(0);
    s.insert(63);
    s.insert(64);
    s.insert(129);
    CHECK(s.count() == 4);
    CHECK(s.contains(64));
    CHECK_FALSE(s.contains(65));
    CHECK(s.members() == std::vector<std::size_t>{0, 63, 64, 129});
    s.erase(63);
    CHECK(s.to_string() == "{0,64,129}");

    const StateSet c = s.complement();
    CHECK(c.count() == 127);
    CHECK_FALSE(c.intersects(s));
    CHECK((c | s) == StateSet::full(130));
    CHECK((c & s).empty());
}

TEST_CASE("subset and ordering") {
    StateSet a(5), b(5);
    a.insert(1);
    b.insert(1);
    b.insert(3);
    CHECK(a.is_subset_of(b));
    CHECK_FALSE(b.is_subset_of(a));
    CHECK(StateSet(5).is_subset_of(a));
    CHECK((a < b) != (b < a));
    StateSet d = b;
    d.subtract(a);
    CHECK(d == StateSet::singleton(5, 3));
}

TEST_CASE("width mismatch is rejected") {
    StateSet a(3), b(4);
    CHECK_THROWS_AS(a |= b, std::invalid_argument);
    CHECK_THROWS_AS(a.insert(3), std::out_of_range);
}

TEST_CASE("hash separates all subsets of a small universe") {
    std::unordered_set<StateSet, ctlsync::StateSetHash> seen;
    for (unsigned mask = 0; mask < 256; ++mask) {
        StateSet s(8);
        for (unsigned i = 0; i < 8; ++i)
            if (mask >> i & 1u) s.insert(i);
        CHECK(seen.insert(s).second);
    }
}
