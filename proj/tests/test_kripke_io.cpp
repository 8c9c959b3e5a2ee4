#include <doctest.h>

#include "ctlsync/errors.hpp"
#include "ctlsync/kripke_io.hpp"
#include "support.hpp"

using namespace ctlsync;

TEST_CASE("parse the text format") {
    const auto k = parse_kripke(R"(# leading comment

kripke
state a p q   # trailing comment
state b
init a
edge a b b
edge b a
edge a b
)");
    CHECK(k.size() == 2);
    CHECK(k.labels(0) == std::vector<std::string>{"p", "q"});
    CHECK(k.successors(0) == std::vector<StateIndex>{1});
    CHECK(k.init() == StateIndex{0});
}

TEST_CASE("format errors") {
    CHECK_THROWS_AS(parse_kripke("state a\n"), ParseError);
    CHECK_THROWS_AS(parse_kripke("kripke\nstate a-b\nedge a-b a-b\n"), ParseError);
    CHECK_THROWS_AS(parse_kripke("kripke\nstate a\nedge a c\n"), ValidationError);
    CHECK_THROWS_AS(parse_kripke("kripke\nstate a\nedge a a\nstate b\n"), ParseError);
    CHECK_THROWS_AS(parse_kripke("kripke\nstate a\ninit a\ninit a\nedge a a\n"), ParseError);
    CHECK_THROWS_AS(parse_kripke("kripke\nstate a\nbogus a\n"), ParseError);
    CHECK_THROWS_WITH(parse_kripke("kripke\nstate a\n"), doctest::Contains("totality violation"));
    CHECK(parse_kripke("kripke\nstate a\n", {true}).successors(0) == std::vector<StateIndex>{0});

    try {
        parse_kripke("kripke\nstate a\nedge a %\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
        CHECK(e.column() == 8);
    }
}

TEST_CASE("write and re-read round-trips") {
    for (const char* f : {"gf_lasso.kripke", "ua_separation.kripke", "next_separation.kripke", "two_three_cycles.kripke"}) {
        const auto k = testing::fixture(f);
        const auto again = parse_kripke(write_kripke(k, "comment\nacross lines"));
        CHECK(digest(again) == digest(k));
        CHECK(again.state_names() == k.state_names());
        CHECK(again.init() == k.init());
    }
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto k = random_kripke({1 + seed % 10, 0.3, {"p", "q"}, 0.4, seed});
        CHECK(digest(parse_kripke(write_kripke(k))) == digest(k));
    }
}
