#include <doctest.h>

#include <numeric>

#include "ctlsync/checker.hpp"
#include "ctlsync/errors.hpp"
#include "ctlsync/quotient.hpp"
#include "ctlsync/reductions.hpp"
#include "support.hpp"

using namespace ctlsync;

namespace {

bool holds_at(const Gadget& g, const char* formula) {
    return check(g.structure, parse_formula(formula)).holds().contains(g.initial);
}

NormalForm nf(std::size_t vars, std::vector<Clause> clauses) { return {vars, std::move(clauses)}; }

std::size_t clause_product(const Clause& c, const std::vector<std::uint64_t>& primes) {
    std::size_t r = 1;
    for (const auto& l : c) r *= primes[l.var - 1];
    return r;
}

}  // namespace

TEST_CASE("primes and residue assignments") {
    CHECK(first_primes(0).empty());
    CHECK(first_primes(3) == std::vector<std::uint64_t>{2, 3, 5});
    CHECK(first_primes(5) == std::vector<std::uint64_t>{2, 3, 5, 7, 11});
    CHECK(first_primes(100).back() == 541);
    const std::vector<std::uint64_t> p{2, 3, 5};
    CHECK(assignment_of(10, p) == std::vector<bool>{false, true, false});
    CHECK(assignment_of(25, p) == std::vector<bool>{true, true, false});
    CHECK_FALSE(assignment_of(2, p));
}

TEST_CASE("dimacs") {
    const auto f = parse_dimacs("c comment\np cnf 3 2\n1 -3 0\n2\n3 0\n");
    CHECK(f.num_vars == 3);
    REQUIRE(f.clauses.size() == 2);
    CHECK(f.clauses[0] == Clause{{1, true}, {3, false}});
    CHECK(f.clauses[1] == Clause{{2, true}, {3, true}});
    CHECK(parse_dimacs(write_dimacs(f)).clauses == f.clauses);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n3 0\n"), Error);
    CHECK_THROWS_AS(parse_dimacs("1 2 0\n"), Error);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 -1 0\n"), Error);
}

TEST_CASE("brute force") {
    CHECK_FALSE(brute_sat(nf(1, {{{1, true}}, {{1, false}}})));
    CHECK(brute_sat(nf(0, {})));
    CHECK(brute_sat(nf(3, {{{1, true}, {2, true}, {3, false}}})));
    CHECK(brute_valid(nf(1, {{{1, true}}, {{1, false}}})));
    CHECK_FALSE(brute_valid(nf(2, {{{1, true}, {2, true}}})));
    CHECK_THROWS_AS(brute_sat(nf(25, {{{1, true}}})), SizeExceeded);
}

TEST_CASE("clause cycle labeling") {
    const auto g = cnf_to_favorall(nf(3, {{{1, true}, {2, true}, {3, false}}}));
    CHECK(g.structure.size() == 31);
    // Residues (z mod 2, z mod 3, z mod 5) that form a bit vector; all but 001 (z = 6) satisfy the clause.
    std::vector<std::size_t> labeled;
    for (std::size_t i = 0; i < 30; ++i)
        if (g.structure.labeled(g.structure.index_of("c1_" + std::to_string(i)), "q")) labeled.push_back(i);
    CHECK(labeled == std::vector<std::size_t>{0, 1, 10, 15, 16, 21, 25});
    CHECK(g.structure.name(g.initial) == "tI");
    CHECK(g.structure.init() == g.initial);
}

TEST_CASE("gadget sizes") {
    testing::CnfGen gen(5);
    for (int i = 0; i < 100; ++i) {
        const auto f = gen.next();
        const auto primes = first_primes(f.num_vars);
        std::size_t expect = 1;
        for (const auto& c : f.clauses) expect += clause_product(c, primes);
        CHECK(cnf_to_favorall(f).structure.size() == expect);
        std::size_t guarded = expect;
        for (const auto& c : f.clauses)
            if (clause_product(c, primes) == 2) guarded += 4;
        CHECK(dnf_to_ue(f).structure.size() == guarded);
        const std::size_t m = f.clauses.size();
        CHECK(cnf_to_ue(f).structure.size() == expect + m * (m + 1));
    }
}

TEST_CASE("small reduction examples") {
    CHECK_FALSE(holds_at(cnf_to_favorall(nf(1, {{{1, true}}, {{1, false}}})), "FA q"));
    const auto single = cnf_to_favorall(nf(1, {{{1, true}}}));
    const auto r = check(single.structure, parse_formula("FA q"));
    CHECK(r.holds().contains(single.initial));
    CHECK(r.witness(single.initial)->k == 2);

    CHECK_FALSE(holds_at(cnf_to_ue(nf(1, {{{1, true}}, {{1, false}}})), "[p UE q]"));
    CHECK(holds_at(dnf_to_ue(nf(1, {{{1, true}}, {{1, false}}})), "[p UE q]"));
    CHECK_FALSE(holds_at(dnf_to_ue(nf(2, {{{1, true}, {2, true}}})), "[p UE q]"));
    // Last cycle positions carry no assignment, so !x1 alone does not pass for valid.
    CHECK_FALSE(holds_at(dnf_to_ue(nf(1, {{{1, false}}})), "[p UE q]"));
    CHECK_FALSE(holds_at(dnf_to_ue(nf(2, {{{1, false}}, {{1, false}, {2, true}}})), "[p UE q]"));
    // From each origin, r-1 steps land on the q-labeled last state.
    const auto last = dnf_to_ue(nf(3, {{{1, true}, {2, true}, {3, false}}, {{1, false}}}));
    const auto& k = last.structure;
    const StateSet q = k.prop_states("q");
    CHECK(exact_step_reach(k, k.singleton(k.index_of("c1_0")), 29).is_subset_of(q));
    CHECK(exact_step_reach(k, k.singleton(k.index_of("c2_0")), 5).is_subset_of(q));
    CHECK(k.find("c2_5"));
    CHECK_FALSE(k.find("c2_6"));
}

TEST_CASE("feeder-path gadget layout") {
    const auto g = cnf_to_ue(nf(3, {{{1, true}, {2, true}, {3, false}}, {{1, false}, {2, false}}}));
    const auto& k = g.structure;
    CHECK(k.labeled(g.initial, "p"));
    // Path i carries p at its i-th and last states only.
    for (std::size_t i = 1; i <= 2; ++i)
        for (std::size_t j = 1; j <= 3; ++j)
            CHECK(k.labeled(k.index_of("f" + std::to_string(i) + "_" + std::to_string(j)), "p") == (j == i || j == 3));
    CHECK(k.successors(k.index_of("f2_3")) == std::vector<StateIndex>{k.index_of("c2_0")});
}

TEST_CASE("satisfiability matches the gadgets on random instances") {
    testing::CnfGen gen(17);
    for (int i = 0; i < 150; ++i) {
        const auto f = gen.next();
        const bool sat = brute_sat(f);
        CHECK(holds_at(cnf_to_favorall(f), "FA q") == sat);
        CHECK(holds_at(cnf_to_ue(f), "[p UE q]") == sat);
        CHECK(holds_at(dnf_to_ue(f), "[p UE q]") == brute_valid(f));
    }
}

TEST_CASE("feeder-path witness is m + 2 + smallest encoding") {
    testing::CnfGen gen(23);
    int satisfiable = 0;
    for (int i = 0; i < 150; ++i) {
        const auto f = gen.next();
        const auto z = smallest_satisfying_encoding(f);
        CHECK(z.has_value() == brute_sat(f));
        if (!z) continue;
        ++satisfiable;
        const auto g = cnf_to_ue(f);
        const auto r = check(g.structure, parse_formula("[p UE q]"));
        const std::size_t m = f.clauses.size();
        CHECK(r.witness(g.initial)->k == m + 2 + *z);
        CHECK(testing::verify_ue_depth(g.structure, g.initial, g.structure.prop_states("p"),
                                       g.structure.prop_states("q"), m + 2 + *z));
    }
    CHECK(satisfiable > 50);
}

TEST_CASE("fixed structure of the indistinguishability pair") {
    const auto g = indist_fixed_structure();
    const auto file = testing::fixture("two_three_cycles.kripke");
    CHECK(digest(g.structure) == digest(file));
    CHECK(holds_at(g, "FA q"));
    CHECK_FALSE(holds_at(g, "[!q UA q]"));
}

TEST_CASE("indistinguishability pair") {
    const auto sat = nf(2, {{{1, true}, {2, false}}});
    const auto unsat = nf(1, {{{1, true}}, {{1, false}}});
    for (const auto& [psi, expect_same] : {std::pair{sat, true}, std::pair{unsat, false}}) {
        const auto pair = indist_pair(psi);
        CHECK(brute_sat(pair.padded) == brute_sat(psi));
        CHECK(pair.padded.num_vars == psi.num_vars + 2);
        const auto [u, offset] = disjoint_union(pair.fixed.structure, pair.generated.structure);
        const StateIndex uI = pair.fixed.initial, tI = offset + pair.generated.initial;
        const auto fa = check(u, parse_formula("FA q")).holds();
        CHECK(fa.contains(uI));
        CHECK(fa.contains(tI) == expect_same);
        // The generated initial state has both q and !q successors.
        bool q = false, nq = false;
        for (auto s : u.successors(tI)) (u.labeled(s, "q") ? q : nq) = true;
        CHECK(q);
        CHECK(nq);
        CHECK_FALSE(check(u, parse_formula("[!q UA q]")).holds().contains(tI));

        DistinguishOptions opt;
        opt.max_depth = 2;
        opt.allow_next = false;
        const auto d = distinguish(u, uI, tI, opt);
        CHECK(d.has_value() == !expect_same);
    }
}

TEST_CASE("disjoint union renames clashes") {
    const auto a = testing::fixture("ua_separation.kripke");
    const auto [u, offset] = disjoint_union(a, a);
    CHECK(u.size() == 2 * a.size());
    CHECK(offset == a.size());
    CHECK(u.name(offset) == "k2_t1");
    CHECK(u.successors(offset).front() == offset + 1);
}
