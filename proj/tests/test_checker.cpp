#include <doctest.h>

#include "ctlsync/checker.hpp"
#include "ctlsync/errors.hpp"
#include "ctlsync/oracle.hpp"
#include "support.hpp"

using namespace ctlsync;

namespace {

StateSet sem(const KripkeStructure& k, const char* f) { return check(k, parse_formula(f)).holds(); }

KripkeStructure self_loop(std::vector<std::string> labels) {
    KripkeBuilder b;
    b.add_state("a", std::move(labels));
    b.add_edge(0, 0);
    return b.build();
}

}  // namespace

TEST_CASE("single q-labeled self-loop") {
    const auto k = self_loop({"q"});
    const auto r = check(k, parse_formula("FA q"));
    CHECK(r.holds().contains(0));
    REQUIRE(r.witness(0));
    CHECK(r.witness(0)->k == 0);
    CHECK(sem(k, "GFE q").contains(0));
}

TEST_CASE("synchronized until on the two-chain example") {
    const auto k = testing::fixture("ua_separation.kripke");
    const auto r = check(k, parse_formula("[p UA !p]"));
    const StateIndex t1 = k.index_of("t1"), u1 = k.index_of("u1");
    CHECK(r.holds().contains(t1));
    CHECK_FALSE(r.holds().contains(u1));
    REQUIRE(r.witness(t1));
    CHECK(r.witness(t1)->k == 3);
    CHECK_FALSE(r.witness(u1));

    // Plain CTL cannot tell them apart with these operands.
    CHECK(sem(k, "A[p U !p]").contains(t1) == sem(k, "A[p U !p]").contains(u1));

    const StateSet p = k.prop_states("p");
    CHECK(verify_ua_witness(k, t1, p, p.complement(), 3));
    CHECK_FALSE(verify_ua_witness(k, t1, p, p.complement(), 2));
    CHECK(verify_ua_witness(k, k.index_of("t4"), p, p.complement(), 0));
    CHECK(verify_ua_witness(k, k.index_of("t4"), p, p.complement(), BigNat(1) << 70) == false);
}

TEST_CASE("double next on the second fixture") {
    const auto k = testing::fixture("next_separation.kripke");
    const auto s = sem(k, "AX AX p");
    CHECK(s.contains(k.index_of("t1")));
    CHECK_FALSE(s.contains(k.index_of("u1")));
}

TEST_CASE("indistinguishability fixture") {
    const auto k = testing::fixture("two_three_cycles.kripke");
    const StateIndex uI = k.index_of("uI");
    const auto r = check(k, parse_formula("FA q"));
    CHECK(r.holds().contains(uI));
    REQUIRE(r.witness(uI));
    CHECK(r.witness(uI)->k == 2);
    CHECK(verify_ua_witness(k, uI, k.all_states(), k.prop_states("q"), r.witness(uI)->k));
    CHECK_FALSE(sem(k, "[!q UA q]").contains(uI));
}

TEST_CASE("ua: trivial sem2") {
    const auto k = random_kripke({6, 0.3, {"p"}, 0.5, 3});
    const auto e = eval_ua(k, k.empty_set(), k.all_states());
    CHECK(e.holds == k.all_states());
    for (StateIndex t = 0; t < k.size(); ++t) CHECK(e.witnesses[t]->k == 0);
}

TEST_CASE("ue: alternating path witnesses") {
    // Two branches reach q at depth 3; p is present at depth 1 only on the
    // left branch and at depth 2 only on the right one.
    KripkeBuilder b;
    const auto r = b.add_state("r", {"p"});
    const auto l1 = b.add_state("l1", {"p"}), l2 = b.add_state("l2"), l3 = b.add_state("l3", {"q"});
    const auto m1 = b.add_state("m1"), m2 = b.add_state("m2", {"p"}), m3 = b.add_state("m3", {"q"});
    b.add_edge(r, l1);
    b.add_edge(r, m1);
    b.add_edge(l1, l2);
    b.add_edge(l2, l3);
    b.add_edge(m1, m2);
    b.add_edge(m2, m3);
    b.add_edge(l3, l3);
    b.add_edge(m3, m3);
    const auto k = b.build();
    const auto f = parse_formula("[p UE q]");
    const auto res = check(k, f);
    CHECK(res.holds().contains(r));
    CHECK(res.witness(r)->k == 3);
    CHECK_FALSE(check(k, parse_formula("E[p U q]")).holds().contains(r));
    CHECK_FALSE(check(k, parse_formula("[p UA q]")).holds().contains(r));
    CHECK(oracle_eval(k, f).at(f).contains(r));

    CHECK(eval_ue(k, k.all_states(), k.empty_set()).holds.empty());
}

TEST_CASE("ue witnesses are minimal and verify") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto k = random_kripke({1 + seed % 6, 0.35, {"p", "q"}, 0.5, seed});
        const auto a = k.prop_states("p"), b = k.prop_states("q");
        const auto e = eval_ue(k, a, b);
        for (StateIndex t = 0; t < k.size(); ++t) {
            if (!e.holds.contains(t)) continue;
            const auto n = static_cast<std::size_t>(e.witnesses[t]->k);
            CHECK(testing::verify_ue_depth(k, t, a, b, n));
            for (std::size_t m = 0; m < n; ++m) CHECK_FALSE(testing::verify_ue_depth(k, t, a, b, m));
        }
    }
}

TEST_CASE("ua witnesses verify and lassos close") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto k = random_kripke({1 + seed % 7, 0.3, {"p", "q"}, 0.5, seed});
        const auto a = k.prop_states("p"), b = k.prop_states("q");
        const auto ua = eval_ua(k, a, b);
        const auto gf = eval_gfa(k, a);
        for (StateIndex t = 0; t < k.size(); ++t) {
            if (ua.holds.contains(t)) {
                CHECK(verify_ua_witness(k, t, a, b, ua.witnesses[t]->k));
                if (ua.witnesses[t]->k > 0) CHECK_FALSE(verify_ua_witness(k, t, a, b, ua.witnesses[t]->k - 1));
            }
            if (gf.holds.contains(t)) {
                const Witness& w = *gf.witnesses[t];
                CHECK(w.kind == Witness::Kind::Lasso);
                CHECK(w.lambda > 0);
                const auto at_n = exact_step_reach(k, k.singleton(t), w.n);
                CHECK(at_n.is_subset_of(a));
                CHECK(exact_step_reach(k, k.singleton(t), w.n + w.lambda) == at_n);
            }
        }
    }
}

TEST_CASE("gf-forall on the lasso fixtures") {
    const auto k = testing::fixture("gf_lasso.kripke");
    const auto e = eval_gfa(k, k.prop_states("p"));
    CHECK(e.holds.contains(k.index_of("t1")));
    CHECK_FALSE(e.holds.contains(k.index_of("u1")));
    CHECK(e.witnesses[k.index_of("t1")]->to_string() == "(0,2)");
    CHECK(eval_gfa(k, k.all_states()).holds == k.all_states());
}

TEST_CASE("gf-exists by components") {
    // a(p) -> b -> b: the only p state is transient.
    KripkeBuilder b;
    b.add_state("a", {"p"});
    b.add_state("b");
    b.add_edge(0, 1);
    b.add_edge(1, 1);
    const auto k = b.build();
    CHECK(eval_gfe(k, k.prop_states("p")).empty());

    const auto chains = testing::fixture("ua_separation.kripke");
    CHECK_FALSE(eval_gfe(chains, chains.prop_states("p")).contains(chains.index_of("u1")));
}

TEST_CASE("on deterministic structures all four untils coincide") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto k = random_kripke({1 + seed % 8, 0.0, {"p", "q"}, 0.5, seed});
        REQUIRE(k.is_deterministic());
        const auto a = sem(k, "[p UA q]");
        CHECK(a == sem(k, "A[p U q]"));
        CHECK(a == sem(k, "[p UE q]"));
        CHECK(a == sem(k, "E[p U q]"));
    }
}

TEST_CASE("powerset budget surfaces as an error") {
    const auto k = random_kripke({12, 0.6, {"p", "q"}, 0.5, 5});
    CheckerLimits tight;
    tight.powerset_nodes = 4;
    CHECK_THROWS_AS(eval_ue(k, k.all_states(), k.empty_set(), tight), CapExceeded);
}

TEST_CASE("atoms outside the structure hold nowhere") {
    const auto k = self_loop({"q"});
    CHECK(sem(k, "zzz").empty());
    CHECK(sem(k, "!zzz") == k.all_states());
}

TEST_CASE("sem map records every subformula") {
    const auto k = testing::fixture("ua_separation.kripke");
    const auto r = check(k, parse_formula("[p UA !p] | EX q"));
    CHECK(r.sem.contains(parse_formula("!p")));
    CHECK(r.sem.contains(parse_formula("[p UA !p]")));
    CHECK(r.sem.contains(parse_formula("q")));
    const auto& notp = r.sem.at(parse_formula("!p"));
    CHECK(notp == r.sem.at(parse_formula("p")).complement());
}
