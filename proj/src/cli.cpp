#include "ctlsync/cli.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctlsync/errors.hpp"
#include "ctlsync/formula.hpp"
#include "ctlsync/kripke_io.hpp"
#include "ctlsync/oracle.hpp"
#include "ctlsync/quotient.hpp"
#include "ctlsync/reductions.hpp"

namespace ctlsync {

using json = nlohmann::json;

std::string CheckReport::to_json() const {
    json j;
    j["formula"] = formula;
    j["states"] = json::array();
    for (const auto& s : states) {
        json e;
        e["name"] = s.name;
        e["holds"] = s.holds;
        e["witness"] = s.witness ? json(*s.witness) : json(nullptr);
        j["states"].push_back(std::move(e));
    }
    j["time_ms"] = time_ms;
    return j.dump(2);
}

CheckReport CheckReport::from_json(const std::string& text) {
    const json j = json::parse(text);
    CheckReport r;
    r.formula = j.at("formula").get<std::string>();
    for (const auto& e : j.at("states")) {
        StateVerdict v;
        v.name = e.at("name").get<std::string>();
        v.holds = e.at("holds").get<bool>();
        if (!e.at("witness").is_null()) v.witness = e.at("witness").get<std::string>();
        r.states.push_back(std::move(v));
    }
    r.time_ms = j.at("time_ms").get<double>();
    return r;
}

CheckReport make_report(const KripkeStructure& k, const std::string& formula_text, const CheckResult& result,
                        double time_ms) {
    CheckReport report;
    report.formula = formula_text;
    report.time_ms = time_ms;
    for (StateIndex t = 0; t < k.size(); ++t) {
        StateVerdict v{k.name(t), result.holds().contains(t), std::nullopt};
        if (v.holds)
            if (auto w = result.witness(t)) v.witness = w->to_string();
        report.states.push_back(std::move(v));
    }
    return report;
}

namespace {

struct CheckArgs {
    std::string model, formula, state;
    bool json = false, witness = false, complete = false;
};

int do_check(const CheckArgs& a, std::ostream& out) {
    const KripkeStructure k = load_kripke(a.model, {a.complete});
    const Formula phi = parse_formula(a.formula);

    std::optional<StateIndex> query;
    if (!a.state.empty())
        query = k.index_of(a.state);
    else
        query = k.init();

    const auto start = std::chrono::steady_clock::now();
    const CheckResult result = check(k, phi);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    const CheckReport report = make_report(k, a.formula, result, ms);

    if (a.json) {
        out << report.to_json() << '\n';
    } else {
        out << "formula:    " << a.formula << '\n';
        out << "normalized: " << result.normalized.to_string() << '\n';
        for (const auto& s : report.states) {
            out << "  " << s.name << ": " << (s.holds ? "holds" : "fails");
            if (a.witness && s.witness) out << "  witness " << *s.witness;
            if (query && k.name(*query) == s.name) out << "  <-";
            out << '\n';
        }
        out << "time: " << std::fixed << std::setprecision(3) << ms << " ms\n";
    }
    // Without a queried state every state must satisfy the formula.
    if (query) return result.holds().contains(*query) ? 0 : 1;
    return result.holds() == k.all_states() ? 0 : 1;
}

int do_quotient(const std::string& model, const std::string& output, bool complete, std::ostream& out) {
    const KripkeStructure k = load_kripke(model, {complete});
    const Partition p = bisim_partition(k);
    const Quotient q = quotient_structure(k, p);
    save_kripke(q.structure, output, "bisimulation quotient of " + model);
    std::ofstream map(output + ".map");
    if (!map) throw Error("cannot write '" + output + ".map'");
    for (StateIndex t = 0; t < k.size(); ++t) map << k.name(t) << ' ' << q.structure.name(q.block_of[t]) << '\n';
    out << k.size() << " states -> " << q.structure.size() << " blocks; wrote " << output << " and " << output
        << ".map\n";
    return 0;
}

int do_reduce(const std::string& kind, const std::string& dimacs, const std::string& output, std::ostream& out) {
    const CnfFormula psi = parse_dimacs(read_file(dimacs));
    KripkeStructure k;
    std::string comment;
    if (kind == "cnf-favorall") {
        k = cnf_to_favorall(psi).structure;
        comment = "FA q holds at tI iff " + dimacs + " is satisfiable";
    } else if (kind == "cnf-ue") {
        k = cnf_to_ue(psi).structure;
        comment = "[p UE q] holds at tI iff " + dimacs + " is satisfiable";
    } else if (kind == "dnf-ue") {
        k = dnf_to_ue(psi).structure;
        comment = "[p UE q] holds at tI iff " + dimacs + " read as DNF is valid";
    } else {
        const IndistPair pair = indist_pair(psi);
        k = disjoint_union(pair.fixed.structure, pair.generated.structure).first;
        comment = "uI and tI are indistinguishable without Next iff " + dimacs + " is satisfiable";
    }
    save_kripke(k, output, comment);
    out << "wrote " << output << " (" << k.size() << " states, " << k.edge_count() << " edges)\n";
    return 0;
}

std::vector<Formula> parse_templates(const std::string& list) {
    if (list.empty()) return default_templates();
    std::vector<Formula> out;
    std::stringstream ss(list);
    for (std::string item; std::getline(ss, item, ',');)
        if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(parse_formula(item));
    return out;
}

int do_fuzz(std::size_t trials, std::size_t states, std::uint64_t seed, const std::string& templates,
            std::ostream& out) {
    const auto tpl = parse_templates(templates);
    const FuzzReport r = diff_fuzz(trials, states, tpl, seed);
    out << "trials: " << r.trials << "  comparisons: " << r.comparisons << "  mismatches: " << r.mismatches.size()
        << '\n';
    for (const auto& m : r.mismatches)
        out << "  seed " << m.seed << " " << m.digest << " " << m.formula << " @" << m.state
            << " checker=" << m.checker << " oracle=" << m.oracle << '\n';
    return r.mismatches.empty() ? 0 : 1;
}

int do_distinguish(const std::string& model, const std::string& s1, const std::string& s2, std::size_t depth,
                   bool no_next, bool sequences, bool complete, std::ostream& out) {
    const KripkeStructure k = load_kripke(model, {complete});
    DistinguishOptions opt;
    opt.max_depth = depth;
    opt.allow_next = !no_next;
    opt.allow_sequences = sequences;
    const auto f = distinguish(k, k.index_of(s1), k.index_of(s2), opt);
    if (!f) {
        out << "no distinguishing formula up to depth " << depth << '\n';
        return 1;
    }
    const StateSet sem = check(k, *f).holds();
    out << f->to_string() << '\n';
    out << "  holds at " << (sem.contains(k.index_of(s1)) ? s1 : s2) << ", fails at "
        << (sem.contains(k.index_of(s1)) ? s2 : s1) << '\n';
    return 0;
}

int do_stutter(const std::string& model, std::size_t n, const std::string& output, bool complete,
               std::ostream& out) {
    const KripkeStructure k = load_kripke(model, {complete});
    const KripkeStructure s = n_stuttering(k, n);
    save_kripke(s, output, std::to_string(n) + "-stuttering of " + model);
    out << "wrote " << output << " (" << s.size() << " states)\n";
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Model checker for CTL with synchronization operators"};
    app.require_subcommand(1);

    CheckArgs ca;
    auto* check_cmd = app.add_subcommand("check", "Evaluate a formula on every state of a model");
    check_cmd->add_option("--model", ca.model, "Kripke text file")->required();
    check_cmd->add_option("--formula", ca.formula, "Formula")->required();
    check_cmd->add_option("--state", ca.state, "State whose verdict sets the exit code");
    check_cmd->add_flag("--json", ca.json, "Emit a JSON report");
    check_cmd->add_flag("--witness", ca.witness, "Print synchronization witnesses");
    check_cmd->add_flag("--complete-selfloops", ca.complete, "Add self-loops to dead-end states");

    std::string model, output, dimacs, kind, s1, s2, templates;
    bool complete = false, no_next = false, sequences = false;
    std::size_t trials = 0, states = 5, depth = 3, n = 1;
    std::uint64_t seed = 0;

    auto* quot = app.add_subcommand("quotient", "Write the bisimulation quotient and block map");
    quot->add_option("--model", model)->required();
    quot->add_option("-o,--output", output)->required();
    quot->add_flag("--complete-selfloops", complete);

    auto* red = app.add_subcommand("reduce", "Generate a hardness gadget from a DIMACS file");
    red->add_option("kind", kind, "cnf-favorall | cnf-ue | dnf-ue | indist")
        ->required()
        ->check(CLI::IsMember({"cnf-favorall", "cnf-ue", "dnf-ue", "indist"}));
    red->add_option("--dimacs", dimacs)->required();
    red->add_option("-o,--output", output)->required();

    auto* fuzz = app.add_subcommand("fuzz", "Differential test of checker against the brute-force oracle");
    fuzz->add_option("--trials", trials)->required();
    fuzz->add_option("--states", states, "Maximum states per structure (<= 12)")->required();
    fuzz->add_option("--seed", seed)->required();
    fuzz->add_option("--templates", templates, "Comma-separated formulas over p and q");

    auto* dist = app.add_subcommand("distinguish", "Search for a formula separating two states");
    dist->add_option("--model", model)->required();
    dist->add_option("--s1", s1)->required();
    dist->add_option("--s2", s2)->required();
    dist->add_option("--depth", depth)->required();
    dist->add_flag("--no-next", no_next, "Exclude EX and AX");
    dist->add_flag("--sequences", sequences, "Also use GF-exists / GF-forall");
    dist->add_flag("--complete-selfloops", complete);

    auto* stut = app.add_subcommand("stutter", "Write the n-stuttering of a model");
    stut->add_option("--model", model)->required();
    stut->add_option("-n", n)->required()->check(CLI::PositiveNumber);
    stut->add_option("-o,--output", output)->required();
    stut->add_flag("--complete-selfloops", complete);

    std::vector<const char*> argv{"ctlsync"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (*check_cmd) return do_check(ca, out);
        if (*quot) return do_quotient(model, output, complete, out);
        if (*red) return do_reduce(kind, dimacs, output, out);
        if (*fuzz) return do_fuzz(trials, states, seed, templates, out);
        if (*dist) return do_distinguish(model, s1, s2, depth, no_next, sequences, complete, out);
        if (*stut) return do_stutter(model, n, output, complete, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace ctlsync
