#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ctlsync/checker.hpp"

namespace ctlsync {

struct StateVerdict {
    std::string name;
    bool holds = false;
    std::optional<std::string> witness;  // decimal k, or "(n,lambda)" for lassos

    bool operator==(const StateVerdict&) const = default;
};

struct CheckReport {
    std::string formula;
    std::vector<StateVerdict> states;  // file order
    double time_ms = 0;

    /// {"formula": ..., "states": [{"name", "holds", "witness"}], "time_ms": ...}
    std::string to_json() const;
    static CheckReport from_json(const std::string& text);
};

CheckReport make_report(const KripkeStructure& k, const std::string& formula_text, const CheckResult& result,
                        double time_ms);

/// Entry point of the command-line tool. Exit codes: 0 success (formula
/// holds, no fuzz mismatches, distinguishing formula found), 1 negative
/// answer, 2 usage, parse, validation or resource errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ctlsync
