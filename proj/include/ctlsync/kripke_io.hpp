#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "ctlsync/kripke.hpp"

namespace ctlsync {

struct KripkeParseOptions {
    /// Repair successor-less states with a self-loop instead of rejecting them.
    bool complete_selfloops = false;
};

/// Reads the line-based Kripke text format:
///
///     # comment
///     kripke
///     state <name> [<prop>...]
///     init <name>
///     edge <from> <to> [<to>...]
///
/// Names match [A-Za-z0-9_]+. All state lines come first, then at most one
/// init line, then edge lines. Duplicate edges are merged. Throws ParseError
/// for syntax problems and ValidationError for semantic ones.
KripkeStructure parse_kripke(std::string_view text, const KripkeParseOptions& options = {});
KripkeStructure load_kripke(const std::string& path, const KripkeParseOptions& options = {});

/// Writes the text format; parse_kripke(write_kripke(k)) reproduces k.
std::string write_kripke(const KripkeStructure& k, std::string_view header_comment = {});
void save_kripke(const KripkeStructure& k, const std::string& path, std::string_view header_comment = {});

std::string read_file(const std::string& path);

}  // namespace ctlsync
