#include "ctlsync/kripke_io.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "ctlsync/errors.hpp"

namespace ctlsync {

namespace {

bool valid_name(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
        if (!ok) return false;
    }
    return true;
}

struct Word {
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Word> split_words(std::string_view line) {
    std::vector<Word> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        words.push_back({std::string(line.substr(start, i - start)), start + 1});
    }
    return words;
}

enum class Section { Header, States, Init, Edges };

}  // namespace

KripkeStructure parse_kripke(std::string_view text, const KripkeParseOptions& options) {
    KripkeBuilder builder;
    std::map<std::string, StateIndex, std::less<>> index;
    Section section = Section::Header;
    bool have_init = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

        const auto words = split_words(line);
        if (words.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const std::string& keyword = words[0].text;

        auto lookup = [&](const Word& w) {
            if (!valid_name(w.text)) throw ParseError("invalid name '" + w.text + "'", line_no, w.column);
            auto it = index.find(w.text);
            if (it == index.end()) throw ValidationError("line " + std::to_string(line_no) + ": unknown state '" + w.text + "'");
            return it->second;
        };

        if (section == Section::Header) {
            if (keyword != "kripke" || words.size() != 1)
                throw ParseError("expected 'kripke' header", line_no, words[0].column);
            section = Section::States;
        } else if (keyword == "state") {
            if (section != Section::States)
                throw ParseError("state declarations must precede init and edge lines", line_no, words[0].column);
            if (words.size() < 2) throw ParseError("expected state name", line_no, words[0].column + 5);
            const Word& name = words[1];
            if (!valid_name(name.text)) throw ParseError("invalid state name '" + name.text + "'", line_no, name.column);
            if (index.count(name.text))
                throw ValidationError("line " + std::to_string(line_no) + ": duplicate state '" + name.text + "'");
            const StateIndex t = builder.add_state(name.text);
            index.emplace(name.text, t);
            for (std::size_t i = 2; i < words.size(); ++i) {
                if (!valid_name(words[i].text))
                    throw ParseError("invalid proposition '" + words[i].text + "'", line_no, words[i].column);
                builder.add_label(t, words[i].text);
            }
        } else if (keyword == "init") {
            if (section == Section::Edges || have_init)
                throw ParseError("at most one init line, before any edge line", line_no, words[0].column);
            if (words.size() != 2) throw ParseError("expected 'init <name>'", line_no, words[0].column);
            builder.set_init(lookup(words[1]));
            have_init = true;
            section = Section::Init;
        } else if (keyword == "edge") {
            if (words.size() < 3) throw ParseError("expected 'edge <from> <to>...'", line_no, words[0].column);
            section = Section::Edges;
            const StateIndex from = lookup(words[1]);
            for (std::size_t i = 2; i < words.size(); ++i) builder.add_edge(from, lookup(words[i]));
        } else {
            throw ParseError("unknown directive '" + keyword + "' (expected state, init or edge)", line_no,
                             words[0].column);
        }
        if (end == text.size()) break;
    }
    if (section == Section::Header) throw ParseError("missing 'kripke' header", line_no, 1);
    if (builder.size() == 0) throw ValidationError("structure has no states");
    if (options.complete_selfloops) builder.complete_selfloops();
    return builder.build();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

KripkeStructure load_kripke(const std::string& path, const KripkeParseOptions& options) {
    return parse_kripke(read_file(path), options);
}

std::string write_kripke(const KripkeStructure& k, std::string_view header_comment) {
    std::ostringstream out;
    if (!header_comment.empty()) {
        std::istringstream lines{std::string(header_comment)};
        for (std::string l; std::getline(lines, l);) out << "# " << l << '\n';
    }
    out << "kripke\n";
    for (StateIndex t = 0; t < k.size(); ++t) {
        out << "state " << k.name(t);
        for (const auto& p : k.labels(t)) out << ' ' << p;
        out << '\n';
    }
    if (k.init()) out << "init " << k.name(*k.init()) << '\n';
    for (StateIndex t = 0; t < k.size(); ++t) {
        out << "edge " << k.name(t);
        for (auto s : k.successors(t)) out << ' ' << k.name(s);
        out << '\n';
    }
    return out.str();
}

void save_kripke(const KripkeStructure& k, const std::string& path, std::string_view header_comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << write_kripke(k, header_comment);
}

}  // namespace ctlsync
