#include "ctlsync/formula.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "ctlsync/errors.hpp"

namespace ctlsync {

// ---------------------------------------------------------------------------
// AST

Formula::Formula() : Formula(truth()) {}

Formula Formula::build(Node n) {
    std::size_t d = 0;
    for (const auto& c : n.children) d = std::max(d, c.depth() + 1);
    n.depth = d;
    return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::truth() {
    static const Formula t = build(Node{Op::True, {}, {}, Quant::Exists, {}, 0});
    return t;
}

Formula Formula::falsity() { return build(Node{Op::False, {}, {}, Quant::Exists, {}, 0}); }

Formula Formula::atom(std::string name) { return build(Node{Op::Atom, std::move(name), {}, Quant::Exists, {}, 0}); }

Formula Formula::negation(Formula f) { return build(Node{Op::Not, {}, {}, Quant::Exists, {std::move(f)}, 0}); }

Formula Formula::disjunction(Formula a, Formula b) {
    return build(Node{Op::Or, {}, {}, Quant::Exists, {std::move(a), std::move(b)}, 0});
}

Formula Formula::conjunction(Formula a, Formula b) {
    return build(Node{Op::And, {}, {}, Quant::Exists, {std::move(a), std::move(b)}, 0});
}

Formula Formula::implication(Formula a, Formula b) {
    return build(Node{Op::Implies, {}, {}, Quant::Exists, {std::move(a), std::move(b)}, 0});
}

Formula Formula::exists_next(Formula f) { return build(Node{Op::ExistsNext, {}, {}, Quant::Exists, {std::move(f)}, 0}); }

Formula Formula::forall_next(Formula f) { return build(Node{Op::ForallNext, {}, {}, Quant::Forall, {std::move(f)}, 0}); }

Formula Formula::exists_until(Formula a, Formula b) {
    return build(Node{Op::ExistsUntil, {}, {}, Quant::Exists, {std::move(a), std::move(b)}, 0});
}

Formula Formula::forall_until(Formula a, Formula b) {
    return build(Node{Op::ForallUntil, {}, {}, Quant::Forall, {std::move(a), std::move(b)}, 0});
}

Formula Formula::until_exists(Formula a, Formula b) {
    return build(Node{Op::UntilExists, {}, {}, Quant::Exists, {std::move(a), std::move(b)}, 0});
}

Formula Formula::until_forall(Formula a, Formula b) {
    return build(Node{Op::UntilForall, {}, {}, Quant::Forall, {std::move(a), std::move(b)}, 0});
}

Formula Formula::seq_sync(std::vector<Temporal> seq, Quant quant, Formula f) {
    if (seq.empty()) throw std::invalid_argument("temporal sequence must be nonempty");
    return build(Node{Op::SeqSync, {}, std::move(seq), quant, {std::move(f)}, 0});
}

Formula Formula::make(Op op, const Formula& a, const Formula& b) {
    switch (op) {
        case Op::Not: return negation(a);
        case Op::Or: return disjunction(a, b);
        case Op::And: return conjunction(a, b);
        case Op::Implies: return implication(a, b);
        case Op::ExistsNext: return exists_next(a);
        case Op::ForallNext: return forall_next(a);
        case Op::ExistsUntil: return exists_until(a, b);
        case Op::ForallUntil: return forall_until(a, b);
        case Op::UntilExists: return until_exists(a, b);
        case Op::UntilForall: return until_forall(a, b);
        default: throw std::invalid_argument("Formula::make: operator needs extra data");
    }
}

const Formula& Formula::lhs() const {
    if (node_->children.empty()) throw std::logic_error("formula has no operands");
    return node_->children[0];
}

const Formula& Formula::rhs() const {
    if (node_->children.size() < 2) throw std::logic_error("formula has no right operand");
    return node_->children[1];
}

std::size_t Formula::arity() const { return node_->children.size(); }

bool Formula::operator==(const Formula& other) const {
    if (node_ == other.node_) return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.op != b.op || a.depth != b.depth || a.name != b.name || a.seq != b.seq) return false;
    if (a.op == Op::SeqSync && a.quant != b.quant) return false;
    return a.children == b.children;
}

namespace {

void print(const Formula& f, std::string& out) {
    switch (f.op()) {
        case Op::True: out += "true"; return;
        case Op::False: out += "false"; return;
        case Op::Atom: out += f.name(); return;
        case Op::Not:
            out += '!';
            print(f.child(), out);
            return;
        case Op::Or:
        case Op::And:
        case Op::Implies:
            out += '(';
            print(f.lhs(), out);
            out += f.op() == Op::Or ? " | " : f.op() == Op::And ? " & " : " -> ";
            print(f.rhs(), out);
            out += ')';
            return;
        case Op::ExistsNext:
        case Op::ForallNext:
            out += f.op() == Op::ExistsNext ? "EX " : "AX ";
            print(f.child(), out);
            return;
        case Op::ExistsUntil:
        case Op::ForallUntil:
            out += f.op() == Op::ExistsUntil ? "E[" : "A[";
            print(f.lhs(), out);
            out += " U ";
            print(f.rhs(), out);
            out += ']';
            return;
        case Op::UntilExists:
        case Op::UntilForall:
            out += '[';
            print(f.lhs(), out);
            out += f.op() == Op::UntilExists ? " UE " : " UA ";
            print(f.rhs(), out);
            out += ']';
            return;
        case Op::SeqSync:
            for (auto t : f.sequence()) out += t == Temporal::F ? 'F' : 'G';
            out += f.quant() == Quant::Exists ? "E " : "A ";
            print(f.child(), out);
            return;
    }
}

}  // namespace

std::string Formula::to_string() const {
    std::string out;
    print(*this, out);
    return out;
}

// ---------------------------------------------------------------------------
// Lexer / parser

namespace {

enum class Tok { Ident, Upper, Bang, Amp, Bar, Arrow, LParen, RParen, LBrack, RBrack, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> lex(std::string_view s) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j) {
            if (s[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < s.size()) {
        const char c = s[i];
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            advance(1);
            continue;
        }
        const std::size_t l = line, cl = col;
        auto single = [&](Tok k) {
            out.push_back({k, std::string(1, c), l, cl});
            advance(1);
        };
        switch (c) {
            case '!': single(Tok::Bang); continue;
            case '&': single(Tok::Amp); continue;
            case '|': single(Tok::Bar); continue;
            case '(': single(Tok::LParen); continue;
            case ')': single(Tok::RParen); continue;
            case '[': single(Tok::LBrack); continue;
            case ']': single(Tok::RBrack); continue;
            default: break;
        }
        if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", l, cl});
            advance(2);
            continue;
        }
        if (c >= 'a' && c <= 'z') {
            std::size_t j = i;
            while (j < s.size() && ((s[j] >= 'a' && s[j] <= 'z') || (s[j] >= '0' && s[j] <= '9') || s[j] == '_')) ++j;
            out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        if (c >= 'A' && c <= 'Z') {
            std::size_t j = i;
            while (j < s.size() && s[j] >= 'A' && s[j] <= 'Z') ++j;
            out.push_back({Tok::Upper, std::string(s.substr(i, j - i)), l, cl});
            advance(j - i);
            continue;
        }
        throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

bool is_sync_prefix(const std::string& w) {
    if (w.size() < 2) return false;
    const char q = w.back();
    if (q != 'A' && q != 'E') return false;
    return std::all_of(w.begin(), w.end() - 1, [](char c) { return c == 'F' || c == 'G'; });
}

bool is_prefix(const std::string& w) {
    return w == "EX" || w == "AX" || w == "EF" || w == "AF" || w == "EG" || w == "AG" || is_sync_prefix(w);
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Formula parse_all() {
        Formula f = formula();
        if (peek().kind != Tok::End) fail("end of input, '->', '|' or '&'");
        return f;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    bool peek_upper(const char* w) const { return peek().kind == Tok::Upper && peek().text == w; }

    [[noreturn]] void fail(const std::string& expected) const {
        const Token& t = peek();
        const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw ParseError("expected " + expected + ", found " + found, t.line, t.column);
    }

    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) fail(what);
        ++pos_;
    }

    Formula formula() { return impl(); }

    Formula impl() {
        Formula lhs = disj();
        if (peek().kind == Tok::Arrow) {
            ++pos_;
            return Formula::implication(lhs, impl());
        }
        return lhs;
    }

    Formula disj() {
        Formula f = conj();
        while (peek().kind == Tok::Bar) {
            ++pos_;
            f = Formula::disjunction(f, conj());
        }
        return f;
    }

    Formula conj() {
        Formula f = unary();
        while (peek().kind == Tok::Amp) {
            ++pos_;
            f = Formula::conjunction(f, unary());
        }
        return f;
    }

    Formula unary() {
        const Token& t = peek();
        if (t.kind == Tok::Bang) {
            ++pos_;
            return Formula::negation(unary());
        }
        if (t.kind == Tok::LBrack) return bracket_until(std::nullopt);
        if (t.kind == Tok::Upper) {
            const std::string w = t.text;
            if ((w == "E" || w == "A") && toks_[pos_ + 1].kind == Tok::LBrack) {
                ++pos_;
                return bracket_until(w == "E" ? Quant::Exists : Quant::Forall);
            }
            if (!is_prefix(w)) fail("a temporal prefix (EX, AX, EF, AF, EG, AG, [FG]+A, [FG]+E) or E[/A[");
            ++pos_;
            Formula arg = unary();
            if (w == "EX") return Formula::exists_next(arg);
            if (w == "AX") return Formula::forall_next(arg);
            if (w == "EF") return Formula::exists_until(Formula::truth(), arg);
            if (w == "AF") return Formula::forall_until(Formula::truth(), arg);
            if (w == "EG")
                return Formula::negation(Formula::forall_until(Formula::truth(), Formula::negation(arg)));
            if (w == "AG")
                return Formula::negation(Formula::exists_until(Formula::truth(), Formula::negation(arg)));
            std::vector<Temporal> seq;
            for (std::size_t i = 0; i + 1 < w.size(); ++i) seq.push_back(w[i] == 'F' ? Temporal::F : Temporal::G);
            return Formula::seq_sync(std::move(seq), w.back() == 'A' ? Quant::Forall : Quant::Exists, arg);
        }
        return atom_expr();
    }

    Formula bracket_until(std::optional<Quant> path_quant) {
        expect(Tok::LBrack, "'['");
        Formula lhs = formula();
        if (path_quant) {
            if (!peek_upper("U")) fail("'U'");
            ++pos_;
            Formula rhs = formula();
            expect(Tok::RBrack, "']'");
            return *path_quant == Quant::Exists ? Formula::exists_until(lhs, rhs) : Formula::forall_until(lhs, rhs);
        }
        if (!peek_upper("UA") && !peek_upper("UE")) fail("'UA' or 'UE'");
        const bool universal = next().text == "UA";
        Formula rhs = formula();
        expect(Tok::RBrack, "']'");
        return universal ? Formula::until_forall(lhs, rhs) : Formula::until_exists(lhs, rhs);
    }

    Formula atom_expr() {
        const Token& t = peek();
        if (t.kind == Tok::Ident) {
            ++pos_;
            if (t.text == "true") return Formula::truth();
            if (t.text == "false") return Formula::falsity();
            return Formula::atom(t.text);
        }
        if (t.kind == Tok::LParen) {
            ++pos_;
            Formula f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        fail("'!', a temporal prefix, '[', 'E[', 'A[', 'true', 'false', an atom or '('");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(lex(text)).parse_all(); }

// ---------------------------------------------------------------------------
// Normalization

std::vector<Temporal> collapse_sequence(const std::vector<Temporal>& seq) {
    std::vector<Temporal> runs;
    for (auto t : seq)
        if (runs.empty() || runs.back() != t) runs.push_back(t);
    // An alternating word is equivalent to its last two letters.
    if (runs.size() > 2) runs.erase(runs.begin(), runs.end() - 2);
    return runs;
}

Formula normalize(const Formula& f) {
    using F = Formula;
    switch (f.op()) {
        case Op::True:
        case Op::Atom: return f;
        case Op::False: return F::negation(F::truth());
        case Op::Not: return F::negation(normalize(f.child()));
        case Op::Or: return F::disjunction(normalize(f.lhs()), normalize(f.rhs()));
        case Op::And:
            return F::negation(F::disjunction(F::negation(normalize(f.lhs())), F::negation(normalize(f.rhs()))));
        case Op::Implies: return F::disjunction(F::negation(normalize(f.lhs())), normalize(f.rhs()));
        case Op::ExistsNext:
        case Op::ForallNext: return F::make(f.op(), normalize(f.child()));
        case Op::ExistsUntil:
        case Op::ForallUntil:
        case Op::UntilExists:
        case Op::UntilForall: return F::make(f.op(), normalize(f.lhs()), normalize(f.rhs()));
        case Op::SeqSync: break;
    }

    const Formula arg = normalize(f.child());
    const auto seq = collapse_sequence(f.sequence());
    const bool universal = f.quant() == Quant::Forall;
    if (seq.size() == 1 && seq[0] == Temporal::F) {
        // F-exists collapses to EF; F-forall stays a synchronized until.
        return universal ? F::until_forall(F::truth(), arg) : F::exists_until(F::truth(), arg);
    }
    if (seq.size() == 1) {
        // G-forall is AG = !EF!; G-exists is the dual of F-forall.
        return universal ? F::negation(F::exists_until(F::truth(), F::negation(arg)))
                         : F::negation(F::until_forall(F::truth(), F::negation(arg)));
    }
    if (seq[0] == Temporal::G) return F::seq_sync(seq, f.quant(), arg);
    // FG-Q is the dual of GF with the other quantifier.
    return F::negation(F::seq_sync({Temporal::G, Temporal::F}, universal ? Quant::Exists : Quant::Forall,
                                   F::negation(arg)));
}

bool is_normalized(const Formula& f) {
    switch (f.op()) {
        case Op::False:
        case Op::And:
        case Op::Implies: return false;
        case Op::SeqSync:
            if (f.sequence() != std::vector<Temporal>{Temporal::G, Temporal::F}) return false;
            break;
        default: break;
    }
    for (std::size_t i = 0; i < f.arity(); ++i)
        if (!is_normalized(i == 0 ? f.lhs() : f.rhs())) return false;
    return true;
}

}  // namespace ctlsync
