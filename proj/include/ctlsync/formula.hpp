#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ctlsync {

enum class Op {
    True,
    False,
    Atom,
    Not,
    Or,
    And,
    Implies,
    ExistsNext,
    ForallNext,
    ExistsUntil,  // E[a U b]
    ForallUntil,  // A[a U b]
    UntilExists,  // [a UE b]: one depth, witnessed path by path
    UntilForall,  // [a UA b]: one depth for all paths
    SeqSync,      // e.g. GFA a
};

enum class Quant { Exists, Forall };
enum class Temporal { F, G };

/// Immutable CTL+Sync formula with shared subtrees and value semantics.
class Formula {
public:
    Formula();  // true

    static Formula truth();
    static Formula falsity();
    static Formula atom(std::string name);
    static Formula negation(Formula f);
    static Formula disjunction(Formula a, Formula b);
    static Formula conjunction(Formula a, Formula b);
    static Formula implication(Formula a, Formula b);
    static Formula exists_next(Formula f);
    static Formula forall_next(Formula f);
    static Formula exists_until(Formula a, Formula b);
    static Formula forall_until(Formula a, Formula b);
    static Formula until_exists(Formula a, Formula b);
    static Formula until_forall(Formula a, Formula b);
    static Formula seq_sync(std::vector<Temporal> seq, Quant quant, Formula f);

    /// Builds a node of any operator from its operands (1 or 2 children).
    static Formula make(Op op, const Formula& a, const Formula& b = Formula());

    Op op() const { return node_->op; }
    const std::string& name() const { return node_->name; }
    const std::vector<Temporal>& sequence() const { return node_->seq; }
    Quant quant() const { return node_->quant; }
    const Formula& lhs() const;
    const Formula& rhs() const;
    /// Operand of a unary node.
    const Formula& child() const { return lhs(); }
    std::size_t arity() const;

    /// Count of nested operators; atoms and constants have depth 0.
    std::size_t depth() const { return node_->depth; }

    /// Canonical concrete syntax, fully parenthesized; parse() inverts it.
    std::string to_string() const;

    bool operator==(const Formula& other) const;
    bool operator!=(const Formula& other) const { return !(*this == other); }

private:
    struct Node {
        Op op = Op::True;
        std::string name;
        std::vector<Temporal> seq;
        Quant quant = Quant::Exists;
        std::vector<Formula> children;
        std::size_t depth = 0;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula build(Node n);

    std::shared_ptr<const Node> node_;
};

/// Parses the concrete syntax:
///
///     formula := impl
///     impl    := or ('->' impl)?
///     or      := and ('|' and)*
///     and     := unary ('&' unary)*
///     unary   := '!' unary | prefix unary | bracketUntil | atomExpr
///     prefix  := EX | AX | EF | AF | EG | AG | /[FG]+[AE]/
///     bracketUntil := ('E'|'A') '[' formula 'U' formula ']'
///                   | '[' formula ('UA'|'UE') formula ']'
///     atomExpr := 'true' | 'false' | /[a-z][a-z0-9_]*/ | '(' formula ')'
///
/// EF/AF/EG/AG are expanded to until forms while parsing. Throws ParseError.
Formula parse_formula(std::string_view text);

/// Reduces a temporal sequence with FF=F, GG=G, FGF=GF, GFG=FG.
std::vector<Temporal> collapse_sequence(const std::vector<Temporal>& seq);

/// Rewrites into the core operators: atoms, true, not, or, EX, AX, EU, AU,
/// UE, UA, GF-exists and GF-forall. Idempotent.
Formula normalize(const Formula& f);

/// True if f only uses the core operators produced by normalize().
bool is_normalized(const Formula& f);

}  // namespace ctlsync
