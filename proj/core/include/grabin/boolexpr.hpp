#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace grabin {

/// A letter of the alphabet 2^AP. Bit i is set iff the i-th proposition holds.
using Letter = std::uint32_t;

/// Boolean formula over atomic propositions referenced by index.
///
/// Nodes are immutable and shared, so copies are cheap. The same type is used
/// for automaton edge guards and for the propositional parts of LTL patterns.
class BoolExpr {
public:
    enum class Op { True, False, Var, Not, And, Or, Implies, Iff };

    BoolExpr();  // true

    static BoolExpr constant(bool value);
    static BoolExpr var(unsigned index);
    static BoolExpr negate(BoolExpr operand);
    static BoolExpr conj(BoolExpr lhs, BoolExpr rhs);
    static BoolExpr disj(BoolExpr lhs, BoolExpr rhs);
    static BoolExpr implies(BoolExpr lhs, BoolExpr rhs);
    static BoolExpr iff(BoolExpr lhs, BoolExpr rhs);

    /// Disjunction of full minterms over `num_aps` propositions. Empty list gives false.
    static BoolExpr from_letters(const std::vector<Letter>& letters, unsigned num_aps);

    Op op() const { return node_->op; }
    unsigned index() const { return node_->index; }
    const BoolExpr& lhs() const { return node_->children.at(0); }
    const BoolExpr& rhs() const { return node_->children.at(1); }

    bool eval(Letter letter) const;

    /// Largest proposition index referenced plus one; 0 if none.
    unsigned support_size() const;

    /// Rewrites every variable index through `mapping` (old index -> new index).
    BoolExpr remap(const std::vector<unsigned>& mapping) const;

    /// Structural equality.
    friend bool operator==(const BoolExpr& a, const BoolExpr& b);

private:
    struct Node {
        Op op;
        unsigned index = 0;
        std::vector<BoolExpr> children;
    };
    explicit BoolExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static BoolExpr make(Op op, unsigned index, std::vector<BoolExpr> children);

    std::shared_ptr<const Node> node_;
};

/// Renders with HOA guard syntax: `t`, `f`, `!`, `&`, `|`, integer indices, parentheses.
/// Implications and equivalences are expanded.
std::string to_hoa_guard(const BoolExpr& expr);

/// Renders with proposition names, fully parenthesizing binary operators.
std::string to_named_string(const BoolExpr& expr, const std::vector<std::string>& names);

}  // namespace grabin
