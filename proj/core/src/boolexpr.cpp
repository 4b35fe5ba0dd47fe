#include "grabin/boolexpr.hpp"

#include <algorithm>

namespace grabin {

BoolExpr::BoolExpr() : BoolExpr(make(Op::True, 0, {})) {}

BoolExpr BoolExpr::make(Op op, unsigned index, std::vector<BoolExpr> children)
{
    auto node = std::make_shared<Node>();
    node->op = op;
    node->index = index;
    node->children = std::move(children);
    return BoolExpr(std::move(node));
}

BoolExpr BoolExpr::constant(bool value) { return make(value ? Op::True : Op::False, 0, {}); }
BoolExpr BoolExpr::var(unsigned index) { return make(Op::Var, index, {}); }
BoolExpr BoolExpr::negate(BoolExpr operand) { return make(Op::Not, 0, {std::move(operand)}); }
BoolExpr BoolExpr::conj(BoolExpr lhs, BoolExpr rhs) { return make(Op::And, 0, {std::move(lhs), std::move(rhs)}); }
BoolExpr BoolExpr::disj(BoolExpr lhs, BoolExpr rhs) { return make(Op::Or, 0, {std::move(lhs), std::move(rhs)}); }
BoolExpr BoolExpr::implies(BoolExpr lhs, BoolExpr rhs) { return make(Op::Implies, 0, {std::move(lhs), std::move(rhs)}); }
BoolExpr BoolExpr::iff(BoolExpr lhs, BoolExpr rhs) { return make(Op::Iff, 0, {std::move(lhs), std::move(rhs)}); }

BoolExpr BoolExpr::from_letters(const std::vector<Letter>& letters, unsigned num_aps)
{
    if (letters.empty())
        return constant(false);
    if (num_aps == 0)
        return constant(true);
    std::vector<BoolExpr> cubes;
    cubes.reserve(letters.size());
    for (Letter letter : letters) {
        BoolExpr cube = ((letter & 1u) != 0) ? var(0) : negate(var(0));
        for (unsigned i = 1; i < num_aps; ++i) {
            BoolExpr lit = ((letter >> i) & 1u) != 0 ? var(i) : negate(var(i));
            cube = conj(std::move(cube), std::move(lit));
        }
        cubes.push_back(std::move(cube));
    }
    BoolExpr result = cubes.front();
    for (std::size_t i = 1; i < cubes.size(); ++i)
        result = disj(std::move(result), cubes[i]);
    return result;
}

bool BoolExpr::eval(Letter letter) const
{
    switch (node_->op) {
    case Op::True: return true;
    case Op::False: return false;
    case Op::Var: return ((letter >> node_->index) & 1u) != 0;
    case Op::Not: return !lhs().eval(letter);
    case Op::And: return lhs().eval(letter) && rhs().eval(letter);
    case Op::Or: return lhs().eval(letter) || rhs().eval(letter);
    case Op::Implies: return !lhs().eval(letter) || rhs().eval(letter);
    case Op::Iff: return lhs().eval(letter) == rhs().eval(letter);
    }
    return false;
}

unsigned BoolExpr::support_size() const
{
    if (node_->op == Op::Var)
        return node_->index + 1;
    unsigned result = 0;
    for (const auto& child : node_->children)
        result = std::max(result, child.support_size());
    return result;
}

BoolExpr BoolExpr::remap(const std::vector<unsigned>& mapping) const
{
    if (node_->op == Op::Var)
        return var(mapping.at(node_->index));
    if (node_->children.empty())
        return *this;
    std::vector<BoolExpr> children;
    children.reserve(node_->children.size());
    for (const auto& child : node_->children)
        children.push_back(child.remap(mapping));
    return make(node_->op, 0, std::move(children));
}

bool operator==(const BoolExpr& a, const BoolExpr& b)
{
    if (a.node_ == b.node_)
        return true;
    if (a.op() != b.op())
        return false;
    if (a.op() == BoolExpr::Op::Var)
        return a.index() == b.index();
    return a.node_->children == b.node_->children;
}

namespace {

void render_hoa(const BoolExpr& e, std::string& out)
{
    using Op = BoolExpr::Op;
    switch (e.op()) {
    case Op::True: out += 't'; return;
    case Op::False: out += 'f'; return;
    case Op::Var: out += std::to_string(e.index()); return;
    case Op::Not:
        out += '!';
        render_hoa(e.lhs(), out);
        return;
    case Op::And:
    case Op::Or:
        out += '(';
        render_hoa(e.lhs(), out);
        out += e.op() == Op::And ? " & " : " | ";
        render_hoa(e.rhs(), out);
        out += ')';
        return;
    case Op::Implies:
        render_hoa(BoolExpr::disj(BoolExpr::negate(e.lhs()), e.rhs()), out);
        return;
    case Op::Iff:
        render_hoa(BoolExpr::disj(BoolExpr::conj(e.lhs(), e.rhs()),
                                  BoolExpr::conj(BoolExpr::negate(e.lhs()), BoolExpr::negate(e.rhs()))),
                   out);
        return;
    }
}

void render_named(const BoolExpr& e, const std::vector<std::string>& names, std::string& out)
{
    using Op = BoolExpr::Op;
    const char* sym = nullptr;
    switch (e.op()) {
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Var: out += names.at(e.index()); return;
    case Op::Not:
        out += '!';
        render_named(e.lhs(), names, out);
        return;
    case Op::And: sym = " & "; break;
    case Op::Or: sym = " | "; break;
    case Op::Implies: sym = " -> "; break;
    case Op::Iff: sym = " <-> "; break;
    }
    out += '(';
    render_named(e.lhs(), names, out);
    out += sym;
    render_named(e.rhs(), names, out);
    out += ')';
}

}  // namespace

std::string to_hoa_guard(const BoolExpr& expr)
{
    std::string out;
    render_hoa(expr, out);
    return out;
}

std::string to_named_string(const BoolExpr& expr, const std::vector<std::string>& names)
{
    std::string out;
    render_named(expr, names, out);
    return out;
}

}  // namespace grabin
