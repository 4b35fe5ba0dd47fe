#include "grabin/ltl.hpp"

#include <cctype>
#include <memory>

namespace grabin {

namespace {

// Full LTL syntax tree. Only used to recognise the supported patterns.
struct Ltl {
    enum class Op { True, False, Var, Not, And, Or, Implies, Iff, Next, Finally, Globally, Until };
    Op op;
    unsigned var = 0;
    std::shared_ptr<const Ltl> a;
    std::shared_ptr<const Ltl> b;
};
using LtlPtr = std::shared_ptr<const Ltl>;

LtlPtr node(Ltl::Op op, LtlPtr a = nullptr, LtlPtr b = nullptr, unsigned var = 0)
{
    return std::make_shared<const Ltl>(Ltl{op, var, std::move(a), std::move(b)});
}

struct Token {
    enum class Kind { Ident, LParen, RParen, Not, And, Or, Implies, Iff, Next, Finally, Globally, Until, True, False, End };
    Kind kind;
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text)
{
    using K = Token::Kind;
    std::vector<Token> out;
    std::size_t i = 0;
    auto ident_char = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t col = i + 1;
        if (c == '(') { out.push_back({K::LParen, "(", col}); ++i; continue; }
        if (c == ')') { out.push_back({K::RParen, ")", col}); ++i; continue; }
        if (c == '!' || c == '~') { out.push_back({K::Not, "!", col}); ++i; continue; }
        if (c == '&') {
            i += (i + 1 < text.size() && text[i + 1] == '&') ? 2 : 1;
            out.push_back({K::And, "&", col});
            continue;
        }
        if (c == '|') {
            i += (i + 1 < text.size() && text[i + 1] == '|') ? 2 : 1;
            out.push_back({K::Or, "|", col});
            continue;
        }
        if (text.substr(i, 2) == "->") { out.push_back({K::Implies, "->", col}); i += 2; continue; }
        if (text.substr(i, 3) == "<->") { out.push_back({K::Iff, "<->", col}); i += 3; continue; }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = i;
            while (i < text.size() && ident_char(text[i]))
                ++i;
            std::string word(text.substr(start, i - start));
            if (word == "true" || word == "false") {
                out.push_back({word == "true" ? K::True : K::False, word, col});
            } else if (word == "U") {
                out.push_back({K::Until, word, col});
            } else if (word.find_first_not_of("GFX") == std::string::npos) {
                for (std::size_t k = 0; k < word.size(); ++k) {
                    K kind = word[k] == 'G' ? K::Globally : word[k] == 'F' ? K::Finally : K::Next;
                    out.push_back({kind, std::string(1, word[k]), col + k});
                }
            } else {
                out.push_back({K::Ident, word, col});
            }
            continue;
        }
        throw SyntaxError(0, "column " + std::to_string(col) + ": unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back({K::End, "", text.size() + 1});
    return out;
}

class LtlParser {
public:
    LtlParser(std::string_view text, const ApTable& aps) : tokens_(tokenize(text)), aps_(aps) {}

    LtlPtr parse()
    {
        LtlPtr e = parse_iff();
        if (peek().kind != Token::Kind::End)
            fail("unexpected '" + peek().text + "'");
        return e;
    }

private:
    using K = Token::Kind;

    const Token& peek() const { return tokens_[pos_]; }
    bool accept(K kind)
    {
        if (peek().kind != kind)
            return false;
        ++pos_;
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw SyntaxError(0, "column " + std::to_string(peek().column) + ": " + msg);
    }

    LtlPtr parse_iff()
    {
        LtlPtr e = parse_implies();
        while (accept(K::Iff))
            e = node(Ltl::Op::Iff, e, parse_implies());
        return e;
    }
    LtlPtr parse_implies()
    {
        LtlPtr e = parse_or();
        if (accept(K::Implies))
            return node(Ltl::Op::Implies, e, parse_implies());
        return e;
    }
    LtlPtr parse_or()
    {
        LtlPtr e = parse_and();
        while (accept(K::Or))
            e = node(Ltl::Op::Or, e, parse_and());
        return e;
    }
    LtlPtr parse_and()
    {
        LtlPtr e = parse_until();
        while (accept(K::And))
            e = node(Ltl::Op::And, e, parse_until());
        return e;
    }
    LtlPtr parse_until()
    {
        LtlPtr e = parse_unary();
        if (accept(K::Until))
            return node(Ltl::Op::Until, e, parse_until());
        return e;
    }
    LtlPtr parse_unary()
    {
        if (accept(K::Not))
            return node(Ltl::Op::Not, parse_unary());
        if (accept(K::Next))
            return node(Ltl::Op::Next, parse_unary());
        if (accept(K::Finally))
            return node(Ltl::Op::Finally, parse_unary());
        if (accept(K::Globally))
            return node(Ltl::Op::Globally, parse_unary());
        return parse_atom();
    }
    LtlPtr parse_atom()
    {
        if (accept(K::LParen)) {
            LtlPtr e = parse_iff();
            if (!accept(K::RParen))
                fail("expected ')'");
            return e;
        }
        if (accept(K::True))
            return node(Ltl::Op::True);
        if (accept(K::False))
            return node(Ltl::Op::False);
        if (peek().kind == K::Ident) {
            const Token& t = tokens_[pos_++];
            auto idx = aps_.find(t.text);
            if (!idx)
                throw SyntaxError(0, "column " + std::to_string(t.column) + ": unknown atomic proposition '" +
                                         t.text + "'");
            return node(Ltl::Op::Var, nullptr, nullptr, *idx);
        }
        if (peek().kind == K::End)
            fail("unexpected end of formula");
        fail("unexpected '" + peek().text + "'");
    }

    std::vector<Token> tokens_;
    const ApTable& aps_;
    std::size_t pos_ = 0;
};

bool is_boolean(const Ltl& e)
{
    switch (e.op) {
    case Ltl::Op::True:
    case Ltl::Op::False:
    case Ltl::Op::Var: return true;
    case Ltl::Op::Not: return is_boolean(*e.a);
    case Ltl::Op::And:
    case Ltl::Op::Or:
    case Ltl::Op::Implies:
    case Ltl::Op::Iff: return is_boolean(*e.a) && is_boolean(*e.b);
    default: return false;
    }
}

BoolExpr to_bool(const Ltl& e)
{
    switch (e.op) {
    case Ltl::Op::True: return BoolExpr::constant(true);
    case Ltl::Op::False: return BoolExpr::constant(false);
    case Ltl::Op::Var: return BoolExpr::var(e.var);
    case Ltl::Op::Not: return BoolExpr::negate(to_bool(*e.a));
    case Ltl::Op::And: return BoolExpr::conj(to_bool(*e.a), to_bool(*e.b));
    case Ltl::Op::Or: return BoolExpr::disj(to_bool(*e.a), to_bool(*e.b));
    case Ltl::Op::Implies: return BoolExpr::implies(to_bool(*e.a), to_bool(*e.b));
    case Ltl::Op::Iff: return BoolExpr::iff(to_bool(*e.a), to_bool(*e.b));
    default: throw Error("internal: temporal operator in propositional position");
    }
}

const char* op_symbol(Ltl::Op op)
{
    switch (op) {
    case Ltl::Op::Next: return "X";
    case Ltl::Op::Finally: return "F";
    case Ltl::Op::Globally: return "G";
    case Ltl::Op::Until: return "U";
    default: return "?";
    }
}

// Left-to-right, outermost-first search for the temporal operator that breaks the
// fragment. `U` is always reported when present.
const Ltl* find_until(const Ltl& e)
{
    if (e.op == Ltl::Op::Until)
        return &e;
    for (const auto* child : {e.a.get(), e.b.get()})
        if (child != nullptr)
            if (const Ltl* u = find_until(*child))
                return u;
    return nullptr;
}

/// Reports the outermost temporal operator at or below `offending`, skipping connectives.
[[noreturn]] void unsupported(const Ltl& offending, const std::string& context)
{
    const Ltl* cursor = &offending;
    while (cursor->op == Ltl::Op::Not || cursor->op == Ltl::Op::And || cursor->op == Ltl::Op::Or ||
           cursor->op == Ltl::Op::Implies || cursor->op == Ltl::Op::Iff)
        cursor = (cursor->b && is_boolean(*cursor->a)) ? cursor->b.get() : cursor->a.get();
    std::string op = op_symbol(cursor->op);
    throw UnsupportedFeature(op, "formula '" + context + "' is outside the supported pattern fragment (operator " + op +
                                     "); supply this conjunct as an HOA automaton instead");
}

Pattern classify(const Ltl& e, const std::string& source)
{
    if (const Ltl* u = find_until(e))
        unsupported(*u, source);
    if (is_boolean(e))
        return Pattern{Pattern::Kind::StateInit, to_bool(e), {}};
    if (e.op == Ltl::Op::Globally) {
        const Ltl& body = *e.a;
        if (is_boolean(body))
            return Pattern{Pattern::Kind::Always, to_bool(body), {}};
        if (body.op == Ltl::Op::Finally && is_boolean(*body.a))
            return Pattern{Pattern::Kind::Recurrence, to_bool(*body.a), {}};
        if (body.op == Ltl::Op::Implies && is_boolean(*body.a)) {
            const Ltl& rhs = *body.b;
            if (rhs.op == Ltl::Op::Next && is_boolean(*rhs.a))
                return Pattern{Pattern::Kind::NextResponse, to_bool(*body.a), to_bool(*rhs.a)};
            if (rhs.op == Ltl::Op::Finally && is_boolean(*rhs.a))
                return Pattern{Pattern::Kind::Response, to_bool(*body.a), to_bool(*rhs.a)};
            unsupported(rhs, source);
        }
        unsupported(body, source);
    }
    if (e.op == Ltl::Op::Finally && e.a->op == Ltl::Op::Globally && is_boolean(*e.a->a))
        return Pattern{Pattern::Kind::Persistence, to_bool(*e.a->a), {}};
    unsupported(e, source);
}

void flatten_and(const LtlPtr& e, std::vector<LtlPtr>& out)
{
    if (e->op == Ltl::Op::And && !is_boolean(*e)) {
        flatten_and(e->a, out);
        flatten_and(e->b, out);
    } else {
        out.push_back(e);
    }
}

}  // namespace

std::vector<Pattern> parse_ltl(std::string_view text, const ApTable& aps)
{
    LtlPtr root = LtlParser(text, aps).parse();
    std::vector<LtlPtr> conjuncts;
    flatten_and(root, conjuncts);
    std::vector<Pattern> out;
    out.reserve(conjuncts.size());
    for (const auto& c : conjuncts)
        out.push_back(classify(*c, std::string(text)));
    return out;
}

std::string print_pattern(const Pattern& pattern, const ApTable& aps)
{
    const auto& names = aps.names();
    auto b = [&](const BoolExpr& e) { return to_named_string(e, names); };
    switch (pattern.kind) {
    case Pattern::Kind::StateInit: return b(pattern.first);
    case Pattern::Kind::Always: return "G " + b(pattern.first);
    case Pattern::Kind::Recurrence: return "G F " + b(pattern.first);
    case Pattern::Kind::Persistence: return "F G " + b(pattern.first);
    case Pattern::Kind::NextResponse: return "G (" + b(pattern.first) + " -> X " + b(pattern.second) + ")";
    case Pattern::Kind::Response: return "G (" + b(pattern.first) + " -> F " + b(pattern.second) + ")";
    }
    return {};
}

Automaton compile_pattern(const Pattern& pattern, unsigned num_aps)
{
    const BoolExpr& b = pattern.first;
    const BoolExpr& b2 = pattern.second;
    const unsigned letters = 1u << num_aps;
    // Successor tables are filled letter by letter so the result is total by construction.
    auto table = [&](unsigned states, auto&& succ) {
        std::vector<std::uint32_t> next(states * letters);
        for (unsigned s = 0; s < states; ++s)
            for (Letter x = 0; x < letters; ++x)
                next[s * letters + x] = succ(s, x);
        return next;
    };
    switch (pattern.kind) {
    case Pattern::Kind::StateInit: {
        // 0 initial, 1 satisfied, 2 violated
        auto next = table(3, [&](unsigned s, Letter x) -> std::uint32_t {
            if (s == 0)
                return b.eval(x) ? 1 : 2;
            return s;
        });
        return Automaton::from_table(num_aps, 0, next, acc::Buchi{{1}});
    }
    case Pattern::Kind::Always: {
        // 0 ok, 1 failure sink
        auto next = table(2, [&](unsigned s, Letter x) -> std::uint32_t { return s == 0 && b.eval(x) ? 0 : 1; });
        return Automaton::from_table(num_aps, 0, next, acc::Buchi{{0}});
    }
    case Pattern::Kind::Recurrence: {
        // 1 iff the last letter satisfied b
        auto next = table(2, [&](unsigned, Letter x) -> std::uint32_t { return b.eval(x) ? 1 : 0; });
        return Automaton::from_table(num_aps, 0, next, acc::Buchi{{1}});
    }
    case Pattern::Kind::Persistence: {
        // 1 iff the last letter violated b
        auto next = table(2, [&](unsigned, Letter x) -> std::uint32_t { return b.eval(x) ? 0 : 1; });
        return Automaton::from_table(num_aps, 0, next, acc::CoBuchi{{1}});
    }
    case Pattern::Kind::NextResponse: {
        // 0 idle, 1 obligation for the next letter, 2 failure sink
        auto next = table(3, [&](unsigned s, Letter x) -> std::uint32_t {
            if (s == 2 || (s == 1 && !b2.eval(x)))
                return 2;
            return b.eval(x) ? 1 : 0;
        });
        return Automaton::from_table(num_aps, 0, next, acc::Buchi{{0, 1}});
    }
    case Pattern::Kind::Response: {
        // 0 idle, 1 waiting for b2
        auto next = table(2, [&](unsigned s, Letter x) -> std::uint32_t {
            if (b2.eval(x))
                return 0;
            return (s == 1 || b.eval(x)) ? 1 : 0;
        });
        return Automaton::from_table(num_aps, 0, next, acc::Buchi{{0}});
    }
    }
    throw Error("internal: unknown pattern kind");
}

std::vector<ClassifiedConjunct> normalize(const Automaton& aut, Role role)
{
    const auto& acceptance = aut.acceptance();
    if (const auto* safety = std::get_if<acc::Safety>(&acceptance)) {
        StateSet safe;
        for (unsigned s = 0; s < aut.num_states(); ++s)
            if (!contains(safety->unsafe, s))
                safe.push_back(s);
        return {ClassifiedConjunct{aut.with_acceptance(acc::Buchi{std::move(safe)}), role, ConjunctKind::Buchi}};
    }
    if (std::holds_alternative<acc::Buchi>(acceptance))
        return {ClassifiedConjunct{aut, role, ConjunctKind::Buchi}};
    if (std::holds_alternative<acc::CoBuchi>(acceptance))
        return {ClassifiedConjunct{aut, role, ConjunctKind::CoBuchi}};
    if (std::holds_alternative<acc::OnePairRabin>(acceptance)) {
        auto parts = decompose_rabin(aut);
        return {ClassifiedConjunct{std::move(parts.co_buchi), role, ConjunctKind::CoBuchi},
                ClassifiedConjunct{std::move(parts.buchi), role, ConjunctKind::Buchi}};
    }
    throw WrongAcceptanceKind("conjuncts must have Rabin index 1 (safety, Buchi, co-Buchi or Rabin 1); got " +
                              acceptance_name(acceptance));
}

}  // namespace grabin
