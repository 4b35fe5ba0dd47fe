#include "grabin/hoa.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace grabin {

namespace {

std::string trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::string collapse_spaces(std::string_view s)
{
    std::string out;
    bool space = false;
    for (char c : s) {
        if (c == ' ' || c == '\t') {
            space = true;
            continue;
        }
        if (space && !out.empty())
            out += ' ';
        space = false;
        out += c;
    }
    return out;
}

unsigned parse_unsigned(std::string_view s, std::size_t line, const char* what)
{
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
        throw SyntaxError(line, std::string("expected a non-negative integer for ") + what + ", got '" +
                                    std::string(s) + "'");
    unsigned long value = std::stoul(std::string(s));
    if (value > 0xFFFFFFFFul)
        throw SyntaxError(line, std::string(what) + " out of range");
    return static_cast<unsigned>(value);
}

/// Recursive-descent parser for HOA label expressions: `|` < `&` < `!`.
class GuardParser {
public:
    GuardParser(std::string_view text, std::size_t line, unsigned num_aps)
        : text_(text), line_(line), num_aps_(num_aps)
    {
    }

    BoolExpr parse()
    {
        BoolExpr e = parse_or();
        skip();
        if (pos_ != text_.size())
            fail("unexpected '" + std::string(1, text_[pos_]) + "' in guard");
        return e;
    }

private:
    void skip()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
            ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    [[noreturn]] void fail(const std::string& msg) { throw SyntaxError(line_, msg); }

    BoolExpr parse_or()
    {
        BoolExpr e = parse_and();
        while (eat('|'))
            e = BoolExpr::disj(std::move(e), parse_and());
        return e;
    }
    BoolExpr parse_and()
    {
        BoolExpr e = parse_not();
        while (eat('&'))
            e = BoolExpr::conj(std::move(e), parse_not());
        return e;
    }
    BoolExpr parse_not()
    {
        if (eat('!'))
            return BoolExpr::negate(parse_not());
        return parse_atom();
    }
    BoolExpr parse_atom()
    {
        skip();
        if (eat('(')) {
            BoolExpr e = parse_or();
            if (!eat(')'))
                fail("missing ')' in guard");
            return e;
        }
        if (pos_ >= text_.size())
            fail("unexpected end of guard");
        char c = text_[pos_];
        if (c == 't' || c == 'f') {
            ++pos_;
            return BoolExpr::constant(c == 't');
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            unsigned idx = parse_unsigned(text_.substr(start, pos_ - start), line_, "AP index");
            if (idx >= num_aps_)
                fail("AP index " + std::to_string(idx) + " out of range");
            return BoolExpr::var(idx);
        }
        if (c == '@')
            throw UnsupportedFeature("alias", "line " + std::to_string(line_) + ": aliases are not supported");
        fail("unexpected '" + std::string(1, c) + "' in guard");
    }

    std::string_view text_;
    std::size_t line_;
    unsigned num_aps_;
    std::size_t pos_ = 0;
};

std::vector<std::string> header_tokens(std::string_view s, std::size_t line)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == ' ' || s[i] == '\t') {
            ++i;
            continue;
        }
        if (s[i] == '"') {
            auto end = s.find('"', i + 1);
            if (end == std::string_view::npos)
                throw SyntaxError(line, "unterminated string");
            out.emplace_back(s.substr(i, end - i + 1));
            i = end + 1;
            continue;
        }
        std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t')
            ++i;
        out.emplace_back(s.substr(start, i - start));
    }
    return out;
}

std::string unquote(const std::string& token, std::size_t line)
{
    if (token.size() < 2 || token.front() != '"' || token.back() != '"')
        throw SyntaxError(line, "expected a quoted string, got " + token);
    return token.substr(1, token.size() - 2);
}

enum class AccKind { Buchi, CoBuchi, Rabin1, Parity, Safety };

struct StateBlock {
    std::vector<unsigned> sets;
    std::vector<Edge> edges;
    bool seen = false;
};

std::optional<std::vector<unsigned>> parse_set_list(std::string_view rest, std::size_t line)
{
    auto open = rest.find('{');
    if (open == std::string_view::npos)
        return std::nullopt;
    auto close = rest.find('}', open);
    if (close == std::string_view::npos)
        throw SyntaxError(line, "unterminated acceptance set list");
    if (!trim(rest.substr(close + 1)).empty())
        throw SyntaxError(line, "unexpected text after acceptance sets");
    std::vector<unsigned> sets;
    std::istringstream is{std::string(rest.substr(open + 1, close - open - 1))};
    std::string tok;
    while (is >> tok)
        sets.push_back(parse_unsigned(tok, line, "acceptance set"));
    return sets;
}

}  // namespace

std::string parity_max_even_condition(unsigned num_colours)
{
    if (num_colours == 0)
        return "f";
    std::string cond = "Inf(0)";
    for (unsigned c = 1; c < num_colours; ++c) {
        const std::string inner = c == 1 ? cond : "(" + cond + ")";
        cond = (c % 2 == 0 ? "Inf(" : "Fin(") + std::to_string(c) + (c % 2 == 0 ? ") | " : ") & ") + inner;
    }
    return cond;
}

HoaAutomaton parse_hoa(std::string_view text)
{
    std::vector<std::string> lines;
    {
        std::string current;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back(current);
                current.clear();
            } else {
                current += c;
            }
        }
        if (!current.empty())
            lines.push_back(current);
    }

    std::optional<unsigned> num_states;
    std::optional<unsigned> start;
    std::vector<std::string> ap_names;
    bool have_aps = false;
    bool have_version = false;
    std::optional<AccKind> kind;
    unsigned parity_colours = 0;
    std::optional<std::string> acceptance_line;
    std::size_t acceptance_lineno = 0;
    std::string name;

    std::size_t i = 0;
    bool body = false;
    for (; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        std::string line = trim(lines[i]);
        if (line.empty())
            continue;
        if (line == "--BODY--") {
            body = true;
            ++i;
            break;
        }
        auto colon = line.find(':');
        if (colon == std::string::npos)
            throw SyntaxError(lineno, "expected a header item, got '" + line + "'");
        std::string key = line.substr(0, colon);
        std::string value = trim(std::string_view(line).substr(colon + 1));
        if (key == "HOA") {
            if (value != "v1")
                throw UnsupportedFeature("version", "line " + std::to_string(lineno) + ": unsupported HOA version " + value);
            have_version = true;
        } else if (key == "States") {
            num_states = parse_unsigned(value, lineno, "States");
        } else if (key == "Start") {
            if (start)
                throw UnsupportedFeature("Start", "line " + std::to_string(lineno) + ": multiple initial states");
            if (value.find('&') != std::string::npos)
                throw UnsupportedFeature("Start", "line " + std::to_string(lineno) + ": alternating start states");
            start = parse_unsigned(value, lineno, "Start");
        } else if (key == "AP") {
            auto toks = header_tokens(value, lineno);
            if (toks.empty())
                throw SyntaxError(lineno, "AP line without count");
            unsigned count = parse_unsigned(toks[0], lineno, "AP count");
            if (toks.size() != count + 1)
                throw SyntaxError(lineno, "AP count does not match the listed names");
            for (std::size_t k = 1; k < toks.size(); ++k)
                ap_names.push_back(unquote(toks[k], lineno));
            have_aps = true;
        } else if (key == "acc-name") {
            std::string v = collapse_spaces(value);
            if (v == "Buchi") {
                kind = AccKind::Buchi;
            } else if (v == "co-Buchi") {
                kind = AccKind::CoBuchi;
            } else if (v == "Rabin 1") {
                kind = AccKind::Rabin1;
            } else if (v == "safety") {
                kind = AccKind::Safety;
            } else if (v.rfind("parity max even ", 0) == 0) {
                kind = AccKind::Parity;
                parity_colours = parse_unsigned(v.substr(16), lineno, "parity colour count");
            } else {
                throw UnsupportedFeature(v, "line " + std::to_string(lineno) + ": unsupported acceptance name '" + v +
                                                "'");
            }
        } else if (key == "Acceptance") {
            acceptance_line = collapse_spaces(value);
            acceptance_lineno = lineno;
        } else if (key == "name") {
            auto toks = header_tokens(value, lineno);
            if (toks.size() != 1)
                throw SyntaxError(lineno, "name expects one quoted string");
            name = unquote(toks[0], lineno);
        } else if (key == "tool" || key == "properties") {
            // informational
        } else {
            throw UnsupportedFeature(key, "line " + std::to_string(lineno) + ": unsupported header item '" + key + "'");
        }
    }

    if (!body)
        throw SyntaxError(lines.size(), "missing --BODY--");
    if (!have_version)
        throw SyntaxError(1, "missing 'HOA: v1' header");
    if (!num_states)
        throw SyntaxError(0, "missing States header");
    if (!start)
        throw SyntaxError(0, "missing Start header");
    if (!have_aps)
        throw SyntaxError(0, "missing AP header");
    if (!kind)
        throw UnsupportedFeature("acc-name", "missing acc-name header; acceptance must be named");
    if (!acceptance_line)
        throw SyntaxError(0, "missing Acceptance header");

    ApTable aps(ap_names);

    bool safety_with_sinks = false;
    {
        std::string expected;
        switch (*kind) {
        case AccKind::Buchi: expected = "1 Inf(0)"; break;
        case AccKind::CoBuchi: expected = "1 Fin(0)"; break;
        case AccKind::Rabin1: expected = "2 Fin(0) & Inf(1)"; break;
        case AccKind::Parity:
            expected = std::to_string(parity_colours) + " " + parity_max_even_condition(parity_colours);
            break;
        case AccKind::Safety:
            expected = "0 t";
            if (*acceptance_line == "1 Fin(0)") {
                expected = "1 Fin(0)";
                safety_with_sinks = true;
            }
            break;
        }
        auto squeeze = [](std::string t) {
            t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
            return t;
        };
        if (squeeze(*acceptance_line) != squeeze(expected))
            throw SyntaxError(acceptance_lineno, "Acceptance '" + *acceptance_line +
                                                     "' does not match acc-name (expected '" + expected + "')");
    }
    const unsigned num_sets = [&]() -> unsigned {
        switch (*kind) {
        case AccKind::Buchi:
        case AccKind::CoBuchi: return 1;
        case AccKind::Rabin1: return 2;
        case AccKind::Parity: return parity_colours;
        case AccKind::Safety: return safety_with_sinks ? 1 : 0;
        }
        return 0;
    }();

    std::vector<StateBlock> blocks(*num_states);
    StateBlock* current = nullptr;
    bool ended = false;
    for (; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        std::string line = trim(lines[i]);
        if (line.empty())
            continue;
        if (line == "--END--") {
            ended = true;
            ++i;
            break;
        }
        if (line.rfind("State:", 0) == 0) {
            std::string rest = trim(std::string_view(line).substr(6));
            if (!rest.empty() && rest[0] == '[')
                throw UnsupportedFeature("state-label", "line " + std::to_string(lineno) + ": state labels are not supported");
            std::size_t p = 0;
            while (p < rest.size() && std::isdigit(static_cast<unsigned char>(rest[p])))
                ++p;
            unsigned idx = parse_unsigned(rest.substr(0, p), lineno, "state index");
            if (idx >= blocks.size())
                throw SyntaxError(lineno, "state " + std::to_string(idx) + " out of range");
            if (blocks[idx].seen)
                throw SyntaxError(lineno, "state " + std::to_string(idx) + " declared twice");
            std::string after = trim(std::string_view(rest).substr(p));
            if (!after.empty() && after[0] == '"') {
                auto end = after.find('"', 1);
                if (end == std::string::npos)
                    throw SyntaxError(lineno, "unterminated state name");
                after = trim(std::string_view(after).substr(end + 1));
            }
            if (auto sets = parse_set_list(after, lineno)) {
                for (unsigned set : *sets)
                    if (set >= num_sets)
                        throw SyntaxError(lineno, "acceptance set " + std::to_string(set) + " not declared");
                blocks[idx].sets = *sets;
            } else if (!after.empty()) {
                throw SyntaxError(lineno, "unexpected text after state index");
            }
            blocks[idx].seen = true;
            current = &blocks[idx];
            continue;
        }
        if (line[0] != '[')
            throw UnsupportedFeature("implicit-labels",
                                     "line " + std::to_string(lineno) + ": edges must carry an explicit [guard]");
        if (current == nullptr)
            throw SyntaxError(lineno, "edge before any State: line");
        auto close = line.find(']');
        if (close == std::string::npos)
            throw SyntaxError(lineno, "unterminated guard");
        BoolExpr guard = GuardParser(std::string_view(line).substr(1, close - 1), lineno,
                                     static_cast<unsigned>(aps.size()))
                             .parse();
        std::string target_text = trim(std::string_view(line).substr(close + 1));
        if (target_text.find('{') != std::string::npos)
            throw UnsupportedFeature("transition-acceptance", "line " + std::to_string(lineno) +
                                                                  ": transition-based acceptance is not supported");
        if (target_text.find('&') != std::string::npos || target_text.find(' ') != std::string::npos)
            throw UnsupportedFeature("universal-branching",
                                     "line " + std::to_string(lineno) + ": edges must have a single target");
        unsigned target = parse_unsigned(target_text, lineno, "edge target");
        current->edges.push_back(Edge{std::move(guard), target});
    }
    if (!ended)
        throw SyntaxError(lines.size(), "missing --END--");
    for (; i < lines.size(); ++i)
        if (!trim(lines[i]).empty())
            throw SyntaxError(i + 1, "text after --END--");
    for (unsigned s = 0; s < blocks.size(); ++s)
        if (!blocks[s].seen)
            throw SyntaxError(0, "state " + std::to_string(s) + " has no State: block");

    auto members = [&](unsigned set) {
        StateSet out;
        for (unsigned s = 0; s < blocks.size(); ++s)
            if (std::find(blocks[s].sets.begin(), blocks[s].sets.end(), set) != blocks[s].sets.end())
                out.push_back(s);
        return out;
    };

    Acceptance acceptance;
    switch (*kind) {
    case AccKind::Buchi: acceptance = acc::Buchi{members(0)}; break;
    case AccKind::CoBuchi: acceptance = acc::CoBuchi{members(0)}; break;
    case AccKind::Rabin1: {
        StateSet fin = members(0);
        StateSet f;
        for (unsigned s = 0; s < blocks.size(); ++s)
            if (!contains(fin, s))
                f.push_back(s);
        acceptance = acc::OnePairRabin{std::move(f), members(1)};
        break;
    }
    case AccKind::Parity: {
        acc::Parity parity;
        parity.num_colours = parity_colours;
        for (unsigned s = 0; s < blocks.size(); ++s) {
            if (blocks[s].sets.size() != 1)
                throw SyntaxError(0, "parity state " + std::to_string(s) + " must belong to exactly one set");
            parity.colour.push_back(blocks[s].sets[0]);
        }
        acceptance = std::move(parity);
        break;
    }
    case AccKind::Safety: acceptance = acc::Safety{safety_with_sinks ? members(0) : StateSet{}}; break;
    }

    std::vector<std::vector<Edge>> edges;
    edges.reserve(blocks.size());
    for (auto& b : blocks)
        edges.push_back(std::move(b.edges));
    if (edges.empty())
        throw SyntaxError(0, "automaton must have at least one state");
    Automaton aut(static_cast<unsigned>(aps.size()), *start, std::move(edges), std::move(acceptance));
    ensure_valid(aut);
    return HoaAutomaton{std::move(aut), std::move(aps), std::move(name)};
}

std::string emit_hoa(const Automaton& aut, const ApTable& aps, std::string_view name)
{
    if (aps.size() != aut.num_aps())
        throw Error("emit_hoa: AP table size differs from automaton");
    const unsigned n = aut.num_states();
    std::vector<std::vector<unsigned>> sets(n);
    std::string acc_name;
    std::string acceptance;

    if (const auto* a = std::get_if<acc::Buchi>(&aut.acceptance())) {
        acc_name = "Buchi";
        acceptance = "1 Inf(0)";
        for (unsigned s : a->accepting)
            sets.at(s).push_back(0);
    } else if (const auto* a = std::get_if<acc::CoBuchi>(&aut.acceptance())) {
        acc_name = "co-Buchi";
        acceptance = "1 Fin(0)";
        for (unsigned s : a->rejecting)
            sets.at(s).push_back(0);
    } else if (const auto* a = std::get_if<acc::OnePairRabin>(&aut.acceptance())) {
        acc_name = "Rabin 1";
        acceptance = "2 Fin(0) & Inf(1)";
        for (unsigned s = 0; s < n; ++s) {
            if (!contains(a->f, s))
                sets[s].push_back(0);
            if (contains(a->g, s))
                sets[s].push_back(1);
        }
    } else if (const auto* a = std::get_if<acc::Parity>(&aut.acceptance())) {
        unsigned count = a->num_colours;
        for (unsigned c : a->colour)
            count = std::max(count, c + 1);
        count = std::max(count, 1u);
        acc_name = "parity max even " + std::to_string(count);
        acceptance = std::to_string(count) + " " + parity_max_even_condition(count);
        for (unsigned s = 0; s < n; ++s)
            sets[s].push_back(a->colour.at(s));
    } else if (const auto* a = std::get_if<acc::Safety>(&aut.acceptance())) {
        acc_name = "safety";
        if (a->unsafe.empty()) {
            acceptance = "0 t";
        } else {
            acceptance = "1 Fin(0)";
            for (unsigned s : a->unsafe)
                sets.at(s).push_back(0);
        }
    } else {
        throw UnsupportedFeature(acceptance_name(aut.acceptance()),
                                 "emit_hoa: " + acceptance_name(aut.acceptance()) + " acceptance has no HOA form here");
    }

    std::ostringstream os;
    os << "HOA: v1\n";
    if (!name.empty())
        os << "name: \"" << name << "\"\n";
    os << "States: " << n << "\n";
    os << "Start: " << aut.initial() << "\n";
    os << "AP: " << aps.size();
    for (const auto& ap : aps.names())
        os << " \"" << ap << "\"";
    os << "\n";
    os << "acc-name: " << acc_name << "\n";
    os << "Acceptance: " << acceptance << "\n";
    os << "properties: trans-labels explicit-labels state-acc deterministic complete\n";
    os << "--BODY--\n";
    for (unsigned s = 0; s < n; ++s) {
        os << "State: " << s;
        if (!sets[s].empty()) {
            os << " {";
            for (std::size_t k = 0; k < sets[s].size(); ++k)
                os << (k ? " " : "") << sets[s][k];
            os << "}";
        }
        os << "\n";
        for (const auto& e : aut.edges(s))
            os << "[" << to_hoa_guard(e.guard) << "] " << e.target << "\n";
    }
    os << "--END--\n";
    return os.str();
}

}  // namespace grabin
