#include "grabin/automaton.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace grabin {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

bool intersects(const StateSet& a, const StateSet& b)
{
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i == *j)
            return true;
        if (*i < *j)
            ++i;
        else
            ++j;
    }
    return false;
}

bool subset_of(const StateSet& a, const StateSet& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

}  // namespace

// ApTable

ApTable::ApTable(std::vector<std::string> names) : names_(std::move(names))
{
    if (names_.size() > kMaxAps)
        throw Error("too many atomic propositions (" + std::to_string(names_.size()) + " > " +
                    std::to_string(kMaxAps) + ")");
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (!is_identifier(names_[i]))
            throw Error("invalid atomic proposition name '" + names_[i] + "'");
        for (std::size_t j = 0; j < i; ++j)
            if (names_[j] == names_[i])
                throw Error("duplicate atomic proposition '" + names_[i] + "'");
    }
}

bool ApTable::is_identifier(const std::string& name)
{
    if (name.empty())
        return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    if (!alpha(name[0]))
        return false;
    return std::all_of(name.begin() + 1, name.end(), [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); });
}

std::optional<unsigned> ApTable::find(const std::string& name) const
{
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end())
        return std::nullopt;
    return static_cast<unsigned>(it - names_.begin());
}

unsigned ApTable::index_of(const std::string& name) const
{
    auto idx = find(name);
    if (!idx)
        throw Error("unknown atomic proposition '" + name + "'");
    return *idx;
}

std::vector<std::string> ApTable::letter_names(Letter letter) const
{
    std::vector<std::string> out;
    for (unsigned i = 0; i < names_.size(); ++i)
        if ((letter >> i) & 1u)
            out.push_back(names_[i]);
    return out;
}

Letter ApTable::letter_from_names(const std::vector<std::string>& names) const
{
    Letter letter = 0;
    for (const auto& n : names)
        letter |= Letter{1} << index_of(n);
    return letter;
}

std::string ApTable::format_letter(Letter letter) const
{
    std::string out = "{";
    bool first = true;
    for (const auto& n : letter_names(letter)) {
        if (!first)
            out += ',';
        out += n;
        first = false;
    }
    return out + "}";
}

// Acceptance

std::string acceptance_name(const Acceptance& acceptance)
{
    return std::visit(Overloaded{
                          [](const acc::Safety&) -> std::string { return "safety"; },
                          [](const acc::Buchi&) -> std::string { return "Buchi"; },
                          [](const acc::CoBuchi&) -> std::string { return "co-Buchi"; },
                          [](const acc::OnePairRabin&) -> std::string { return "Rabin 1"; },
                          [](const acc::Parity&) -> std::string { return "parity max even"; },
                          [](const acc::GeneralizedBuchi&) -> std::string { return "generalized-Buchi"; },
                          [](const acc::Streett&) -> std::string { return "Streett"; },
                          [](const acc::Muller&) -> std::string { return "Muller"; },
                      },
                      acceptance);
}

bool accepts(const Acceptance& acceptance, const StateSet& inf)
{
    return std::visit(Overloaded{
                          [&](const acc::Safety& a) { return !intersects(inf, a.unsafe); },
                          [&](const acc::Buchi& a) { return intersects(inf, a.accepting); },
                          [&](const acc::CoBuchi& a) { return !intersects(inf, a.rejecting); },
                          [&](const acc::OnePairRabin& a) { return subset_of(inf, a.f) && intersects(inf, a.g); },
                          [&](const acc::Parity& a) {
                              unsigned best = 0;
                              for (unsigned s : inf)
                                  best = std::max(best, a.colour.at(s));
                              return best % 2 == 0;
                          },
                          [&](const acc::GeneralizedBuchi& a) {
                              return std::all_of(a.sets.begin(), a.sets.end(),
                                                 [&](const StateSet& f) { return intersects(inf, f); });
                          },
                          [&](const acc::Streett& a) {
                              return std::all_of(a.pairs.begin(), a.pairs.end(), [&](const auto& pair) {
                                  return !subset_of(inf, pair.first) || !intersects(inf, pair.second);
                              });
                          },
                          [&](const acc::Muller& a) {
                              return std::find(a.table.begin(), a.table.end(), inf) != a.table.end();
                          },
                      },
                      acceptance);
}

// Automaton

Automaton::Automaton(unsigned num_aps, unsigned initial, std::vector<std::vector<Edge>> edges, Acceptance acceptance)
    : num_aps_(num_aps), initial_(initial), edges_(std::move(edges)), acceptance_(std::move(acceptance))
{
    if (num_aps_ > kMaxAps)
        throw Error("automaton over too many atomic propositions");
    if (edges_.empty())
        throw Error("automaton must have at least one state");
    const std::uint32_t letters = num_letters();
    next_.assign(edges_.size() * letters, kNoState);
    for (std::size_t s = 0; s < edges_.size(); ++s) {
        for (Letter x = 0; x < letters; ++x) {
            for (const auto& e : edges_[s]) {
                if (e.guard.eval(x)) {
                    next_[s * letters + x] = e.target;
                    break;
                }
            }
        }
    }
}

Automaton Automaton::from_table(unsigned num_aps, unsigned initial, const std::vector<std::uint32_t>& next,
                                Acceptance acceptance)
{
    const std::uint32_t letters = std::uint32_t{1} << num_aps;
    if (next.empty() || next.size() % letters != 0)
        throw Error("transition table size is not a multiple of the letter count");
    const std::size_t states = next.size() / letters;
    std::vector<std::vector<Edge>> edges(states);
    for (std::size_t s = 0; s < states; ++s) {
        std::map<std::uint32_t, std::vector<Letter>> by_target;
        for (Letter x = 0; x < letters; ++x)
            by_target[next[s * letters + x]].push_back(x);
        for (auto& [target, xs] : by_target) {
            BoolExpr guard = xs.size() == letters ? BoolExpr::constant(true) : BoolExpr::from_letters(xs, num_aps);
            edges[s].push_back(Edge{std::move(guard), target});
        }
    }
    return Automaton(num_aps, initial, std::move(edges), std::move(acceptance));
}

Automaton Automaton::with_acceptance(Acceptance acceptance) const
{
    Automaton copy = *this;
    copy.acceptance_ = std::move(acceptance);
    return copy;
}

Automaton Automaton::remap_aps(const std::vector<unsigned>& mapping, unsigned new_num_aps) const
{
    if (mapping.size() < num_aps_)
        throw Error("proposition mapping too short");
    for (unsigned target : mapping)
        if (target >= new_num_aps)
            throw Error("proposition mapping out of range");
    std::vector<std::vector<Edge>> edges = edges_;
    for (auto& out : edges)
        for (auto& e : out)
            e.guard = e.guard.remap(mapping);
    return Automaton(new_num_aps, initial_, std::move(edges), acceptance_);
}

// Validation

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : Error([&] {
          std::ostringstream os;
          os << "invalid automaton";
          for (std::size_t i = 0; i < issues.size() && i < 5; ++i)
              os << (i == 0 ? ": " : "; ") << issues[i].message;
          if (issues.size() > 5)
              os << "; ... (" << issues.size() << " issues)";
          return os.str();
      }()),
      issues_(std::move(issues))
{
}

std::vector<ValidationIssue> validate(const Automaton& aut)
{
    using Kind = ValidationIssue::Kind;
    std::vector<ValidationIssue> issues;
    const unsigned n = aut.num_states();
    auto range_issue = [&](const std::string& what) {
        issues.push_back({Kind::RangeError, 0, 0, what});
    };
    auto check_set = [&](const StateSet& set, const char* what) {
        for (unsigned s : set)
            if (s >= n)
                range_issue(std::string(what) + " mentions state " + std::to_string(s) + " out of range");
        if (!std::is_sorted(set.begin(), set.end()) || std::adjacent_find(set.begin(), set.end()) != set.end())
            range_issue(std::string(what) + " is not a sorted set");
    };

    if (aut.initial() >= n)
        range_issue("initial state " + std::to_string(aut.initial()) + " out of range");
    if (aut.num_aps() < kMaxAps) {
        for (unsigned s = 0; s < n; ++s)
            for (const auto& e : aut.edges(s))
                if (e.guard.support_size() > aut.num_aps())
                    range_issue("guard on state " + std::to_string(s) + " refers to an unknown proposition");
    }
    for (unsigned s = 0; s < n; ++s) {
        for (const auto& e : aut.edges(s))
            if (e.target >= n)
                range_issue("edge from state " + std::to_string(s) + " targets state " + std::to_string(e.target) +
                            " out of range");
        for (Letter x = 0; x < aut.num_letters(); ++x) {
            unsigned matches = 0;
            for (const auto& e : aut.edges(s))
                if (e.guard.eval(x))
                    ++matches;
            if (matches == 0)
                issues.push_back({Kind::MissingEdge, s, x,
                                  "state " + std::to_string(s) + " has no edge for letter " + std::to_string(x)});
            else if (matches > 1)
                issues.push_back({Kind::NondeterministicEdge, s, x,
                                  "state " + std::to_string(s) + " has " + std::to_string(matches) +
                                      " edges for letter " + std::to_string(x)});
        }
    }

    std::visit(Overloaded{
                   [&](const acc::Safety& a) {
                       check_set(a.unsafe, "unsafe set");
                       for (unsigned s : a.unsafe) {
                           if (s >= n)
                               continue;
                           for (Letter x = 0; x < aut.num_letters(); ++x) {
                               auto t = aut.step(s, x);
                               if (t != kNoState && !contains(a.unsafe, t)) {
                                   range_issue("unsafe state " + std::to_string(s) + " is not absorbing");
                                   break;
                               }
                           }
                       }
                   },
                   [&](const acc::Buchi& a) { check_set(a.accepting, "accepting set"); },
                   [&](const acc::CoBuchi& a) { check_set(a.rejecting, "rejecting set"); },
                   [&](const acc::OnePairRabin& a) {
                       check_set(a.f, "Rabin F set");
                       check_set(a.g, "Rabin G set");
                   },
                   [&](const acc::Parity& a) {
                       if (a.colour.size() != n)
                           range_issue("colour map size differs from state count");
                   },
                   [&](const acc::GeneralizedBuchi& a) {
                       for (const auto& f : a.sets)
                           check_set(f, "generalized Buchi set");
                   },
                   [&](const acc::Streett& a) {
                       for (const auto& [f, g] : a.pairs) {
                           check_set(f, "Streett F set");
                           check_set(g, "Streett G set");
                       }
                   },
                   [&](const acc::Muller& a) {
                       for (const auto& f : a.table)
                           check_set(f, "Muller set");
                   },
               },
               aut.acceptance());
    return issues;
}

void ensure_valid(const Automaton& aut)
{
    auto issues = validate(aut);
    if (!issues.empty())
        throw ValidationError(std::move(issues));
}

// Lassos

StateSet infinity_set(const Automaton& aut, const Lasso& lasso)
{
    const std::uint32_t letters = aut.num_letters();
    for (const auto* part : {&lasso.stem, &lasso.loop})
        for (Letter x : *part)
            if (x >= letters)
                throw Error("lasso letter outside the automaton alphabet");
    return infinity_set(aut.initial(), [&](unsigned s, Letter x) { return aut.step(s, x); }, lasso);
}

bool eval_lasso(const Automaton& aut, const Lasso& lasso) { return accepts(aut.acceptance(), infinity_set(aut, lasso)); }

RabinParts decompose_rabin(const Automaton& aut)
{
    const auto* rabin = std::get_if<acc::OnePairRabin>(&aut.acceptance());
    if (rabin == nullptr)
        throw WrongAcceptanceKind("decompose_rabin: expected Rabin 1 acceptance, got " + acceptance_name(aut.acceptance()));
    StateSet rejecting;
    for (unsigned s = 0; s < aut.num_states(); ++s)
        if (!contains(rabin->f, s))
            rejecting.push_back(s);
    return RabinParts{aut.with_acceptance(acc::CoBuchi{std::move(rejecting)}),
                      aut.with_acceptance(acc::Buchi{rabin->g})};
}

StateSet make_state_set(std::vector<unsigned> states)
{
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    return states;
}

bool contains(const StateSet& set, unsigned state) { return std::binary_search(set.begin(), set.end(), state); }

}  // namespace grabin
