#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "grabin/boolexpr.hpp"
#include "grabin/errors.hpp"

namespace grabin {

/// Explicit letter enumeration is used throughout, so the alphabet is bounded.
inline constexpr unsigned kMaxAps = 16;
inline constexpr std::uint32_t kNoState = std::numeric_limits<std::uint32_t>::max();

/// Ordered, duplicate-free list of proposition names. Bit i of a letter is names()[i].
class ApTable {
public:
    ApTable() = default;
    explicit ApTable(std::vector<std::string> names);

    static bool is_identifier(const std::string& name);

    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(unsigned i) const { return names_.at(i); }
    std::optional<unsigned> find(const std::string& name) const;
    unsigned index_of(const std::string& name) const;  // throws Error if absent
    std::uint32_t num_letters() const { return std::uint32_t{1} << names_.size(); }

    /// Names of the propositions set in `letter`, in table order.
    std::vector<std::string> letter_names(Letter letter) const;
    Letter letter_from_names(const std::vector<std::string>& names) const;
    std::string format_letter(Letter letter) const;  // "{p,q}"

    friend bool operator==(const ApTable&, const ApTable&) = default;

private:
    std::vector<std::string> names_;
};

using StateSet = std::vector<unsigned>;  // sorted, unique

namespace acc {
struct Safety {
    /// Absorbing failure states; entering one violates the property. May be empty.
    StateSet unsafe;
};
struct Buchi {
    StateSet accepting;
};
struct CoBuchi {
    StateSet rejecting;
};
/// Single Rabin pair (F, G): inf must lie inside F and meet G.
struct OnePairRabin {
    StateSet f;
    StateSet g;
};
struct Parity {
    std::vector<unsigned> colour;  // max-even
    unsigned num_colours = 0;      // declared colour count for HOA output; 0 derives it
};
struct GeneralizedBuchi {
    std::vector<StateSet> sets;
};
struct Streett {
    std::vector<std::pair<StateSet, StateSet>> pairs;
};
struct Muller {
    std::vector<StateSet> table;
};
}  // namespace acc

using Acceptance = std::variant<acc::Safety, acc::Buchi, acc::CoBuchi, acc::OnePairRabin, acc::Parity,
                                acc::GeneralizedBuchi, acc::Streett, acc::Muller>;

std::string acceptance_name(const Acceptance& acceptance);

/// Decides an acceptance condition for a given set of infinitely visited states.
bool accepts(const Acceptance& acceptance, const StateSet& inf);

struct Edge {
    BoolExpr guard;
    unsigned target = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Deterministic, total omega-automaton over 2^AP with state-based acceptance.
///
/// The successor of every (state, letter) pair is tabulated on construction, taking
/// the first satisfied guard. `validate` reports whether the guards actually form a
/// deterministic and total transition relation.
class Automaton {
public:
    Automaton(unsigned num_aps, unsigned initial, std::vector<std::vector<Edge>> edges, Acceptance acceptance);

    /// One edge per distinct target, guarded by the disjunction of the letters leading there.
    static Automaton from_table(unsigned num_aps, unsigned initial, const std::vector<std::uint32_t>& next,
                                Acceptance acceptance);

    unsigned num_aps() const { return num_aps_; }
    unsigned num_states() const { return static_cast<unsigned>(edges_.size()); }
    std::uint32_t num_letters() const { return std::uint32_t{1} << num_aps_; }
    unsigned initial() const { return initial_; }
    const std::vector<Edge>& edges(unsigned state) const { return edges_.at(state); }
    const Acceptance& acceptance() const { return acceptance_; }

    std::uint32_t step(unsigned state, Letter letter) const { return next_[state * num_letters() + letter]; }
    const std::vector<std::uint32_t>& table() const { return next_; }

    Automaton with_acceptance(Acceptance acceptance) const;

    /// Moves the automaton onto a larger proposition table; `mapping[i]` is the new index of old AP i.
    Automaton remap_aps(const std::vector<unsigned>& mapping, unsigned new_num_aps) const;

private:
    unsigned num_aps_;
    unsigned initial_;
    std::vector<std::vector<Edge>> edges_;
    Acceptance acceptance_;
    std::vector<std::uint32_t> next_;
};

struct ValidationIssue {
    enum class Kind { NondeterministicEdge, MissingEdge, RangeError };
    Kind kind;
    unsigned state = 0;
    Letter letter = 0;
    std::string message;
};

class ValidationError : public Error {
public:
    explicit ValidationError(std::vector<ValidationIssue> issues);
    const std::vector<ValidationIssue>& issues() const { return issues_; }

private:
    std::vector<ValidationIssue> issues_;
};

/// Empty result means the automaton is deterministic, total and in range.
std::vector<ValidationIssue> validate(const Automaton& aut);
void ensure_valid(const Automaton& aut);

/// Ultimately periodic word stem . loop^omega.
struct Lasso {
    std::vector<Letter> stem;
    std::vector<Letter> loop;

    friend bool operator==(const Lasso&, const Lasso&) = default;
};

/// States visited infinitely often by the run of a deterministic transition function on
/// `lasso`. The run is followed until the state at a loop boundary repeats; the states
/// entered during the repeating iterations form the result.
template <typename StepFn>
StateSet infinity_set(unsigned initial, StepFn&& step, const Lasso& lasso)
{
    if (lasso.loop.empty())
        throw Error("lasso loop must be non-empty");
    unsigned state = initial;
    for (Letter letter : lasso.stem)
        state = step(state, letter);
    // The boundary state repeats within |Q| iterations; runs are short in practice.
    std::vector<unsigned> boundary;
    auto repeat = boundary.end();
    for (;;) {
        repeat = std::find(boundary.begin(), boundary.end(), state);
        if (repeat != boundary.end())
            break;
        boundary.push_back(state);
        for (Letter letter : lasso.loop)
            state = step(state, letter);
    }
    auto iterations = static_cast<std::size_t>(boundary.end() - repeat);
    StateSet result;
    result.reserve(iterations * lasso.loop.size());
    for (std::size_t iter = 0; iter < iterations; ++iter) {
        for (Letter letter : lasso.loop) {
            state = step(state, letter);
            result.push_back(state);
        }
    }
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
}

StateSet infinity_set(const Automaton& aut, const Lasso& lasso);
bool eval_lasso(const Automaton& aut, const Lasso& lasso);

/// Splits a one-pair Rabin automaton into its co-Buchi part (rejecting Q \ F) and
/// Buchi part (accepting G) over the same transition structure.
struct RabinParts {
    Automaton co_buchi;
    Automaton buchi;
};
RabinParts decompose_rabin(const Automaton& aut);

/// Sorts and deduplicates.
StateSet make_state_set(std::vector<unsigned> states);
bool contains(const StateSet& set, unsigned state);

}  // namespace grabin
